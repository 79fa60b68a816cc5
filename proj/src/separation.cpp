#include "sepcoords/separation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sepcoords {

namespace {

const cd I(0.0, 1.0);
constexpr double kPi = std::numbers::pi;

using Sampler = std::function<cd(SplitMix64&)>;

nlohmann::json cjson(cd z) {
    if (z.imag() == 0) return z.real();
    return nlohmann::json::array({z.real(), z.imag()});
}

cd sq(cd z) { return z * z; }

Sampler annulus(double lo, double hi) {
    return [lo, hi](SplitMix64& rng) { return rng.annulus(lo, hi); };
}

Sampler around(cd center, double lo, double hi) {
    return [center, lo, hi](SplitMix64& rng) { return center + rng.annulus(lo, hi); };
}

// Rejects samples where `bad` holds.
Sampler avoiding(Sampler base, std::function<bool(cd)> bad) {
    return [base = std::move(base), bad = std::move(bad)](SplitMix64& rng) {
        for (int i = 0; i < 10000; ++i) {
            cd x = base(rng);
            if (!bad(x)) return x;
        }
        throw SeparationError("no admissible sample for a factor variable");
    };
}

bool near_cut(cd z, double margin = 0.1) { return z == cd(0.0) || std::abs(std::arg(z)) > kPi - margin; }

double int_distance(cd z) { return std::abs(z - std::round(z.real())); }

cd need(const Constants& c, const std::string& name, const std::string& chart) {
    auto it = c.find(name);
    if (it == c.end()) throw SeparationError(chart + ": missing separation constant " + name);
    return it->second;
}

std::array<cd, 3> co(cd c2, cd c1, cd c0) { return {c2, c1, c0}; }

class Builder {
public:
    Builder(const std::string& chart_id, const Constants& c) : ch_(chart_ref(chart_id)), c_(c) {
        s_.chart_id = chart_id;
        s_.factors.resize(ch_.dim());
        seen_.assign(ch_.dim(), false);
    }

    cd operator[](const std::string& name) {
        cd v = need(c_, name, ch_.id);
        s_.constants[name] = v;
        return v;
    }
    void set(const std::string& name, cd v) { s_.constants[name] = v; }
    const Chart& chart() const { return ch_; }
    std::function<cd(std::span<const cd>)> r_squared() const {
        const std::size_t r = *ch_.param_index("r");
        return [r](std::span<const cd> u) { return sq(u[r]); };
    }
    SeparatedSolution& sol() { return s_; }

    void factor(const std::string& var, std::string form, Factor1D f, FactorOde ode, Sampler sample,
                bool ignorable = false) {
        auto i = ch_.param_index(var);
        if (!i) throw std::logic_error(ch_.id + ": recipe refers to unknown parameter " + var);
        Factor& fac = s_.factors[*i];
        fac.variable = var;
        fac.param = *i;
        fac.form = std::move(form);
        fac.ignorable = ignorable;
        fac.f = std::move(f);
        fac.ode = std::move(ode);
        fac.sample = std::move(sample);
        seen_[*i] = true;
    }

    // e^{s x}, the ignorable factors.
    void exponential(const std::string& var, cd s, std::string form) {
        factor(
            var, std::move(form), [s](const Jet2& x) { return exp(x * s); },
            {var + "' - s " + var + " = 0", [s](cd) { return co(0.0, 1.0, -s); }}, annulus(0.3, 2.0), true);
    }

    // r^-1 J_nu(sqrt(-E) r) with nu from the index oracle.
    void bessel_radial(cd energy, cd lambda) {
        RadialIndex idx = radial_index_oracle(lambda);
        const cd nu = idx.oracle.front().nu, s = std::sqrt(-energy);
        s_.lambda = lambda;
        set("nu", nu);
        factor(
            "r", "R(r) = J_nu(sqrt(-E) r)/r",
            [nu, s](const Jet2& r) { return bessel_j(nu, r * s) / r; },
            {"R'' + 3/r R' + (lambda/r^2 - E) R = 0",
             [lambda, energy](cd r) { return co(1.0, 3.0 / r, lambda / (r * r) - energy); }},
            annulus(0.5, 2.0));
    }

    SeparatedSolution done() {
        for (std::size_t i = 0; i < seen_.size(); ++i)
            if (!seen_[i]) throw std::logic_error(ch_.id + ": recipe leaves parameter " + ch_.params[i].name + " open");
        SplitMix64 rng(0x5eedULL);
        for (const auto& f : s_.factors) {
            cd v;
            try {
                v = value_of(f.f(Jet2(f.sample(rng))));
            } catch (const SpecfunUnsupported& e) {
                throw SeparationError(ch_.id + ": factor " + f.variable + ": " + e.what());
            }
            if (v == cd(0.0)) throw SeparationError(ch_.id + ": factor " + f.variable + " vanishes identically");
            if (!std::isfinite(std::abs(v)))
                throw SeparationError(ch_.id + ": factor " + f.variable + " is not finite in its regime");
        }
        return std::move(s_);
    }

private:
    const Chart& ch_;
    const Constants& c_;
    SeparatedSolution s_;
    std::vector<bool> seen_;
};

cd energy_of(Builder& b) {
    cd e = b["E"];
    if (e == cd(0.0)) throw SeparationError(b.chart().id + ": E must be nonzero");
    b.sol().energy = e;
    return e;
}

// --------------------------------------------------------------- sphere charts

SeparatedSolution sphere_m41(const Constants& k) {
    Builder b("C_M41", k);
    const cd al = b["alpha"], be = b["beta"], e = energy_of(b), nc = b["n"];
    if (nc.imag() != 0 || nc.real() < 0 || nc.real() != std::round(nc.real()))
        throw SeparationError("C_M41: n must be a nonnegative integer");
    const int n = int(nc.real());
    const cd lambda = 1.0 - sq(2.0 * n + al + be + 1.0);
    if (auto it = k.find("lambda"); it != k.end() && std::abs(it->second - lambda) > 1e-12 * (1.0 + std::abs(lambda)))
        throw SeparationError("C_M41: lambda is fixed by n, alpha and beta");
    b.set("lambda", lambda);
    b.sol().recipe_eq = "6.1+6.3+6.5";
    b.sol().ansatz_form = "R(r) C(c) exp(i(alpha a + beta b))";
    b.bessel_radial(e, lambda);
    b.factor(
        "c", "C(c) = cos^alpha c sin^beta c P_n^(alpha,beta)(-cos 2c)",
        [n, al, be](const Jet2& c) { return pow(cos(c), al) * pow(sin(c), be) * jacobi_p(n, al, be, -cos(c * 2.0)); },
        {"C'' + 2 cot 2c C' - (alpha^2/cos^2 c + beta^2/sin^2 c + lambda) C = 0",
         [al, be, lambda](cd c) {
             return co(1.0, 2.0 / std::tan(2.0 * c), -(sq(al / std::cos(c)) + sq(be / std::sin(c)) + lambda));
         }},
        around(kPi / 4, 0.0, 0.35));
    b.exponential("a", I * al, "exp(i alpha a)");
    b.exponential("b", I * be, "exp(i beta b)");
    b.sol().relations.push_back(
        {"lambda", {"c", "a", "b"}, b.r_squared(), lambda});
    return b.done();
}

SeparatedSolution sphere_m42(const Constants& k) {
    Builder b("C_M42", k);
    const cd al = b["alpha"], be = b["beta"], lambda = b["lambda"], e = energy_of(b);
    b.sol().recipe_eq = "6.1+6.3+6.7";
    b.sol().ansatz_form = "R(r) C(c) exp(i(alpha a + beta b))";
    b.bessel_radial(e, lambda);
    const cd kappa = I * al / 2.0, mu = 0.5 * std::sqrt(1.0 - lambda);
    Factor1D cf = [kappa, mu, be](const Jet2& c) { return whittaker_w(kappa, mu, exp(c * 2.0) * (2.0 * I * be)); };
    Sampler cs = avoiding(annulus(0.05, 0.3), [be](cd c) { return near_cut(2.0 * I * be * std::exp(2.0 * c)); });
    b.factor("c", "C(c) = W_{i alpha/2, sqrt(1-lambda)/2}(2i beta e^{2c})", cf,
             {"C'' - 2C' + (4 beta^2 e^{4c} - 4 alpha beta e^{2c} + lambda) C = 0",
              [al, be, lambda](cd c) {
                  return co(1.0, -2.0, 4.0 * be * be * std::exp(4.0 * c) - 4.0 * al * be * std::exp(2.0 * c) + lambda);
              }},
             cs);
    b.sol().printed_forms.push_back(
        {"printed C equation", "c", "C(c) = W_{i alpha/2, sqrt(1-lambda)/2}(2i beta e^{2c})", cf,
         {"C'' - 2C' - (4 e^{4c} beta^2 - 4 e^{2c} alpha beta + lambda) C = 0",
          [al, be, lambda](cd c) {
              return co(1.0, -2.0, -(4.0 * be * be * std::exp(4.0 * c) - 4.0 * al * be * std::exp(2.0 * c) + lambda));
          }},
         cs});
    b.exponential("a", I * al, "exp(i alpha a)");
    b.exponential("b", I * be, "exp(i beta b)");
    b.sol().relations.push_back({"lambda", {"c", "a", "b"}, b.r_squared(), lambda});
    return b.done();
}

// e^{-ic} J_nu(kk e^{-ic}) with nu = sqrt(1-lambda), solving C'' + 2iC' - (kk^2 e^{-2ic} + lambda) C = 0.
void e2_link(Builder& b, cd kk, cd lambda, const std::string& kk_text) {
    const cd nu = std::sqrt(1.0 - lambda);
    b.factor(
        "c", "C(c) = e^{-ic} J_nu(" + kk_text + " e^{-ic}), nu = sqrt(1-lambda)",
        [nu, kk](const Jet2& c) {
            Jet2 w = exp(c * (-I));
            return w * bessel_j(nu, w * kk);
        },
        {"C'' + 2i C' - (" + kk_text + "^2 e^{-2ic} + lambda) C = 0",
         [kk, lambda](cd c) { return co(1.0, 2.0 * I, -(kk * kk * std::exp(-2.0 * I * c) + lambda)); }},
        annulus(0.05, 0.5));
}

// (1/cos c) P_nu^mu(i tan c), the O(4) > O(3) link.
void o3_link(Builder& b, cd kc, cd lambda) {
    const cd nu = 0.5 * (-1.0 + std::sqrt(1.0 - 4.0 * kc)), mu = std::sqrt(1.0 - lambda);
    b.factor(
        "c", "C(c) = P_nu^mu(i tan c)/cos c, nu = (-1 + sqrt(1-4k))/2, mu = sqrt(1-lambda)",
        [nu, mu](const Jet2& c) { return legendre_p(nu, mu, tan(c) * I) / cos(c); },
        {"C'' - 2 tan c C' + (k/cos^2 c - lambda) C = 0",
         [kc, lambda](cd c) { return co(1.0, -2.0 * std::tan(c), kc / sq(std::cos(c)) - lambda); }},
        annulus(0.05, 0.5));
}

SeparatedSolution sphere_4c4(const Constants& k) {
    Builder b("C_4C4", k);
    const cd al = b["alpha"], be = b["beta"], kk = b["k"], lambda = b["lambda"], e = energy_of(b);
    b.sol().recipe_eq = "6.1+6.3+6.8+6.9";
    b.sol().ansatz_form = "R(r) C(c) exp(i(alpha a1 + beta a2))";
    b.bessel_radial(e, lambda);
    e2_link(b, kk, lambda, "k");
    b.exponential("a1", I * al, "exp(i alpha a1)");
    b.exponential("a2", I * be, "exp(i beta a2)");
    const std::size_t c = *b.chart().param_index("c"), r = *b.chart().param_index("r");
    b.sol().relations.push_back({"lambda", {"c", "a1", "a2"}, b.r_squared(), lambda});
    // -r^2 e^{2ic} Box(e^{i(alpha a1 + beta a2)})/(...) = alpha^2 + beta^2
    b.sol().relations.push_back({"k^2 = alpha^2 + beta^2",
                                 {"a1", "a2"},
                                 [c, r](std::span<const cd> u) { return -sq(u[r]) * std::exp(2.0 * I * u[c]); },
                                 kk * kk});
    return b.done();
}

SeparatedSolution sphere_4c(const Constants& k, int which) {
    Builder b("C_4C" + std::to_string(which), k);
    const cd al = b["alpha"], kc = b["k"], lambda = b["lambda"], e = energy_of(b);
    b.sol().ansatz_form = "R(r) C(c) B(b) exp(i alpha a)";
    b.bessel_radial(e, lambda);
    const std::size_t c = *b.chart().param_index("c"), r = *b.chart().param_index("r");
    std::function<cd(std::span<const cd>)> kscale;
    if (which == 1) {
        b.sol().recipe_eq = "6.10+6.3+6.11+6.12+6.13+6.14";
        o3_link(b, kc, lambda);
        const cd nu = -0.5 + al, mu = std::sqrt(0.25 - kc);
        b.factor(
            "b", "B(b) = P_nu^mu(i tan b)/sqrt(cos b), nu = alpha - 1/2, mu = sqrt(1/4 - k)",
            [nu, mu](const Jet2& x) { return legendre_p(nu, mu, tan(x) * I) * pow(cos(x), cd(-0.5)); },
            {"B'' - tan b B' - (alpha^2/cos^2 b + k) B = 0",
             [al, kc](cd x) { return co(1.0, -std::tan(x), -(sq(al / std::cos(x)) + kc)); }},
            annulus(0.05, 0.5));
        kscale = [c, r](std::span<const cd> u) { return sq(u[r] * std::cos(u[c])); };
    } else if (which == 2) {
        b.sol().recipe_eq = "6.10+6.3+6.11+6.12+6.15+6.16";
        o3_link(b, kc, lambda);
        const cd nu = std::sqrt(0.25 - kc);
        b.factor(
            "b", "B(b) = e^{-ib/2} J_nu(alpha e^{-ib}), nu = sqrt(1/4 - k)",
            [nu, al](const Jet2& x) { return exp(x * (-0.5 * I)) * bessel_j(nu, exp(x * (-I)) * al); },
            {"B'' + i B' - (alpha^2 e^{-2ib} + k) B = 0",
             [al, kc](cd x) { return co(1.0, I, -(al * al * std::exp(-2.0 * I * x) + kc)); }},
            annulus(0.05, 0.5));
        kscale = [c, r](std::span<const cd> u) { return sq(u[r] * std::cos(u[c])); };
    } else {
        b.sol().recipe_eq = "6.10+6.3+6.8+6.9+6.17+6.18";
        const cd kk = std::sqrt(-kc);
        e2_link(b, kk, lambda, "sqrt(-k)");
        Factor1D bf = [al, kk](const Jet2& x) { return bessel_j(al, x * kk); };
        b.factor("b", "B(b) = J_alpha(sqrt(-k) b)", bf,
                 {"B'' + B'/b - (alpha^2/b^2 + k) B = 0",
                  [al, kc](cd x) { return co(1.0, 1.0 / x, -(al * al / (x * x) + kc)); }},
                 annulus(0.4, 1.5));
        b.sol().printed_forms.push_back({"printed B equation", "b", "B(b) = J_alpha(sqrt(-k) b)", bf,
                                         {"B'' + (1/b) B - (alpha^2/b^2 + k) B = 0",
                                          [al, kc](cd x) { return co(1.0, 0.0, 1.0 / x - (al * al / (x * x) + kc)); }},
                                         annulus(0.4, 1.5)});
        kscale = [c, r](std::span<const cd> u) { return sq(u[r]) * std::exp(2.0 * I * u[c]); };
    }
    b.exponential("a", I * al, "exp(i alpha a)");
    b.sol().relations.push_back({"lambda", {"c", "b", "a"}, b.r_squared(), lambda});
    b.sol().relations.push_back({"k", {"b", "a"}, kscale, kc});
    return b.done();
}

// --------------------------------------------------------------- MANS and M(3)

void mans_ignorables(Builder& b, cd zeta, cd a1, cd a2) {
    b.exponential("z", zeta, "exp(zeta z)");
    b.exponential("a1", a1, "exp(alpha1 a1)");
    b.exponential("a2", a2, "exp(alpha2 a2)");
}

SeparatedSolution mans(const std::string& id, const Constants& k) {
    Builder b(id, k);
    const cd zeta = b["zeta"], a1 = b["alpha1"], a2 = b["alpha2"], e = energy_of(b);
    auto& s = b.sol();
    s.ansatz_form = "R(r) exp(zeta z) exp(alpha1 a1) exp(alpha2 a2)";
    s.elementary = true;
    s.first_order_radial = true;
    if (id == "C_M46") {
        if (a1 == cd(0.0)) throw SeparationError(id + ": alpha1 must be nonzero");
    } else if (zeta == cd(0.0)) {
        throw SeparationError(id + ": zeta must be nonzero");
    }
    const Sampler rs = annulus(0.5, 2.0);
    if (id == "C_M43") {
        s.recipe_eq = "6.19+6.20";
        const cd A = a1 * a1 + a2 * a2;
        b.factor(
            "r", "R(r) = (1/r) exp(((alpha1^2 + alpha2^2)/r + E r)/(2 zeta))",
            [A, e, zeta](const Jet2& r) { return exp((A / r + r * e) / (2.0 * zeta)) / r; },
            {"2 zeta R' + (2 zeta/r + (alpha1^2 + alpha2^2)/r^2 - E) R = 0",
             [A, e, zeta](cd r) { return co(0.0, 2.0 * zeta, 2.0 * zeta / r + A / (r * r) - e); }},
            rs);
    } else if (id == "C_M44") {
        s.recipe_eq = "6.19+6.21";
        const cd be = b.chart().family.at("beta");
        b.set("beta", be);
        b.factor(
            "r", "R(r) = ((r+1)(r+beta))^{-1/2} exp((alpha1^2/(r+1) + alpha2^2/(r+beta) + E r)/(2 zeta))",
            [be, a1, a2, e, zeta](const Jet2& r) {
                Jet2 p = r + 1.0, q = r + be;
                return pow(p * q, cd(-0.5)) * exp((a1 * a1 / p + a2 * a2 / q + r * e) / (2.0 * zeta));
            },
            {"2 zeta R' + (zeta (2r+beta+1)/((r+1)(r+beta)) + alpha1^2/(r+1)^2 + alpha2^2/(r+beta)^2 - E) R = 0",
             [be, a1, a2, e, zeta](cd r) {
                 cd p = r + 1.0, q = r + be;
                 return co(0.0, 2.0 * zeta, zeta * (2.0 * r + be + 1.0) / (p * q) + sq(a1 / p) + sq(a2 / q) - e);
             }},
            avoiding(rs, [be](cd r) { return std::abs(r + 1.0) < 0.3 || std::abs(r + be) < 0.3; }));
    } else if (id == "C_M45") {
        s.recipe_eq = "6.19+6.22";
        const cd ka = b.chart().family.at("kappa");
        b.set("kappa", ka);
        b.factor(
            "r", "R(r) = (r+kappa)^{-1} exp((-alpha1^2/(r+kappa)^2 + 2 alpha1 alpha2/(r+kappa) + E r)/(2 zeta))",
            [ka, a1, a2, e, zeta](const Jet2& r) {
                Jet2 p = r + ka;
                return exp((-(a1 * a1) / (p * p) + 2.0 * a1 * a2 / p + r * e) / (2.0 * zeta)) / p;
            },
            {"2 zeta R' + (2 zeta/(r+kappa) - 2 alpha1^2/(r+kappa)^3 + 2 alpha1 alpha2/(r+kappa)^2 - E) R = 0",
             [ka, a1, a2, e, zeta](cd r) {
                 cd p = r + ka;
                 return co(0.0, 2.0 * zeta, 2.0 * zeta / p - 2.0 * a1 * a1 / (p * p * p) + 2.0 * a1 * a2 / (p * p) - e);
             }},
            avoiding(rs, [ka](cd r) { return std::abs(r + ka) < 0.3; }));
    } else {
        s.recipe_eq = "6.19+6.23";
        b.factor(
            "r", "R(r) = exp((-alpha2^2 r^2 + (E - 2 alpha2 zeta) r)/(2 alpha1))",
            [a1, a2, e, zeta](const Jet2& r) { return exp((r * r * (-a2 * a2) + r * (e - 2.0 * a2 * zeta)) / (2.0 * a1)); },
            {"2 alpha1 R' + (2 alpha2^2 r + 2 alpha2 zeta - E) R = 0",
             [a1, a2, e, zeta](cd r) { return co(0.0, 2.0 * a1, 2.0 * a2 * a2 * r + 2.0 * a2 * zeta - e); }},
            rs);
    }
    mans_ignorables(b, zeta, a1, a2);
    return b.done();
}

SeparatedSolution m3c(const Constants& k, int kappa) {
    const std::string id = kappa == 0 ? "C_3C_k0" : "C_3C_k1";
    Builder b(id, k);
    const cd al = b["alpha"], zeta = b["zeta"], e = energy_of(b);
    if (zeta == cd(0.0)) throw SeparationError(id + ": zeta must be nonzero");
    auto& s = b.sol();
    s.ansatz_form = "R(r) exp(alpha a + zeta z)";
    const Sampler rs = annulus(0.5, 2.0);
    if (kappa == 0) {
        s.recipe_eq = "6.24+6.25+6.26";
        s.elementary = true;
        s.first_order_radial = true;
        b.factor(
            "r", "R(r) = r^{-1/2} exp((alpha^2/r + E r)/(2 zeta))",
            [al, e, zeta](const Jet2& r) { return pow(r, cd(-0.5)) * exp((al * al / r + r * e) / (2.0 * zeta)); },
            {"2 zeta R' + (alpha^2/r^2 + zeta/r - E) R = 0",
             [al, e, zeta](cd r) { return co(0.0, 2.0 * zeta, al * al / (r * r) + zeta / r - e); }},
            rs);
    } else {
        s.recipe_eq = "6.24+6.27+6.28";
        const cd r0 = al / zeta + e / (2.0 * zeta * zeta);
        // Ai(c (r - r0)) solves the equation when c^3 = -2 zeta^2.
        const cd scale = -std::pow(2.0 * zeta * zeta, 1.0 / 3.0);
        const cd printed = std::pow(2.0 * zeta * zeta, 1.0 / 3.0);
        b.set("airy_scale", scale);
        FactorOde ode{"R'' + (2 r zeta^2 - 2 alpha zeta - E) R = 0",
                      [al, e, zeta](cd r) { return co(1.0, 0.0, 2.0 * r * zeta * zeta - 2.0 * al * zeta - e); }};
        b.factor(
            "r", "R(r) = Ai(x), x = -(r - alpha/zeta - E/(2 zeta^2)) (2 zeta^2)^{1/3}",
            [r0, scale](const Jet2& r) { return airy_ai((r - r0) * scale); }, ode, rs);
        s.printed_forms.push_back({"printed Airy argument", "r", "R(r) = Ai((r - alpha/zeta - E/(2 zeta^2)) (2 zeta^2)^{1/3})",
                                   [r0, printed](const Jet2& r) { return airy_ai((r - r0) * printed); }, ode, rs});
    }
    b.exponential("a", al, "exp(alpha a)");
    b.exponential("z", zeta, "exp(zeta z)");
    return b.done();
}

// --------------------------------------------------------------- sampling

cd sample_const(SplitMix64& rng) { return rng.annulus(0.3, 1.5); }

cd sample_energy(SplitMix64& rng) {
    // off the positive real axis, where sqrt(-E) has its cut
    return std::polar(rng.uniform(0.3, 1.5), rng.uniform(0.1, 2.0 * kPi - 0.1));
}

std::vector<cd> sample_point(const SeparatedSolution& sol, const Chart& ch, SplitMix64& rng) {
    std::vector<cd> u(sol.factors.size());
    for (int attempt = 0; attempt < 10000; ++attempt) {
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = sol.factors[i].sample(rng);
        if (!domain_violation(ch, u) && !singular_violation(ch, u)) return u;
    }
    throw SeparationError(sol.chart_id + ": no admissible sample");
}

std::vector<Jet2> constant_jets(std::span<const cd> u) { return std::vector<Jet2>(u.begin(), u.end()); }

}  // namespace

Jet2 SeparatedSolution::evaluate(std::span<const Jet2> u) const {
    Jet2 p(1.0);
    for (const auto& f : factors) p = p * f.f(u[f.param]);
    return p;
}

ScalarField SeparatedSolution::field() const {
    return [this](std::span<const Jet2> u) { return evaluate(u); };
}

const std::vector<std::string>& recipe_charts() {
    static const std::vector<std::string> ids = {"C_M41", "C_M42", "C_4C1", "C_4C2", "C_4C3",   "C_4C4",
                                                 "C_M43", "C_M44", "C_M45", "C_M46", "C_3C_k0", "C_3C_k1"};
    return ids;
}

SeparatedSolution build_solution(const std::string& chart_id, const Constants& constants) {
    if (chart_id == "C_M41") return sphere_m41(constants);
    if (chart_id == "C_M42") return sphere_m42(constants);
    if (chart_id == "C_4C4") return sphere_4c4(constants);
    if (chart_id == "C_4C1") return sphere_4c(constants, 1);
    if (chart_id == "C_4C2") return sphere_4c(constants, 2);
    if (chart_id == "C_4C3") return sphere_4c(constants, 3);
    if (chart_id == "C_M43" || chart_id == "C_M44" || chart_id == "C_M45" || chart_id == "C_M46")
        return mans(chart_id, constants);
    if (chart_id == "C_3C_k0") return m3c(constants, 0);
    if (chart_id == "C_3C_k1") return m3c(constants, 1);
    throw SeparationError(chart_id + ": no separated-solution recipe");
}

Constants random_constants(const std::string& chart_id, SplitMix64& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Constants c;
        c["E"] = sample_energy(rng);
        bool ok = true;
        if (chart_id == "C_M41") {
            c["alpha"] = sample_const(rng);
            c["beta"] = sample_const(rng);
            c["n"] = double(rng.integer(0, 2));
        } else if (chart_id == "C_M42") {
            c["alpha"] = sample_const(rng);
            c["beta"] = sample_const(rng);
            c["lambda"] = sample_const(rng);
            ok = int_distance(std::sqrt(1.0 - c["lambda"])) >= 0.1;  // 2 mu away from the logarithmic case
        } else if (chart_id == "C_4C4") {
            c["alpha"] = sample_const(rng);
            c["beta"] = sample_const(rng);
            c["lambda"] = sample_const(rng);
            c["k"] = std::sqrt(sq(c["alpha"]) + sq(c["beta"]));
            ok = std::abs(c["k"]) >= 0.3;
        } else if (chart_id == "C_4C1" || chart_id == "C_4C2" || chart_id == "C_4C3") {
            c["alpha"] = sample_const(rng);
            c["k"] = sample_const(rng);
            c["lambda"] = sample_const(rng);
            // Legendre orders stay off the integers where 1/Gamma(1 - mu) vanishes
            ok = int_distance(std::sqrt(1.0 - c["lambda"])) >= 0.1 && int_distance(std::sqrt(0.25 - c["k"])) >= 0.1;
        } else if (chart_id == "C_M43" || chart_id == "C_M44" || chart_id == "C_M45" || chart_id == "C_M46") {
            c["zeta"] = sample_const(rng);
            c["alpha1"] = sample_const(rng);
            c["alpha2"] = sample_const(rng);
        } else if (chart_id == "C_3C_k0" || chart_id == "C_3C_k1") {
            c["alpha"] = sample_const(rng);
            c["zeta"] = sample_const(rng);
            if (chart_id == "C_3C_k1") {
                // the Airy argument stays within |x| <= 6 for |r| <= 2
                const cd z = c["zeta"], r0 = c["alpha"] / z + c["E"] / (2.0 * z * z);
                ok = std::cbrt(2.0 * std::norm(z)) * (2.0 + std::abs(r0)) <= 6.0;
            }
        } else {
            throw SeparationError(chart_id + ": no separated-solution recipe");
        }
        if (!ok) continue;
        try {
            build_solution(chart_id, c);
            return c;
        } catch (const SeparationError&) {
        }
    }
    throw SeparationError(chart_id + ": no admissible constants found");
}

double ode_residual(const Factor1D& f, const FactorOde& ode, const std::function<cd(SplitMix64&)>& sample,
                    std::size_t n_samples, SplitMix64& rng) {
    double worst = 0;
    for (std::size_t s = 0; s < n_samples; ++s) {
        cd x = sample(rng);
        auto d = derivs(f, x);
        auto c = ode.coeffs(x);
        double r = relative_residual({c[0] * d[2], c[1] * d[1], c[2] * d[0]});
        if (!(r <= worst)) worst = std::isnan(r) ? INFINITY : r;
    }
    return worst;
}

double ode_residual(const SeparatedSolution& sol, std::size_t factor_index, std::size_t n_samples, SplitMix64& rng) {
    const Factor& f = sol.factors.at(factor_index);
    return ode_residual(f.f, f.ode, f.sample, n_samples, rng);
}

RadialIndex radial_index_oracle(cd lambda, SplitMix64* rng) {
    RadialIndex out;
    out.lambda = lambda;
    // q(nu) = (r^2 f'' + 3 r f' + lambda f)/f for f = r^(nu-1), the leading power of r^-1 J_nu.
    auto q = [lambda](double nu) {
        auto d = derivs([nu](const Jet2& r) { return pow(r, cd(nu - 1.0)); }, 1.0);
        return (d[2] + 3.0 * d[1] + lambda * d[0]) / d[0];
    };
    const cd q0 = q(0), q1 = q(1), q2 = q(2);
    const cd c2 = (q0 - 2.0 * q1 + q2) / 2.0, c1 = q1 - q0 - c2, c0 = q0;
    out.indicial = {c0, c1, c2};
    const cd disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
    std::vector<cd> roots = {(-c1 + disc) / (2.0 * c2), (-c1 - disc) / (2.0 * c2)};
    std::sort(roots.begin(), roots.end(), [](cd a, cd b) { return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag(); });
    if (std::abs(roots[0] - roots[1]) <= 1e-12) roots.pop_back();

    SplitMix64 local(0x1dea);
    SplitMix64& g = rng ? *rng : local;
    std::vector<cd> energies;
    for (int i = 0; i < 5; ++i) energies.push_back(sample_energy(g));
    auto residual = [&](cd nu) {
        double worst = 0;
        for (cd e : energies) {
            const cd s = std::sqrt(-e);
            FactorOde ode{"", [lambda, e](cd r) { return co(1.0, 3.0 / r, lambda / (r * r) - e); }};
            double r = ode_residual([nu, s](const Jet2& x) { return bessel_j(nu, x * s) / x; }, ode, annulus(0.5, 2.0),
                                    2, g);
            worst = std::max(worst, r);
        }
        return worst;
    };
    for (cd nu : roots) out.oracle.push_back({nu, residual(nu)});
    out.printed = -5.0 - lambda;
    out.printed_residual = residual(out.printed);
    out.printed_agrees = out.printed_residual <= 1e-9;
    return out;
}

ResidualReport pde_residual(const SeparatedSolution& sol, std::size_t n_samples, SplitMix64& rng, double tol) {
    const Chart& ch = chart_ref(sol.chart_id);
    ResidualReport rep;
    rep.chart_id = sol.chart_id;
    rep.recipe_eq = sol.recipe_eq;
    rep.constants = sol.constants;
    rep.tol = tol;
    rep.elementary_expected = sol.elementary;
    bool ok = true;

    for (std::size_t i = 0; i < sol.factors.size(); ++i) {
        const auto& f = sol.factors[i];
        double r = ode_residual(sol, i, n_samples, rng);
        rep.ode_residuals.push_back({f.variable, f.ode.text, r});
        ok = ok && r <= tol;
    }
    for (const auto& p : sol.printed_forms)
        rep.printed_form_checks.push_back({p.variable, p.label + ": " + p.form + " in " + p.ode.text,
                                           ode_residual(p.f, p.ode, p.sample, n_samples, rng)});

    const auto field = sol.field();
    const std::size_t before = specfun_calls();
    for (std::size_t s = 0; s < n_samples; ++s) {
        auto u = sample_point(sol, ch, rng);
        cd box = laplace_beltrami_apply(ch, field, u);
        auto jets = constant_jets(u);
        cd psi = value_of(sol.evaluate(jets));
        double r = std::abs(box - sol.energy * psi) / (std::abs(sol.energy) * std::abs(psi));
        if (!(r <= rep.pde_residual)) rep.pde_residual = std::isnan(r) ? INFINITY : r;
        ++rep.samples;
    }
    rep.specfun_calls = specfun_calls() - before;
    ok = ok && rep.pde_residual <= tol;
    if (sol.elementary) ok = ok && rep.specfun_calls == 0;

    for (const auto& rel : sol.relations) {
        RelationCheck rc;
        rc.name = rel.name;
        rc.expected = rel.expected;
        std::vector<std::size_t> idx;
        for (const auto& v : rel.variables) idx.push_back(*ch.param_index(v));
        ScalarField part = [&sol, idx](std::span<const Jet2> u) {
            Jet2 p(1.0);
            for (auto i : idx) p = p * sol.factors[i].f(u[i]);
            return p;
        };
        for (int s = 0; s < 10; ++s) {
            auto u = sample_point(sol, ch, rng);
            auto jets = constant_jets(u);
            cd measured = rel.scale(u) * laplace_beltrami_apply(ch, part, u) / value_of(part(jets));
            double err = std::abs(measured - rel.expected) / std::max(1.0, std::abs(rel.expected));
            if (!(err <= rc.max_rel_error)) {
                rc.max_rel_error = std::isnan(err) ? INFINITY : err;
                rc.measured = measured;
            }
            if (s == 0 && rc.max_rel_error == 0) rc.measured = measured;
        }
        rc.pass = rc.max_rel_error <= 1e-7;
        ok = ok && rc.pass;
        rep.relations.push_back(rc);
    }

    if (sol.lambda) {
        rep.printed_vs_oracle_index = radial_index_oracle(*sol.lambda, &rng);
        for (const auto& root : rep.printed_vs_oracle_index->oracle) ok = ok && root.ode_residual <= tol;
    }
    if (sol.first_order_radial) {
        bool first = true;
        auto t = laplacian_table(ch);
        const std::size_t r = *ch.param_index("r");
        for (const auto& term : t->terms) first = first && !(term.second_order() && term.i == r && term.j == r);
        rep.radial_first_order = first;
        ok = ok && first;
    }
    rep.pass = ok;
    return rep;
}

nlohmann::json to_json(const RadialIndex& r) {
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& x : r.oracle) roots.push_back({{"nu", cjson(x.nu)}, {"ode_residual", x.ode_residual}});
    return {{"lambda", cjson(r.lambda)},
            {"indicial", {cjson(r.indicial[0]), cjson(r.indicial[1]), cjson(r.indicial[2])}},
            {"oracle", roots},
            {"printed", cjson(r.printed)},
            {"printed_residual", r.printed_residual},
            {"printed_agrees", r.printed_agrees}};
}

nlohmann::json to_json(const ResidualReport& r) {
    nlohmann::json consts = nlohmann::json::object();
    for (const auto& [k, v] : r.constants) consts[k] = cjson(v);
    auto checks = [](const std::vector<OdeCheck>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& c : v) a.push_back({{"variable", c.variable}, {"equation", c.equation}, {"max_residual", c.max_residual}});
        return a;
    };
    nlohmann::json rel = nlohmann::json::array();
    for (const auto& c : r.relations)
        rel.push_back({{"name", c.name},
                       {"expected", cjson(c.expected)},
                       {"measured", cjson(c.measured)},
                       {"max_rel_error", c.max_rel_error},
                       {"pass", c.pass}});
    nlohmann::json j = {{"chart_id", r.chart_id},
                        {"recipe_eq", r.recipe_eq},
                        {"constants", consts},
                        {"ode_residuals", checks(r.ode_residuals)},
                        {"pde_residual", r.pde_residual},
                        {"samples", r.samples},
                        {"printed_form_checks", checks(r.printed_form_checks)},
                        {"relations", rel},
                        {"printed_vs_oracle_index", r.printed_vs_oracle_index ? to_json(*r.printed_vs_oracle_index)
                                                                              : nlohmann::json(nullptr)},
                        {"elementary_expected", r.elementary_expected},
                        {"specfun_calls", r.specfun_calls},
                        {"tol", r.tol},
                        {"pass", r.pass}};
    if (r.radial_first_order) j["radial_first_order"] = *r.radial_first_order;
    return j;
}

}  // namespace sepcoords
