#include "sepcoords/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace sepcoords {

namespace {

thread_local std::size_t g_calls = 0;

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 2.220446049250313e-16;

bool is_nonpositive_integer(cd z) { return z.imag() == 0 && z.real() <= 0 && z.real() == std::round(z.real()); }
bool is_integer(cd z) { return z.imag() == 0 && z.real() == std::round(z.real()); }

cd cpow_(cd u, cd w) {
    if (w == cd(0.0)) return 1.0;
    if (u == cd(0.0)) {
        if (w.real() > 0) return 0.0;
        throw SpecfunUnsupported("power of zero with nonpositive exponent");
    }
    return std::exp(w * std::log(u));
}
Jet2 cpow_(const Jet2& u, cd w) {
    if (w == cd(0.0)) return Jet2(1.0);
    return pow(u, w);
}

template <class T>
T ipow_(const T& u, long n) {
    T r = u * cd(0.0) + cd(1.0);
    T base = n < 0 ? cd(1.0) / u : u;
    for (long k = 0; k < std::labs(n); ++k) r = r * base;
    return r;
}

cd exp_(cd u) { return std::exp(u); }
Jet2 exp_(const Jet2& u) { return exp(u); }

// Running sum with a stopping rule that leaves room for the derivative slots of a jet.
template <class T>
struct Series {
    T sum;
    double max_term = 0;
    double last = 0;
    std::size_t n = 0;
    int quiet = 0;

    explicit Series(const T& zero) : sum(zero) {}

    bool add(const T& term, std::size_t m) {
        sum = sum + term;
        ++n;
        last = std::abs(value_of(term));
        max_term = std::max(max_term, last);
        const double scale = std::max(std::abs(value_of(sum)), 1e-4 * max_term);
        const double weight = double(m + 1) * double(m + 1);
        quiet = (last * weight <= 1e-17 * scale) ? quiet + 1 : 0;
        return quiet >= 2;
    }

    double error() const { return kEps * max_term * std::sqrt(double(n) + 1.0) + last; }
};

template <class T>
void finish(FnEval& info, const T& value, const Series<T>& s, cd prefactor, bool stopped, bool regime) {
    info.value = value_of(value);
    info.terms_used = s.n;
    info.est_error = s.error() * std::abs(prefactor);
    info.converged = stopped && regime && std::isfinite(std::abs(info.value)) &&
                     info.est_error <= 1e-12 * (1.0 + std::abs(info.value));
}

// ---------------------------------------------------------------- gamma

constexpr std::array<double, 9> kLanczos = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                            771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                            -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cd gamma_lanczos(cd z) {
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma_lanczos(1.0 - z));
    z -= 1.0;
    cd x = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + double(i));
    cd t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

// ---------------------------------------------------------------- bessel

template <class T>
T bessel_impl(cd nu, const T& z, FnEval& info) {
    ++g_calls;
    const T half = z * cd(0.5);
    const T w = half * half * cd(-1.0);
    const bool nu_int = is_integer(nu);
    // J_{-n} series starts where 1/Gamma(nu + m + 1) stops vanishing
    const std::size_t m0 = (nu_int && nu.real() < 0) ? std::size_t(-nu.real()) : 0;
    T term = ipow_(w, long(m0)) * (rgamma(double(m0) + 1.0) * rgamma(nu + double(m0) + 1.0));
    Series<T> s(z * cd(0.0));
    bool stopped = false;
    for (std::size_t m = m0; m < m0 + 200; ++m) {
        if (s.add(term, m - m0)) {
            stopped = true;
            break;
        }
        term = term * w * (1.0 / (double(m + 1) * (nu + double(m + 1))));
    }
    T pre = nu_int ? ipow_(half, long(nu.real())) : cpow_(half, nu);
    T value = pre * s.sum;
    finish(info, value, s, value_of(pre), stopped, std::abs(value_of(z)) <= 30.0);
    return value;
}

// ---------------------------------------------------------------- kummer

template <class T>
T kummer_impl(cd a, cd b, const T& z, FnEval& info) {
    ++g_calls;
    if (is_nonpositive_integer(b)) throw SpecfunUnsupported("kummer_m: b is a nonpositive integer");
    T term = z * cd(0.0) + cd(1.0);
    Series<T> s(z * cd(0.0));
    bool stopped = false;
    for (std::size_t m = 0; m < 500; ++m) {
        if (s.add(term, m)) {
            stopped = true;
            break;
        }
        cd ratio = (a + double(m)) / ((b + double(m)) * double(m + 1));
        if (ratio == cd(0.0)) {  // terminating series
            stopped = true;
            s.last = 0;
            break;
        }
        term = term * z * ratio;
    }
    finish(info, s.sum, s, 1.0, stopped, std::abs(value_of(z)) <= 30.0);
    return s.sum;
}

template <class T>
T whittaker_impl(cd kappa, cd mu, const T& z, FnEval& info) {
    ++g_calls;
    const cd two_mu = 2.0 * mu;
    if (std::abs(two_mu.imag()) < 1e-12 && std::abs(two_mu.real() - std::round(two_mu.real())) < 1e-9)
        throw SpecfunUnsupported("whittaker_w: 2mu is an integer, logarithmic case unsupported");
    if (value_of(z) == cd(0.0)) throw SpecfunUnsupported("whittaker_w: z = 0");
    const cd a = mu - kappa + 0.5, b = 1.0 + two_mu;
    const cd ca = complex_gamma(1.0 - b).value * rgamma(a - b + 1.0);
    const cd cb = complex_gamma(b - 1.0).value * rgamma(a);
    FnEval i1, i2;
    T m1 = kummer_impl(a, b, z, i1);
    T m2 = kummer_impl(a - b + 1.0, 2.0 - b, z, i2);
    T e = exp_(z * cd(-0.5));
    T value = e * (cpow_(z, mu + 0.5) * m1 * ca + cpow_(z, 0.5 - mu) * m2 * cb);
    info.value = value_of(value);
    info.flagged = ca == cd(0.0) || cb == cd(0.0);
    info.terms_used = i1.terms_used + i2.terms_used;
    const cd ev = value_of(e);
    info.est_error = std::abs(ev) * (std::abs(cpow_(value_of(z), mu + 0.5) * ca) * i1.est_error +
                                     std::abs(cpow_(value_of(z), 0.5 - mu) * cb) * i2.est_error);
    info.converged = i1.converged && i2.converged && std::isfinite(std::abs(info.value)) &&
                     info.est_error <= 1e-12 * (1.0 + std::abs(info.value));
    return value;
}

// ---------------------------------------------------------------- gauss

template <class T>
T gauss_impl(cd a, cd b, cd c, const T& z, FnEval& info) {
    ++g_calls;
    if (is_nonpositive_integer(c)) throw SpecfunUnsupported("gauss_2f1: c is a nonpositive integer");
    const bool inside = std::abs(value_of(z)) < 1.0;
    T term = z * cd(0.0) + cd(1.0);
    Series<T> s(z * cd(0.0));
    bool stopped = false;
    if (inside) {
        for (std::size_t m = 0; m < 3000; ++m) {
            if (s.add(term, m)) {
                stopped = true;
                break;
            }
            cd ratio = (a + double(m)) * (b + double(m)) / ((c + double(m)) * double(m + 1));
            if (ratio == cd(0.0)) {
                stopped = true;
                s.last = 0;
                break;
            }
            term = term * z * ratio;
        }
    } else {
        s.sum = s.sum + cd(std::nan(""));
    }
    finish(info, s.sum, s, 1.0, stopped, inside);
    return s.sum;
}

template <class T>
T legendre_impl(cd nu, cd mu, const T& z, FnEval& info) {
    ++g_calls;
    if (mu != cd(0.0) && is_nonpositive_integer(1.0 - mu))
        throw SpecfunUnsupported("legendre_p: 1 - mu is a nonpositive integer");
    FnEval f;
    T hyp = gauss_impl(-nu, nu + 1.0, 1.0 - mu, (cd(1.0) - z) * cd(0.5), f);
    T value = hyp;
    cd pre = 1.0;
    if (mu != cd(0.0)) {
        if (value_of(z) == cd(1.0)) throw SpecfunUnsupported("legendre_p: z = 1 with mu != 0");
        T ratio = (z + cd(1.0)) / (z - cd(1.0));
        T p = cpow_(ratio, mu * 0.5) * rgamma(1.0 - mu);
        pre = value_of(p);
        value = p * hyp;
    }
    info = f;
    info.value = value_of(value);
    info.est_error = f.est_error * std::abs(pre);
    info.converged = f.converged && info.est_error <= 1e-12 * (1.0 + std::abs(info.value));
    return value;
}

// ---------------------------------------------------------------- jacobi

template <class P>
P gbinom(const P& x, int k) {
    P r(1);
    for (int j = 0; j < k; ++j) r = r * (x - P(j)) / P(j + 1);
    return r;
}

template <class P, class T>
T jacobi_sum(int n, const P& a, const P& b, const T& z) {
    if (n < 0) throw std::invalid_argument("jacobi_p: negative degree");
    const P one(1), half = P(1) / P(2);
    const T u = (z - one) * half, v = (z + one) * half;
    T r = z * P(0);
    for (int s = 0; s <= n; ++s) {
        T t = z * P(0) + gbinom(P(n) + a, n - s) * gbinom(P(n) + b, s);
        for (int k = 0; k < s; ++k) t = t * u;
        for (int k = 0; k < n - s; ++k) t = t * v;
        r = r + t;
    }
    return r;
}

// ---------------------------------------------------------------- airy

struct AiryConstants {
    cd c1, c2;
};

const AiryConstants& airy_constants() {
    static const AiryConstants k{std::pow(3.0, -2.0 / 3.0) / gamma_lanczos(2.0 / 3.0),
                                 std::pow(3.0, -1.0 / 3.0) / gamma_lanczos(1.0 / 3.0)};
    return k;
}

template <class T>
T airy_impl(const T& z, FnEval& info) {
    ++g_calls;
    const T z3 = z * z * z;
    T tf = z * cd(0.0) + cd(1.0), tg = z;
    Series<T> f(z * cd(0.0)), g(z * cd(0.0));
    bool sf = false, sg = false;
    for (std::size_t k = 0; k < 200 && !(sf && sg); ++k) {
        if (!sf) sf = f.add(tf, 3 * k);
        if (!sg) sg = g.add(tg, 3 * k + 1);
        tf = tf * z3 * (1.0 / ((3.0 * k + 2.0) * (3.0 * k + 3.0)));
        tg = tg * z3 * (1.0 / ((3.0 * k + 3.0) * (3.0 * k + 4.0)));
    }
    const auto& c = airy_constants();
    T value = f.sum * c.c1 - g.sum * c.c2;
    info.value = value_of(value);
    info.terms_used = f.n + g.n;
    info.est_error = std::abs(c.c1) * f.error() + std::abs(c.c2) * g.error();
    info.converged = sf && sg && std::abs(value_of(z)) <= 8.0 &&
                     info.est_error <= 1e-12 * (1.0 + std::abs(info.value));
    return value;
}

}  // namespace

std::size_t specfun_calls() { return g_calls; }
void reset_specfun_calls() { g_calls = 0; }

FnEval complex_gamma(cd z) {
    ++g_calls;
    if (is_nonpositive_integer(z)) throw SpecfunUnsupported("complex_gamma: pole at a nonpositive integer");
    FnEval e;
    e.value = gamma_lanczos(z);
    e.converged = std::isfinite(std::abs(e.value)) && std::abs(z) <= 30.0;
    e.terms_used = kLanczos.size();
    e.est_error = 1e-15 * std::abs(e.value);
    return e;
}

cd rgamma(cd z) {
    if (is_nonpositive_integer(z)) return 0.0;
    return 1.0 / gamma_lanczos(z);
}

FnEval bessel_j(cd nu, cd z) {
    FnEval e;
    bessel_impl(nu, z, e);
    return e;
}
Jet2 bessel_j(cd nu, const Jet2& z, FnEval* info) {
    FnEval e;
    Jet2 r = bessel_impl(nu, z, e);
    if (info) *info = e;
    return r;
}

FnEval kummer_m(cd a, cd b, cd z) {
    FnEval e;
    kummer_impl(a, b, z, e);
    return e;
}
Jet2 kummer_m(cd a, cd b, const Jet2& z, FnEval* info) {
    FnEval e;
    Jet2 r = kummer_impl(a, b, z, e);
    if (info) *info = e;
    return r;
}

FnEval whittaker_w(cd kappa, cd mu, cd z) {
    FnEval e;
    whittaker_impl(kappa, mu, z, e);
    return e;
}
Jet2 whittaker_w(cd kappa, cd mu, const Jet2& z, FnEval* info) {
    FnEval e;
    Jet2 r = whittaker_impl(kappa, mu, z, e);
    if (info) *info = e;
    return r;
}

FnEval gauss_2f1(cd a, cd b, cd c, cd z) {
    FnEval e;
    gauss_impl(a, b, c, z, e);
    return e;
}
Jet2 gauss_2f1(cd a, cd b, cd c, const Jet2& z, FnEval* info) {
    FnEval e;
    Jet2 r = gauss_impl(a, b, c, z, e);
    if (info) *info = e;
    return r;
}

FnEval legendre_p(cd nu, cd mu, cd z) {
    FnEval e;
    legendre_impl(nu, mu, z, e);
    return e;
}
Jet2 legendre_p(cd nu, cd mu, const Jet2& z, FnEval* info) {
    FnEval e;
    Jet2 r = legendre_impl(nu, mu, z, e);
    if (info) *info = e;
    return r;
}

FnEval jacobi_p(int n, cd alpha, cd beta, cd z) {
    ++g_calls;
    FnEval e;
    e.value = jacobi_sum(n, alpha, beta, z);
    e.converged = true;
    e.terms_used = std::size_t(n) + 1;
    e.est_error = 0;
    return e;
}
Jet2 jacobi_p(int n, cd alpha, cd beta, const Jet2& z) {
    ++g_calls;
    return jacobi_sum(n, alpha, beta, z);
}
Qi jacobi_p_exact(int n, const Qi& alpha, const Qi& beta, const Qi& z) {
    ++g_calls;
    return jacobi_sum(n, alpha, beta, z);
}

FnEval airy_ai(cd z) {
    FnEval e;
    airy_impl(z, e);
    return e;
}
Jet2 airy_ai(const Jet2& z, FnEval* info) {
    FnEval e;
    Jet2 r = airy_impl(z, e);
    if (info) *info = e;
    return r;
}

double relative_residual(std::initializer_list<cd> terms) {
    cd s = 0;
    double m = 0;
    for (auto t : terms) {
        s += t;
        m = std::max(m, std::abs(t));
    }
    if (m == 0) return 0;
    return std::abs(s) / m;
}

// ---------------------------------------------------------------- battery

namespace {

// Off the negative real axis by `margin` in argument.
cd sample_off_cut(SplitMix64& rng, double rmin, double rmax, double margin = 0.1) {
    double r = rng.uniform(rmin, rmax);
    double t = rng.uniform(-kPi + margin, kPi - margin);
    return std::polar(r, t);
}

struct Tracker {
    BatteryResult r;
    Tracker(std::string fn, std::string check, double tol) {
        r.function = std::move(fn);
        r.check = std::move(check);
        r.tol = tol;
    }
    void add(double residual) {
        ++r.samples;
        if (!(residual <= r.max_residual)) r.max_residual = std::isnan(residual) ? INFINITY : residual;
    }
    BatteryResult done() {
        r.pass = r.max_residual <= r.tol;
        return r;
    }
};

}  // namespace

std::vector<BatteryResult> specfun_battery(SplitMix64& rng, std::size_t n) {
    std::vector<BatteryResult> out;

    {
        Tracker refl("complex_gamma", "reflection", 1e-11), rec("complex_gamma", "recurrence", 1e-12);
        for (std::size_t s = 0; s < n; ++s) {
            cd z = rng.annulus(0.1, 3.0);
            cd g = complex_gamma(z).value, g1 = complex_gamma(1.0 - z).value;
            refl.add(std::abs(g * g1 * std::sin(kPi * z) / kPi - 1.0));
            rec.add(std::abs(complex_gamma(z + 1.0).value - z * g) / std::abs(z * g));
        }
        out.push_back(refl.done());
        out.push_back(rec.done());
    }
    {
        Tracker ode("bessel_j", "ode", 1e-8), rec("bessel_j", "recurrence", 1e-9);
        for (std::size_t s = 0; s < n; ++s) {
            cd nu = rng.annulus(0.3, 2.0), z = sample_off_cut(rng, 0.3, 5.0);
            auto d = derivs([&](const Jet2& x) { return bessel_j(nu, x); }, z);
            ode.add(relative_residual({z * z * d[2], z * d[1], (z * z - nu * nu) * d[0]}));
            cd jm = bessel_j(nu - 1.0, z).value, jp = bessel_j(nu + 1.0, z).value, j = bessel_j(nu, z).value;
            rec.add(relative_residual({jm, jp, -(2.0 * nu / z) * j}));
        }
        out.push_back(ode.done());
        out.push_back(rec.done());
    }
    {
        Tracker ode("kummer_m", "ode", 1e-8), tr("kummer_m", "kummer transformation", 1e-9);
        for (std::size_t s = 0; s < n; ++s) {
            cd a = rng.annulus(0.3, 2.0), b = rng.annulus(0.3, 2.0), z = rng.annulus(0.3, 5.0);
            auto d = derivs([&](const Jet2& x) { return kummer_m(a, b, x); }, z);
            ode.add(relative_residual({z * d[2], (b - z) * d[1], -a * d[0]}));
            cd lhs = kummer_m(a, b, z).value, rhs = std::exp(z) * kummer_m(b - a, b, -z).value;
            tr.add(relative_residual({lhs, -rhs}));
        }
        out.push_back(ode.done());
        out.push_back(tr.done());
    }
    {
        Tracker ode("whittaker_w", "ode", 1e-8);
        for (std::size_t s = 0; s < n; ++s) {
            cd kappa = rng.annulus(0.3, 1.5), mu;
            do {
                mu = rng.annulus(0.3, 1.5);
            } while (std::abs(2.0 * mu - std::round((2.0 * mu).real())) < 0.1);
            cd z = sample_off_cut(rng, 0.5, 4.0);
            auto d = derivs([&](const Jet2& x) { return whittaker_w(kappa, mu, x); }, z);
            ode.add(relative_residual({d[2], -0.25 * d[0], kappa / z * d[0], (0.25 - mu * mu) / (z * z) * d[0]}));
        }
        out.push_back(ode.done());
    }
    {
        Tracker ode("gauss_2f1", "ode", 1e-8);
        for (std::size_t s = 0; s < n; ++s) {
            cd a = rng.annulus(0.3, 2.0), b = rng.annulus(0.3, 2.0), c = rng.annulus(0.3, 2.0);
            cd z = rng.annulus(0.05, 0.7);
            auto d = derivs([&](const Jet2& x) { return gauss_2f1(a, b, c, x); }, z);
            ode.add(relative_residual({z * (1.0 - z) * d[2], (c - (a + b + 1.0) * z) * d[1], -a * b * d[0]}));
        }
        out.push_back(ode.done());
    }
    {
        Tracker ode("legendre_p", "ode", 1e-8);
        for (std::size_t s = 0; s < n; ++s) {
            cd nu = rng.annulus(0.3, 1.5), mu = rng.annulus(0.3, 1.5), z;
            do {
                z = rng.annulus(0.1, 0.8);
            } while (std::abs(z.imag()) < 0.1);
            auto d = derivs([&](const Jet2& x) { return legendre_p(nu, mu, x); }, z);
            ode.add(relative_residual(
                {(1.0 - z * z) * d[2], -2.0 * z * d[1], nu * (nu + 1.0) * d[0], -mu * mu / (1.0 - z * z) * d[0]}));
        }
        out.push_back(ode.done());
    }
    {
        Tracker ode("jacobi_p", "ode", 1e-8), sym("jacobi_p", "symmetry", 0.0);
        for (std::size_t s = 0; s < n; ++s) {
            int deg = int(rng.integer(0, 6));
            cd a = rng.annulus(0.3, 2.0), b = rng.annulus(0.3, 2.0), z = rng.annulus(0.1, 2.0);
            auto d = derivs([&](const Jet2& x) { return jacobi_p(deg, a, b, x); }, z);
            ode.add(relative_residual(
                {(1.0 - z * z) * d[2], (b - a - (a + b + 2.0) * z) * d[1], double(deg) * (double(deg) + a + b + 1.0) * d[0]}));
            Qi qa = rng.gauss_rational(3, 5), qb = rng.gauss_rational(3, 5), qz = rng.gauss_rational(2, 7);
            Qi lhs = jacobi_p_exact(deg, qa, qb, -qz);
            Qi rhs = jacobi_p_exact(deg, qb, qa, qz);
            if (deg % 2) rhs = -rhs;
            sym.add(lhs == rhs ? 0.0 : 1.0);
        }
        out.push_back(ode.done());
        out.push_back(sym.done());
    }
    {
        Tracker ode("airy_ai", "ode", 1e-8), real("airy_ai", "real on the real axis", 1e-15);
        for (std::size_t s = 0; s < n; ++s) {
            cd z = rng.annulus(0.1, 4.0);
            auto d = derivs([](const Jet2& x) { return airy_ai(x); }, z);
            ode.add(relative_residual({d[2], -z * d[0]}));
            cd v = airy_ai(cd(rng.uniform(-4.0, 4.0))).value;
            real.add(std::abs(v.imag()) / std::max(std::abs(v), 1e-300));
        }
        out.push_back(ode.done());
        out.push_back(real.done());
    }
    return out;
}

nlohmann::json to_json(const BatteryResult& r) {
    return {{"function", r.function}, {"check", r.check}, {"samples", r.samples},
            {"max_residual", r.max_residual}, {"tol", r.tol},  {"pass", r.pass}};
}

}  // namespace sepcoords
