#include "sepcoords/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace sepcoords {

std::string to_string(SpaceId s) {
    switch (s) {
        case SpaceId::M4C: return "m4c";
        case SpaceId::M3C: return "m3c";
        case SpaceId::M4R: return "m4r";
        case SpaceId::M31: return "m31";
        case SpaceId::M22: return "m22";
    }
    return "?";
}

std::optional<SpaceId> parse_space(const std::string& s) {
    for (SpaceId id : all_spaces())
        if (to_string(id) == s) return id;
    return std::nullopt;
}

bool is_real_form(SpaceId s) { return s == SpaceId::M4R || s == SpaceId::M31 || s == SpaceId::M22; }

std::size_t space_dim(SpaceId s) { return s == SpaceId::M3C ? 3 : 4; }

const std::vector<SpaceId>& all_spaces() {
    static const std::vector<SpaceId> v{SpaceId::M4C, SpaceId::M3C, SpaceId::M4R, SpaceId::M31, SpaceId::M22};
    return v;
}

// ---------------------------------------------------------------- metrics

std::pair<int, int> MetricForm::signature() const {
    const std::size_t n = dim();
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!entries(i, j).is_real()) throw std::domain_error("signature of a non-real form");
            a[i][j] = entries(i, j).re();
        }
    int p = 0, q = 0;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && sgn(a[i][i]) != 0) {
                piv = i;
                break;
            }
        if (piv == n) {
            // Zero diagonal: replace row/column i by i + j to create a pivot.
            for (std::size_t i = 0; i < n && piv == n; ++i)
                for (std::size_t j = 0; j < n && piv == n; ++j)
                    if (!done[i] && !done[j] && i != j && sgn(a[i][j]) != 0) {
                        for (std::size_t k = 0; k < n; ++k) a[i][k] += a[j][k];
                        for (std::size_t k = 0; k < n; ++k) a[k][i] += a[k][j];
                        piv = i;
                    }
            if (piv == n) break;
        }
        done[piv] = true;
        mpq_class d = a[piv][piv];
        (sgn(d) > 0 ? p : q)++;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || sgn(a[i][piv]) == 0) continue;
            mpq_class f = a[i][piv] / d;
            for (std::size_t k = 0; k < n; ++k) a[i][k] -= f * a[piv][k];
            for (std::size_t k = 0; k < n; ++k) a[k][i] -= f * a[k][piv];
        }
    }
    return {p, q};
}

MetricForm MetricForm::identity(std::size_t n) { return {"identity", QMatrix::identity(n)}; }

MetricForm MetricForm::antidiagonal_blocks() {
    QMatrix k(4, 4);
    k(0, 2) = k(2, 0) = k(1, 3) = k(3, 1) = Qi(1);
    return {"antidiagonal-blocks", k};
}

MetricForm MetricForm::light_cone() {
    QMatrix k(4, 4);
    k(0, 3) = k(3, 0) = k(1, 1) = k(2, 2) = Qi(1);
    return {"light-cone", k};
}

MetricForm MetricForm::light_cone_split() {
    QMatrix k(4, 4);
    k(0, 3) = k(3, 0) = k(1, 1) = Qi(1);
    k(2, 2) = Qi(-1);
    return {"light-cone-split", k};
}

MetricForm MetricForm::full_antidiagonal(std::size_t n) {
    QMatrix k(n, n);
    for (std::size_t i = 0; i < n; ++i) k(i, n - 1 - i) = Qi(1);
    return {"full-antidiagonal", k};
}

MetricForm MetricForm::diagonal(const std::vector<long>& d) {
    QMatrix k(d.size(), d.size());
    std::string id = "diag(";
    for (std::size_t i = 0; i < d.size(); ++i) {
        k(i, i) = Qi(d[i]);
        id += (i ? "," : "") + std::to_string(d[i]);
    }
    return {id + ")", k};
}

// ---------------------------------------------------------------- elements

AlgebraElement::AlgebraElement(QMatrix m, std::string label) : m_(std::move(m)), label_(std::move(label)) {
    if (m_.rows() != m_.cols() || m_.rows() < 2) throw std::invalid_argument("algebra element must be square");
    for (std::size_t j = 0; j < m_.cols(); ++j)
        if (!m_(m_.rows() - 1, j).is_zero()) throw std::invalid_argument("algebra element: last row must vanish");
}

AlgebraElement AlgebraElement::basis(std::size_t n, std::size_t i, std::size_t k) {
    return AlgebraElement(QMatrix::unit(n + 1, i, k), "E" + std::to_string(i) + std::to_string(k));
}

AlgebraElement AlgebraElement::rotation(std::size_t n, std::size_t i, std::size_t k) {
    return AlgebraElement(QMatrix::unit(n + 1, i, k) - QMatrix::unit(n + 1, k, i),
                          "L" + std::to_string(i) + std::to_string(k));
}

QMatrix AlgebraElement::linear_part() const {
    QMatrix x(n(), n());
    for (std::size_t i = 0; i < n(); ++i)
        for (std::size_t j = 0; j < n(); ++j) x(i, j) = m_(i, j);
    return x;
}

std::vector<Qi> AlgebraElement::translation() const {
    std::vector<Qi> a(n());
    for (std::size_t i = 0; i < n(); ++i) a[i] = m_(i, n());
    return a;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    return AlgebraElement(m_ + o.m_, label_.empty() || o.label_.empty() ? "" : label_ + "+" + o.label_);
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    return AlgebraElement(m_ - o.m_, label_.empty() || o.label_.empty() ? "" : label_ + "-" + o.label_);
}

AlgebraElement operator*(const Qi& s, const AlgebraElement& x) { return AlgebraElement(x.m_ * s, x.label_); }

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.n() != b.n()) throw std::invalid_argument("commutator: dimension mismatch");
    return AlgebraElement(a.matrix() * b.matrix() - b.matrix() * a.matrix(),
                          "[" + a.label() + "," + b.label() + "]");
}

bool is_isometry(const AlgebraElement& x, const MetricForm& k) {
    if (x.n() != k.dim()) return false;
    QMatrix X = x.linear_part();
    return (X * k.entries + k.entries * X.transpose()).is_zero();
}

std::vector<AlgebraElement> isometry_basis(const MetricForm& k) {
    const std::size_t n = k.dim();
    QMatrix kinv = inverse(k.entries);
    std::vector<AlgebraElement> out;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            QMatrix a = QMatrix::unit(n, i, j) - QMatrix::unit(n, j, i);
            QMatrix x = a * kinv;
            QMatrix big(n + 1, n + 1);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) big(r, c) = x(r, c);
            out.emplace_back(big, "A" + std::to_string(i) + std::to_string(j) + "K^-1");
        }
    for (std::size_t i = 1; i <= n; ++i) out.push_back(AlgebraElement::basis(n, i, n + 1));
    return out;
}

// ---------------------------------------------------------------- exponentials

namespace {

std::vector<QMatrix> nilpotent_powers(const QMatrix& x) {
    std::vector<QMatrix> pw{QMatrix::identity(x.rows())};
    QMatrix p = pw[0];
    for (std::size_t k = 1; k <= x.rows(); ++k) {
        p = p * x;
        if (p.is_zero()) return pw;
        pw.push_back(p);
    }
    return {};
}

CMatrix series_sum(const std::vector<CMatrix>& powers, cd t) {
    CMatrix out(powers[0].rows(), powers[0].cols());
    cd coef = 1.0;
    for (std::size_t j = 0; j < powers.size(); ++j) {
        if (j > 0) coef *= t / static_cast<double>(j);
        out += powers[j] * coef;
    }
    return out;
}

}  // namespace

std::string ExpPlan::kind_name(Kind k) {
    switch (k) {
        case Kind::Nilpotent: return "nilpotent";
        case Kind::Trigonometric: return "trigonometric";
        case Kind::Diagonal: return "diagonal";
        case Kind::DiagonalTimesNilpotent: return "diagonal-times-nilpotent";
        case Kind::Series: return "series";
    }
    return "?";
}

ExpPlan::ExpPlan(const AlgebraElement& x) {
    const QMatrix& X = x.matrix();
    dim_ = X.rows();
    x_ = to_complex(X);

    if (auto pw = nilpotent_powers(X); !pw.empty()) {
        kind_ = Kind::Nilpotent;
        for (const auto& p : pw) powers_.push_back(to_complex(p));
        return;
    }

    bool diagonal = true;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) diagonal = diagonal && (i == j || X(i, j).is_zero());
    if (diagonal) {
        kind_ = Kind::Diagonal;
        for (std::size_t i = 0; i < dim_; ++i) diag_.push_back(X(i, i).to_complex());
        return;
    }

    QMatrix x2 = X * X, x3 = x2 * X;
    for (std::size_t i = 0; i < dim_ && kind_ == Kind::Series; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            if (X(i, j).is_zero()) continue;
            Qi c = x3(i, j) / X(i, j);
            if (!c.is_zero() && x3 == X * c) {
                kind_ = Kind::Trigonometric;
                c_ = c.to_complex();
                powers_ = {CMatrix::identity(dim_), x_, to_complex(x2)};
            }
            break;
        }
    if (kind_ != Kind::Series) return;

    QMatrix d(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) d(i, i) = X(i, i);
    QMatrix nil = X - d;
    if (d * nil == nil * d) {
        auto pw = nilpotent_powers(nil);
        if (nil.is_zero() || !pw.empty()) {
            for (std::size_t i = 0; i < dim_; ++i) diag_.push_back(X(i, i).to_complex());
            if (nil.is_zero()) {
                kind_ = Kind::Diagonal;
            } else {
                kind_ = Kind::DiagonalTimesNilpotent;
                for (const auto& p : pw) powers_.push_back(to_complex(p));
            }
        }
    }
}

CMatrix ExpPlan::operator()(cd t) const {
    switch (kind_) {
        case Kind::Nilpotent: return series_sum(powers_, t);
        case Kind::Trigonometric: {
            cd s = std::sqrt(c_);
            return powers_[0] + powers_[1] * (std::sinh(s * t) / s) + powers_[2] * ((std::cosh(s * t) - 1.0) / c_);
        }
        case Kind::Diagonal:
        case Kind::DiagonalTimesNilpotent: {
            CMatrix e(dim_, dim_);
            for (std::size_t i = 0; i < dim_; ++i) e(i, i) = std::exp(t * diag_[i]);
            return kind_ == Kind::Diagonal ? e : e * series_sum(powers_, t);
        }
        case Kind::Series: break;
    }
    // Taylor series with scaling and squaring.
    CMatrix a = x_ * t;
    double norm = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
        double row = 0;
        for (std::size_t j = 0; j < dim_; ++j) row += std::abs(a(i, j));
        norm = std::max(norm, row);
    }
    int s = norm > 0.5 ? static_cast<int>(std::ceil(std::log2(norm / 0.5))) : 0;
    a *= cd(std::ldexp(1.0, -s));
    CMatrix sum = CMatrix::identity(dim_), term = sum;
    bool converged = false;
    for (int k = 1; k < 80; ++k) {
        term = term * a * cd(1.0 / k);
        sum += term;
        if (max_abs(term) <= 1e-17 * max_abs(sum)) {
            converged = true;
            break;
        }
    }
    if (!converged) throw std::runtime_error("one_param_exp: series fallback did not converge");
    for (int k = 0; k < s; ++k) sum = sum * sum;
    return sum;
}

CMatrix one_param_exp(const AlgebraElement& x, cd t) { return ExpPlan(x)(t); }

// ---------------------------------------------------------------- MASA tools

AlgebraElement Masa::element(const std::vector<Qi>& p) const {
    if (p.size() != generators.size()) throw std::invalid_argument("Masa::element: parameter count mismatch");
    AlgebraElement x = AlgebraElement::zero(metric.dim());
    for (std::size_t j = 0; j < p.size(); ++j) x = x + p[j] * generators[j];
    return x.set_label(id);
}

namespace {

QMatrix flatten(const std::vector<QMatrix>& ms) {
    const std::size_t len = ms.empty() ? 0 : ms[0].rows() * ms[0].cols();
    QMatrix f(len, ms.size());
    for (std::size_t c = 0; c < ms.size(); ++c)
        for (std::size_t i = 0; i < ms[c].rows(); ++i)
            for (std::size_t j = 0; j < ms[c].cols(); ++j) f(i * ms[c].cols() + j, c) = ms[c](i, j);
    return f;
}

}  // namespace

TranslationReport isotropic_translations(const Masa& m) {
    const std::size_t n = m.metric.dim();
    // Linear combinations of generators whose linear part vanishes.
    std::vector<QMatrix> lin;
    for (const auto& g : m.generators) lin.push_back(g.linear_part());
    QMatrix null = nullspace(flatten(lin));
    std::vector<std::vector<Qi>> vecs;
    for (std::size_t c = 0; c < null.cols(); ++c) {
        std::vector<Qi> v(n);
        for (std::size_t j = 0; j < m.generators.size(); ++j) {
            auto a = m.generators[j].translation();
            for (std::size_t i = 0; i < n; ++i) v[i] += null(j, c) * a[i];
        }
        vecs.push_back(v);
    }
    TranslationReport r;
    r.count = static_cast<int>(vecs.size());
    for (const auto& u : vecs)
        for (const auto& v : vecs) {
            Qi s;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) s += u[i] * m.metric.entries(i, j) * v[j];
            if (!s.is_zero()) r.isotropic = false;
        }
    return r;
}

CentralizerReport centralizer_check(const std::vector<AlgebraElement>& elements, const MetricForm& k) {
    auto basis = isometry_basis(k);
    const std::size_t d = k.dim() + 1;
    QMatrix eqs(elements.size() * d * d, basis.size());
    for (std::size_t e = 0; e < elements.size(); ++e)
        for (std::size_t b = 0; b < basis.size(); ++b) {
            QMatrix c = commutator(elements[e], basis[b]).matrix();
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) eqs(e * d * d + i * d + j, b) = c(i, j);
        }
    QMatrix null = nullspace(eqs);

    std::vector<QMatrix> cent, all;
    for (std::size_t c = 0; c < null.cols(); ++c) {
        QMatrix y(d, d);
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (!null(b, c).is_zero()) y += basis[b].matrix() * null(b, c);
        cent.push_back(y);
    }
    std::vector<QMatrix> sub;
    for (const auto& e : elements) sub.push_back(e.matrix());
    all = cent;
    all.insert(all.end(), sub.begin(), sub.end());

    CentralizerReport r;
    r.ambient_dim = basis.size();
    r.centralizer_dim = null.cols();
    r.subalgebra_dim = rank(flatten(sub));
    r.is_maximal = r.centralizer_dim == r.subalgebra_dim && rank(flatten(all)) == r.centralizer_dim;
    return r;
}

CentralizerReport centralizer_check(const Masa& m, const MetricForm& k, SplitMix64& rng) {
    const std::size_t dim = m.dim();
    for (int attempt = 0; attempt <= 5; ++attempt) {
        std::vector<std::vector<Qi>> tuples(dim, std::vector<Qi>(dim));
        QMatrix p(dim, dim);
        for (std::size_t t = 0; t < dim; ++t)
            for (std::size_t j = 0; j < dim; ++j) {
                Qi v(rng.rational(5, 7));
                if (m.space == SpaceId::M4C || m.space == SpaceId::M3C) v = Qi(v.re(), rng.rational(5, 7));
                tuples[t][j] = v;
                p(t, j) = v;
            }
        if (rank(p) < dim) continue;
        std::vector<AlgebraElement> elems;
        for (const auto& t : tuples) elems.push_back(m.element(t));
        CentralizerReport r = centralizer_check(elems, k);
        if (r.subalgebra_dim < dim) continue;
        r.retries = attempt;
        for (const auto& t : tuples) {
            std::vector<std::string> s;
            for (const auto& v : t) s.push_back(v.str());
            r.sample_params.push_back(s);
        }
        return r;
    }
    throw std::runtime_error("centralizer_check: rank degenerate after 5 resamples for " + m.id);
}

std::pair<MetricForm, std::vector<AlgebraElement>> conjugate(const QMatrix& g, const MetricForm& k1,
                                                             const std::vector<AlgebraElement>& elements) {
    if (g.rows() != k1.dim() || g.cols() != k1.dim()) throw std::invalid_argument("conjugate: dimension mismatch");
    if (determinant(g).is_zero()) throw std::domain_error("conjugate: singular transformation");
    std::vector<QMatrix> ms;
    for (const auto& x : elements) ms.push_back(x.matrix());
    auto [k2, out] = conjugate<Qi>(g, k1.entries, ms);
    std::vector<AlgebraElement> xs;
    for (std::size_t i = 0; i < out.size(); ++i) xs.emplace_back(out[i], elements[i].label());
    return {MetricForm{"conjugated", k2}, xs};
}

// ---------------------------------------------------------------- JSON

namespace {

nlohmann::json matrix_strings(const QMatrix& m) {
    auto a = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a.push_back(m(i, j).str());
    return a;
}

}  // namespace

nlohmann::json to_json(const MetricForm& k) {
    nlohmann::json j{{"form_id", k.form_id}, {"entries", matrix_strings(k.entries)}};
    bool real = true;
    for (std::size_t r = 0; r < k.dim(); ++r)
        for (std::size_t c = 0; c < k.dim(); ++c) real = real && k.entries(r, c).is_real();
    if (real) {
        auto [p, q] = k.signature();
        j["signature"] = {p, q};
    }
    return j;
}

nlohmann::json to_json(const Masa& m) {
    auto gens = nlohmann::json::array();
    auto labels = nlohmann::json::array();
    for (const auto& g : m.generators) {
        gens.push_back(matrix_strings(g.matrix()));
        labels.push_back(g.label());
    }
    nlohmann::json j{{"id", m.id},
                     {"space", to_string(m.space)},
                     {"metric_form", to_json(m.metric)},
                     {"params", m.params},
                     {"generators", gens},
                     {"generator_labels", labels},
                     {"dim", m.dim()},
                     {"k0", m.k0},
                     {"class", m.decomposability_class},
                     {"degenerate", m.degenerate},
                     {"paper_eq", m.paper_eq}};
    if (m.descends_from) j["descends_from"] = *m.descends_from;
    if (!m.notes.empty()) j["notes"] = m.notes;
    return j;
}

}  // namespace sepcoords
