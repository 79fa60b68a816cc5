#include "sepcoords/opsets.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace sepcoords {

namespace {

std::string qstr(const Qi& q) {
    std::ostringstream s;
    if (q.is_real()) {
        s << q.re().get_str();
    } else if (sgn(q.re()) == 0) {
        s << q.im().get_str() << "i";
    } else {
        s << "(" << q.str() << ")";
    }
    return s.str();
}

// coefficient * rest, with the sign pulled out for readability
void append_term(std::string& out, const Qi& c, const std::string& rest) {
    Qi v = c;
    bool neg = v.is_real() && sgn(v.re()) < 0;
    if (neg) v = -v;
    if (out.empty()) {
        if (neg) out += "-";
    } else {
        out += neg ? " - " : " + ";
    }
    if (rest.empty()) {
        out += qstr(v);
    } else if (v == Qi(1)) {
        out += rest;
    } else {
        out += qstr(v) + "*" + rest;
    }
}

std::string monomial(const MultiIndex& e, const char* sym) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += sym + std::to_string(i + 1);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}

long binom(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

// ------------------------------------------------------------------- Poly

Poly Poly::constant(std::size_t nvars, const Qi& c) {
    Poly p(nvars);
    p.add_term(MultiIndex(nvars, 0), c);
    return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i, const Qi& c) {
    Poly p(nvars);
    MultiIndex e(nvars, 0);
    e.at(i) = 1;
    p.add_term(e, c);
    return p;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [e, c] : t_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

void Poly::add_term(const MultiIndex& e, const Qi& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

Poly Poly::derivative(std::size_t i) const {
    Poly d(n_);
    for (const auto& [e, c] : t_) {
        if (e[i] == 0) continue;
        MultiIndex f = e;
        --f[i];
        d.add_term(f, Qi(e[i]) * c);
    }
    return d;
}

Poly Poly::derivative(const MultiIndex& alpha) const {
    Poly d = *this;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (int k = 0; k < alpha[i]; ++k) d = d.derivative(i);
    return d;
}

Qi Poly::eval(const std::vector<Qi>& x) const {
    Qi s(0);
    for (const auto& [e, c] : t_) {
        Qi m = c;
        for (std::size_t i = 0; i < n_; ++i)
            for (int k = 0; k < e[i]; ++k) m *= x[i];
        s += m;
    }
    return s;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
}

Poly Poly::operator-() const {
    Poly p(n_);
    for (const auto& [e, c] : t_) p.t_.emplace(e, -c);
    return p;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly p(a.n_);
    for (const auto& [ea, ca] : a.t_)
        for (const auto& [eb, cb] : b.t_) {
            MultiIndex e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            p.add_term(e, ca * cb);
        }
    return p;
}

Poly operator*(const Qi& s, const Poly& p) {
    Poly r(p.n_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : p.t_) r.t_.emplace(e, s * c);
    return r;
}

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::string out;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) append_term(out, it->second, monomial(it->first, "x"));
    return out;
}

// ----------------------------------------------------------- DiffOperator

DiffOperator DiffOperator::identity(std::size_t nvars) { return multiply(Poly::constant(nvars, Qi(1))); }

DiffOperator DiffOperator::partial(std::size_t nvars, std::size_t i) {
    DiffOperator d(nvars);
    MultiIndex a(nvars, 0);
    a.at(i) = 1;
    d.add_term(a, Poly::constant(nvars, Qi(1)));
    return d;
}

DiffOperator DiffOperator::multiply(const Poly& p) {
    DiffOperator d(p.nvars());
    d.add_term(MultiIndex(p.nvars(), 0), p);
    return d;
}

int DiffOperator::order() const {
    int o = -1;
    for (const auto& [a, p] : t_) {
        int s = 0;
        for (int k : a) s += k;
        o = std::max(o, s);
    }
    return o;
}

Poly DiffOperator::first_order_coefficient(std::size_t i) const {
    MultiIndex a(n_, 0);
    a.at(i) = 1;
    auto it = t_.find(a);
    return it == t_.end() ? Poly(n_) : it->second;
}

void DiffOperator::add_term(const MultiIndex& alpha, const Poly& p) {
    if (p.is_zero()) return;
    auto [it, fresh] = t_.emplace(alpha, p);
    if (!fresh) {
        it->second += p;
        if (it->second.is_zero()) t_.erase(it);
    }
}

Poly DiffOperator::apply(const Poly& f) const {
    Poly out(n_);
    for (const auto& [a, p] : t_) out += p * f.derivative(a);
    return out;
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
    for (const auto& [a, p] : o.t_) add_term(a, p);
    return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) {
    for (const auto& [a, p] : o.t_) add_term(a, -p);
    return *this;
}

DiffOperator DiffOperator::operator-() const {
    DiffOperator d(n_);
    for (const auto& [a, p] : t_) d.t_.emplace(a, -p);
    return d;
}

DiffOperator operator*(const Qi& s, const DiffOperator& d) {
    DiffOperator r(d.n_);
    if (s.is_zero()) return r;
    for (const auto& [a, p] : d.t_) r.t_.emplace(a, s * p);
    return r;
}

std::string DiffOperator::str() const {
    if (t_.empty()) return "0";
    std::string out;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const std::string d = monomial(it->first, "d");
        for (auto jt = it->second.terms().rbegin(); jt != it->second.terms().rend(); ++jt) {
            std::string x = monomial(jt->first, "x");
            std::string rest = x.empty() ? d : (d.empty() ? x : x + "*" + d);
            append_term(out, jt->second, rest);
        }
    }
    return out;
}

DiffOperator compose(const DiffOperator& p, const DiffOperator& q) {
    if (p.nvars() != q.nvars()) throw std::invalid_argument("compose: variable count mismatch");
    const std::size_t n = p.nvars();
    DiffOperator out(n);
    for (const auto& [alpha, a] : p.terms())
        for (const auto& [beta, b] : q.terms()) {
            // a d^alpha (b d^beta) = a sum_gamma C(alpha, gamma) (d^gamma b) d^(alpha - gamma + beta)
            MultiIndex gamma(n, 0);
            std::function<void(std::size_t, long)> rec = [&](std::size_t i, long weight) {
                if (i == n) {
                    Poly db = b.derivative(gamma);
                    if (db.is_zero()) return;
                    MultiIndex d(n);
                    for (std::size_t k = 0; k < n; ++k) d[k] = alpha[k] - gamma[k] + beta[k];
                    out.add_term(d, Qi(weight) * (a * db));
                    return;
                }
                for (int g = 0; g <= alpha[i]; ++g) {
                    gamma[i] = g;
                    rec(i + 1, weight * binom(alpha[i], g));
                }
                gamma[i] = 0;
            };
            rec(0, 1);
        }
    return out;
}

DiffOperator op_commutator(const DiffOperator& p, const DiffOperator& q) { return compose(p, q) - compose(q, p); }

DiffOperator generator_to_operator(const AlgebraElement& x) {
    const std::size_t n = x.n();
    const QMatrix& m = x.matrix();
    DiffOperator d(n);
    for (std::size_t i = 0; i < n; ++i) {
        Poly c = Poly::constant(n, m(i, n));
        for (std::size_t k = 0; k < n; ++k) c += Poly::variable(n, k, m(i, k));
        MultiIndex a(n, 0);
        a[i] = 1;
        d.add_term(a, c);
    }
    return d;
}

DiffOperator box_operator(const MetricForm& k) {
    const std::size_t n = k.dim();
    QMatrix kinv = inverse(k.entries);
    DiffOperator d(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            MultiIndex a(n, 0);
            ++a[i];
            ++a[j];
            d.add_term(a, Poly::constant(n, kinv(i, j)));
        }
    return d;
}

namespace {

Qi trace_product(const AlgebraElement& a, const AlgebraElement& b) {
    QMatrix p = a.matrix() * b.matrix();
    Qi t(0);
    for (std::size_t i = 0; i < p.rows(); ++i) t += p(i, i);
    return t;
}

std::vector<Qi> flatten(const AlgebraElement& x) {
    const auto& m = x.matrix();
    std::vector<Qi> v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

QMatrix column_matrix(const std::vector<AlgebraElement>& basis, std::size_t extra = 0) {
    const std::size_t d = basis.empty() ? 0 : flatten(basis[0]).size();
    QMatrix m(d, basis.size() + extra);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        auto v = flatten(basis[j]);
        for (std::size_t i = 0; i < d; ++i) m(i, j) = v[i];
    }
    return m;
}

// Coordinates of y in an independent basis.
std::vector<Qi> coordinates(const std::vector<AlgebraElement>& basis, const AlgebraElement& y) {
    QMatrix m = column_matrix(basis, 1);
    auto v = flatten(y);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, basis.size()) = v[i];
    auto piv = rref(m);
    std::vector<Qi> c(basis.size(), Qi(0));
    for (std::size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == basis.size()) throw std::logic_error("coordinates: element outside the span");
        c[piv[r]] = m(r, basis.size());
    }
    return c;
}

DiffOperator quadratic(const std::vector<AlgebraElement>& basis, const QMatrix& q) {
    const std::size_t n = basis.at(0).n();
    std::vector<DiffOperator> d;
    for (const auto& b : basis) d.push_back(generator_to_operator(b));
    DiffOperator out(n);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (!q(i, j).is_zero()) out += q(i, j) * compose(d[i], d[j]);
    return out;
}

}  // namespace

DiffOperator casimir_second_order(const MetricForm& k) {
    auto all = isometry_basis(k);
    const std::size_t n = k.dim();
    std::vector<AlgebraElement> rot(all.begin(), all.begin() + static_cast<long>(n * (n - 1) / 2));
    QMatrix g(rot.size(), rot.size());
    for (std::size_t i = 0; i < rot.size(); ++i)
        for (std::size_t j = 0; j < rot.size(); ++j) g(i, j) = -trace_product(rot[i], rot[j]);
    return quadratic(rot, inverse(g));
}

std::vector<AlgebraElement> lie_closure(const std::vector<AlgebraElement>& gens) {
    std::vector<AlgebraElement> basis;
    auto try_add = [&](const AlgebraElement& x) {
        basis.push_back(x);
        if (rank(column_matrix(basis)) < basis.size()) {
            basis.pop_back();
            return false;
        }
        return true;
    };
    for (const auto& g : gens) try_add(g);
    bool grew = true;
    while (grew) {
        grew = false;
        const std::size_t m = basis.size();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) grew = try_add(commutator(basis[i], basis[j])) || grew;
    }
    return basis;
}

std::optional<DiffOperator> quadratic_casimir(const std::vector<AlgebraElement>& basis) {
    const std::size_t m = basis.size();
    if (m == 0) return std::nullopt;
    // unknowns Q_ij with i <= j
    std::vector<std::vector<std::size_t>> idx(m, std::vector<std::size_t>(m));
    std::size_t u = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) idx[i][j] = idx[j][i] = u++;
    std::vector<std::vector<Qi>> rows;
    for (const auto& x : basis) {
        QMatrix a(m, m);  // ad_x in the basis, column j = [x, b_j]
        for (std::size_t j = 0; j < m; ++j) {
            auto c = coordinates(basis, commutator(x, basis[j]));
            for (std::size_t i = 0; i < m; ++i) a(i, j) = c[i];
        }
        // (A Q + Q A^T)_kl = 0 for k <= l
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t l = k; l < m; ++l) {
                std::vector<Qi> row(u, Qi(0));
                for (std::size_t i = 0; i < m; ++i) row[idx[i][l]] += a(k, i);
                for (std::size_t j = 0; j < m; ++j) row[idx[k][j]] += a(l, j);
                rows.push_back(std::move(row));
            }
    }
    QMatrix sys(rows.size(), u);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < u; ++c) sys(r, c) = rows[r][c];
    QMatrix null = nullspace(sys);
    if (null.cols() != 1) return std::nullopt;
    QMatrix q(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) q(i, j) = null(idx[i][j], 0);
    return quadratic(basis, q);
}

namespace {

Poly poly_det(const std::vector<std::vector<Poly>>& m, std::size_t nvars) {
    const std::size_t k = m.size();
    if (k == 1) return m[0][0];
    Poly d(nvars);
    for (std::size_t c = 0; c < k; ++c) {
        if (m[0][c].is_zero()) continue;
        std::vector<std::vector<Poly>> minor;
        for (std::size_t r = 1; r < k; ++r) {
            std::vector<Poly> row;
            for (std::size_t cc = 0; cc < k; ++cc)
                if (cc != c) row.push_back(m[r][cc]);
            minor.push_back(std::move(row));
        }
        Poly t = m[0][c] * poly_det(minor, nvars);
        if (c % 2) d -= t;
        else d += t;
    }
    return d;
}

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> s;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (s.size() == k) {
            out.push_back(s);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            s.push_back(i);
            rec(i + 1);
            s.pop_back();
        }
    };
    rec(0);
}

}  // namespace

std::size_t generic_rank(const std::vector<std::vector<Poly>>& rows) {
    if (rows.empty()) return 0;
    const std::size_t r = rows.size(), c = rows[0].size();
    const std::size_t nvars = rows[0][0].nvars();
    for (std::size_t k = std::min(r, c); k > 0; --k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        subsets(r, k, rs);
        subsets(c, k, cs);
        for (const auto& ri : rs)
            for (const auto& ci : cs) {
                std::vector<std::vector<Poly>> m;
                for (auto i : ri) {
                    std::vector<Poly> row;
                    for (auto j : ci) row.push_back(rows[i][j]);
                    m.push_back(std::move(row));
                }
                if (!poly_det(m, nvars).is_zero()) return k;
            }
    }
    return 0;
}

std::vector<std::vector<Poly>> first_order_rows(const std::vector<DiffOperator>& ops) {
    std::vector<std::vector<Poly>> rows;
    for (const auto& op : ops) {
        std::vector<Poly> row;
        for (std::size_t i = 0; i < op.nvars(); ++i) row.push_back(op.first_order_coefficient(i));
        rows.push_back(std::move(row));
    }
    return rows;
}

// ------------------------------------------------------------------ sets

namespace {

std::vector<AlgebraElement> rotations_on_support(const MetricForm& k, const std::vector<AlgebraElement>& gens) {
    const std::size_t n = k.dim();
    std::vector<bool> moved(n, false);
    for (const auto& g : gens)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!g.matrix()(i, j).is_zero()) moved[i] = moved[j] = true;
    std::vector<AlgebraElement> out;
    for (const auto& x : isometry_basis(k)) {
        bool inside = true, rotation = true;
        for (std::size_t i = 0; i < n; ++i) {
            rotation = rotation && x.matrix()(i, n).is_zero();
            for (std::size_t j = 0; j < n; ++j)
                if (!x.matrix()(i, j).is_zero() && !(moved[i] && moved[j])) inside = false;
        }
        if (inside && rotation) out.push_back(x);
    }
    return out;
}

}  // namespace

std::optional<OpSet> opset_for_chart(const Chart& chart) {
    if (chart.kind == ChartKind::Stub) return std::nullopt;
    OpSet s;
    s.chart_id = chart.id;
    const std::size_t n = chart.ambient_dim();
    // On a line the translation alone is complete and Box is its square.
    if (n > 1) s.members.push_back({"Box", "hamiltonian", box_operator(chart.metric)});
    auto gen = [](const AlgebraElement& x) { return OpMember{x.label(), "generator", generator_to_operator(x)}; };
    auto lb = [&] { return OpMember{"Delta_LB", "casimir", casimir_second_order(chart.metric)}; };

    if (chart.kind == ChartKind::Masa) {
        auto masa = find_masa(chart.masa_id);
        if (!masa) throw std::logic_error(chart.id + ": unknown masa " + chart.masa_id);
        // The first steps of the action are the masa generators, with the chart's family constants.
        if (masa->dim() + 1 < n) s.members.push_back(lb());
        for (std::size_t i = 0; i < masa->dim(); ++i) s.members.push_back(gen(chart.action.at(i).generator));
    } else if (chart.kind == ChartKind::Nonmaximal) {
        const auto& g1 = chart.action.at(0).generator;
        const auto& g2 = chart.action.at(1).generator;
        auto l = lie_closure({g1, g2});
        if (l.size() == 2 && !commutator(g1, g2).matrix().is_zero()) {
            // A two-dimensional solvable algebra has no quadratic Casimir; the chain node
            // is the orthogonal algebra of the coordinates the generators move.
            l = rotations_on_support(chart.metric, {g1, g2});
            s.notes.push_back("L taken as the rotations of the coordinates moved by the chain generators");
        }
        s.members.push_back(lb());
        if (l.size() == 2) {
            s.subalgebra = "abelian, dim 2";
            s.members.push_back(gen(g2));
        } else {
            auto c = quadratic_casimir(l);
            if (!c) throw std::logic_error(chart.id + ": subalgebra has no unique quadratic Casimir");
            s.subalgebra = "generated by " + g1.label() + ", " + g2.label() + "; dim " + std::to_string(l.size());
            s.members.push_back({"C2(L)", "casimir", *c});
        }
        s.members.push_back(gen(g1));
    } else if (!chart.masa_id.empty()) {
        auto masa = find_masa(chart.masa_id);
        if (!masa) throw std::logic_error(chart.id + ": unknown masa " + chart.masa_id);
        for (const auto& g : masa->generators) s.members.push_back(gen(g));
    } else {
        for (const auto& step : chart.action)
            if (chart.params.at(step.param).ignorable) s.members.push_back(gen(step.generator));
    }
    return s;
}

OpSetReport verify_opset(const OpSet& s, std::size_t expected_size) {
    OpSetReport rep;
    rep.chart_id = s.chart_id;
    rep.expected_size = expected_size;
    bool all_zero = true;
    for (std::size_t i = 0; i < s.members.size(); ++i)
        for (std::size_t j = i + 1; j < s.members.size(); ++j) {
            auto c = op_commutator(s.members[i].op, s.members[j].op);
            PairCheck p{s.members[i].label, s.members[j].label, c.is_zero(), c.is_zero() ? "" : c.str()};
            all_zero = all_zero && p.zero;
            rep.pairs.push_back(std::move(p));
        }

    // linear independence over constants
    std::map<std::pair<MultiIndex, MultiIndex>, std::size_t> keys;
    for (const auto& m : s.members)
        for (const auto& [a, p] : m.op.terms())
            for (const auto& [e, c] : p.terms()) keys.emplace(std::make_pair(a, e), keys.size());
    QMatrix coeffs(s.members.size(), keys.size());
    for (std::size_t i = 0; i < s.members.size(); ++i)
        for (const auto& [a, p] : s.members[i].op.terms())
            for (const auto& [e, c] : p.terms()) coeffs(i, keys.at({a, e})) = c;
    rep.independent = rank(coeffs) == s.members.size();

    std::vector<DiffOperator> gens;
    for (const auto& m : s.members)
        if (m.role == "generator") gens.push_back(m.op);
    if (gens.size() >= 2)
        rep.rank_checks.push_back({"generator first-order parts", generic_rank(first_order_rows(gens)), gens.size()});

    rep.pass = all_zero && rep.independent && (expected_size == 0 || s.members.size() == expected_size);
    return rep;
}

nlohmann::json to_json(const OpSetReport& r) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : r.pairs) {
        nlohmann::json j = {{"labels", {p.a, p.b}}, {"commutator_is_zero", p.zero}};
        if (!p.zero) j["commutator"] = p.commutator;
        pairs.push_back(j);
    }
    nlohmann::json ranks = nlohmann::json::array();
    for (const auto& c : r.rank_checks)
        ranks.push_back({{"label", c.label}, {"generic_rank", c.generic_rank}, {"operators", c.operators}});
    return {{"chart_id", r.chart_id}, {"pairs", pairs},       {"independent", r.independent},
            {"rank_checks", ranks},   {"pass", r.pass}};
}

nlohmann::json to_json(const OpSet& s) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& m : s.members) members.push_back({{"label", m.label}, {"role", m.role}, {"operator", m.op.str()}});
    nlohmann::json j = {{"chart_id", s.chart_id}, {"members", members}};
    if (!s.subalgebra.empty()) j["subalgebra"] = s.subalgebra;
    return j;
}

}  // namespace sepcoords
