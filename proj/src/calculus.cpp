#include "sepcoords/calculus.hpp"

#include <cmath>

namespace sepcoords {

Jet2 jet_eval(const ScalarField& f, std::span<const cd> point, const std::vector<bool>& active) {
    std::vector<Jet2> u;
    u.reserve(point.size());
    std::size_t slot = 0;
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (active.empty() || (i < active.size() && active[i])) {
            u.push_back(Jet2::variable(point[i], slot++));
        } else {
            u.emplace_back(point[i]);
        }
    }
    return f(u);
}

namespace {

std::vector<Jet2> seeded(std::span<const cd> params) {
    std::vector<Jet2> u;
    u.reserve(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) u.push_back(Jet2::variable(params[i], i));
    return u;
}

std::string term_name(const Chart& chart, std::size_t i, std::size_t j) {
    std::string s = "d_" + chart.params.at(i).name;
    if (j != LaplacianTerm::npos) s += " d_" + chart.params.at(j).name;
    return s;
}

}  // namespace

cd laplace_beltrami_apply(const Chart& chart, const ScalarField& f, std::span<const cd> params) {
    const std::size_t n = chart.dim();
    CMatrix g = induced_metric(chart, params);  // throws on coordinate singularity
    CMatrix ginv = inverse(g);
    auto x = closed_form_jets(chart, params);
    const CMatrix k = to_complex(chart.metric.entries);
    const std::size_t m = x.size();
    CMatrix jac(m, n);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t i = 0; i < n; ++i) jac(a, i) = x[a].g[i];
    const CMatrix kj = k * jac;

    Jet2 fj = f(seeded(params));
    cd box = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) box += ginv(i, l) * fj.h[i][l];

    // first-order coefficient b_l = sum_i d_i g^{il} + 1/2 sum_i g^{il} tr(g^{-1} d_i g)
    std::vector<cd> b(n, cd(0.0));
    for (std::size_t i = 0; i < n; ++i) {
        CMatrix dj(m, n);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t l = 0; l < n; ++l) dj(a, l) = x[a].h[l][i];
        CMatrix dg = dj.transpose() * kj;
        dg += jac.transpose() * (k * dj);
        CMatrix gdg = ginv * dg;
        cd tr = 0;
        for (std::size_t l = 0; l < n; ++l) tr += gdg(l, l);
        CMatrix dginv = -(gdg * ginv);
        for (std::size_t l = 0; l < n; ++l) b[l] += dginv(i, l) + 0.5 * ginv(i, l) * tr;
    }
    for (std::size_t l = 0; l < n; ++l) box += b[l] * fj.g[l];
    return box;
}

cd hamiltonian_apply(const Chart& chart, const ScalarField& f, std::span<const cd> params) {
    return -0.5 * laplace_beltrami_apply(chart, f, params);
}

cd closed_form_apply(const LaplacianTable& table, const ScalarField& f, std::span<const cd> params) {
    Jet2 fj = f(seeded(params));
    cd s = 0;
    for (const auto& t : table.terms) {
        cd d = t.second_order() ? fj.h[t.i][t.j] : fj.g[t.i];
        if (d == cd(0.0)) continue;
        s += t.coeff(params) * d;
    }
    return s;
}

TestFunction TestFunction::random(std::size_t dim, SplitMix64& rng) {
    TestFunction t;
    t.dim = dim;
    // All exponent vectors of total degree <= 3.
    std::vector<int> e(dim, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
        if (pos == dim) {
            long c = rng.integer(-2, 2);
            if (c != 0) t.monomials.push_back({e, double(c)});
            return;
        }
        for (int p = 0; p <= left; ++p) {
            e[pos] = p;
            rec(pos + 1, left - p);
        }
        e[pos] = 0;
    };
    rec(0, 3);
    if (t.monomials.empty()) t.monomials.push_back({std::vector<int>(dim, 0), 1.0});
    for (std::size_t i = 0; i < dim; ++i) t.linear.push_back(0.25 * double(rng.integer(-2, 2)));
    return t;
}

Jet2 TestFunction::operator()(std::span<const Jet2> u) const {
    Jet2 p(0.0);
    for (const auto& [e, c] : monomials) {
        Jet2 m(c);
        for (std::size_t i = 0; i < dim; ++i)
            for (int k = 0; k < e[i]; ++k) m *= u[i];
        p += m;
    }
    Jet2 l(0.0);
    for (std::size_t i = 0; i < dim; ++i) l += u[i] * linear[i];
    return p * exp(l);
}

ScalarField TestFunction::field() const {
    return [self = *this](std::span<const Jet2> u) { return self(u); };
}

namespace {

// Operator coefficients read off by probing with (u_i - p_i) and products.
std::vector<TermDiscrepancy> localize(const Chart& chart, const LaplacianTable& table, std::span<const cd> p,
                                      double tol) {
    const std::size_t n = chart.dim();
    std::vector<cd> at(p.begin(), p.end());
    std::vector<TermDiscrepancy> out;
    auto probe = [&](std::size_t i, std::size_t j) -> ScalarField {
        return [i, j, at](std::span<const Jet2> u) {
            Jet2 a = u[i] - at[i];
            if (j == LaplacianTerm::npos) return a;
            return a * (u[j] - at[j]);
        };
    };
    auto compare = [&](std::size_t i, std::size_t j, double factor) {
        auto f = probe(i, j);
        cd lb = factor * laplace_beltrami_apply(chart, f, p);
        cd tb = factor * closed_form_apply(table, f, p);
        if (std::abs(lb - tb) > tol * (1.0 + std::abs(tb))) out.push_back({term_name(chart, i, j), lb, tb, at});
    };
    for (std::size_t i = 0; i < n; ++i) compare(i, LaplacianTerm::npos, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) compare(i, j, i == j ? 0.5 : 1.0);
    return out;
}

}  // namespace

LaplacianReport verify_laplacian(const Chart& chart, const LaplacianTable& table, std::size_t n_samples,
                                 std::size_t n_functions, SplitMix64& rng, double tol) {
    LaplacianReport rep;
    rep.chart_id = chart.id;
    rep.table_id = table.id;
    rep.paper_eq = table.paper_eq;
    rep.printed = table.printed;
    rep.functions = n_functions;
    std::vector<TestFunction> fns;
    for (std::size_t k = 0; k < n_functions; ++k) fns.push_back(TestFunction::random(chart.dim(), rng));
    std::vector<cd> worst_at;
    for (std::size_t s = 0; s < n_samples; ++s) {
        auto u = sample_domain(chart, rng);
        for (const auto& fn : fns) {
            auto f = fn.field();
            cd lb = laplace_beltrami_apply(chart, f, u);
            cd tb = closed_form_apply(table, f, u);
            double rel = std::abs(lb - tb) / (1.0 + std::abs(tb));
            if (!(rel <= rep.max_rel_residual)) {
                rep.max_rel_residual = std::isnan(rel) ? INFINITY : rel;
                worst_at = u;
            }
        }
        ++rep.samples;
    }
    rep.pass = rep.samples == n_samples && rep.max_rel_residual <= tol;
    if (!rep.pass && !worst_at.empty()) rep.discrepancies = localize(chart, table, worst_at, tol);
    return rep;
}

LaplacianReport verify_laplacian(const Chart& chart, std::size_t n_samples, std::size_t n_functions, SplitMix64& rng,
                                 double tol) {
    auto t = laplacian_table(chart);
    if (!t) throw std::invalid_argument(chart.id + ": no Laplacian table");
    return verify_laplacian(chart, *t, n_samples, n_functions, rng, tol);
}

namespace {

nlohmann::json cjson(cd z) {
    if (z.imag() == 0) return z.real();
    return nlohmann::json::array({z.real(), z.imag()});
}

}  // namespace

nlohmann::json to_json(const LaplacianReport& r) {
    nlohmann::json d = nlohmann::json::array();
    for (const auto& t : r.discrepancies) {
        nlohmann::json at = nlohmann::json::array();
        for (auto z : t.at) at.push_back(cjson(z));
        d.push_back({{"term", t.term}, {"metric", cjson(t.metric_value)}, {"table", cjson(t.table_value)},
                     {"discrepancy", cjson(t.metric_value - t.table_value)}, {"at", at}});
    }
    return {{"chart_id", r.chart_id},
            {"table_id", r.table_id},
            {"paper_eq", r.paper_eq},
            {"printed", r.printed},
            {"samples", r.samples},
            {"functions", r.functions},
            {"max_rel_residual", r.max_rel_residual},
            {"pass", r.pass},
            {"discrepancies", d}};
}

}  // namespace sepcoords
