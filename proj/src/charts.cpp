#include "sepcoords/charts.hpp"

#include <cmath>

namespace sepcoords {

std::string to_string(ChartKind k) {
    switch (k) {
        case ChartKind::Masa: return "masa";
        case ChartKind::Nonmaximal: return "nonmaximal";
        case ChartKind::Decomposable: return "decomposable";
        case ChartKind::Stub: return "stub";
    }
    return "?";
}

std::string to_string(GroupKind k) {
    switch (k) {
        case GroupKind::Euclidean: return "euclidean";
        case GroupKind::Orthogonal: return "orthogonal";
        case GroupKind::PseudoOrthogonal: return "pseudo-orthogonal";
        case GroupKind::Masa: return "masa";
        case GroupKind::Unipotent: return "unipotent";
    }
    return "?";
}

ActionStep make_step(AlgebraElement generator, std::size_t param, cd scale) {
    ActionStep s;
    s.plan = std::make_shared<const ExpPlan>(generator);
    s.generator = std::move(generator);
    s.param = param;
    s.scale = scale;
    return s;
}

std::size_t Chart::ignorable_count() const {
    std::size_t n = 0;
    for (const auto& p : params) n += p.ignorable;
    return n;
}

std::optional<std::size_t> Chart::param_index(const std::string& name) const {
    for (std::size_t i = 0; i < params.size(); ++i)
        if (params[i].name == name) return i;
    return std::nullopt;
}

namespace {

void check_arity(const Chart& chart, std::span<const cd> u) {
    if (chart.kind == ChartKind::Stub) throw DomainError(chart.id + ": chart details are out of scope");
    if (u.size() != chart.dim())
        throw std::invalid_argument(chart.id + ": expected " + std::to_string(chart.dim()) + " parameters");
}

void check_domain(const Chart& chart, std::span<const cd> u) {
    check_arity(chart, u);
    if (auto v = domain_violation(chart, u)) throw DomainError(chart.id + ": " + *v);
}

CMatrix metric_matrix(const Chart& chart) { return to_complex(chart.metric.entries); }

}  // namespace

std::optional<std::string> domain_violation(const Chart& chart, std::span<const cd> params) {
    for (std::size_t i = 0; i < params.size() && i < chart.params.size(); ++i) {
        const auto& p = chart.params[i];
        if (!std::isfinite(params[i].real()) || !std::isfinite(params[i].imag()))
            return p.name + " is not finite";
        if (!p.domain.real) continue;
        if (std::abs(params[i].imag()) > 1e-12 * (1.0 + std::abs(params[i]))) return p.name + " must be real";
        const double x = params[i].real();
        if (x < p.domain.min || x > p.domain.max) return p.name + " outside " + p.domain.stated;
    }
    return std::nullopt;
}

std::optional<std::string> singular_violation(const Chart& chart, std::span<const cd> params) {
    if (chart.regular) return chart.regular(params);
    return std::nullopt;
}

std::vector<Jet2> closed_form_jets(const Chart& chart, std::span<const cd> params) {
    check_domain(chart, params);
    if (chart.dim() > Jet2::N) throw std::invalid_argument("too many chart parameters for Jet2");
    std::vector<Jet2> u;
    u.reserve(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) u.push_back(Jet2::variable(params[i], i));
    return chart.closed_form(u);
}

std::vector<cd> eval_closed_form(const Chart& chart, std::span<const cd> params) {
    check_domain(chart, params);
    std::vector<Jet2> u(params.begin(), params.end());
    auto x = chart.closed_form(u);
    std::vector<cd> out;
    out.reserve(x.size());
    for (const auto& j : x) out.push_back(j.v);
    return out;
}

std::vector<cd> eval_group_action(const Chart& chart, std::span<const cd> params) {
    check_domain(chart, params);
    if (!chart.has_action()) throw std::logic_error(chart.id + ": no group action recorded");
    const std::size_t n = chart.ambient_dim();
    std::vector<cd> v(n + 1, cd(0.0));
    v[n] = 1.0;
    for (auto it = chart.action.rbegin(); it != chart.action.rend(); ++it) {
        CMatrix e = (*it->plan)(it->scale * params[it->param]);
        v = e.apply(v);
    }
    v.pop_back();
    return v;
}

CMatrix jacobian(const Chart& chart, std::span<const cd> params) {
    auto x = closed_form_jets(chart, params);
    CMatrix j(x.size(), chart.dim());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t k = 0; k < chart.dim(); ++k) j(i, k) = x[i].g[k];
    return j;
}

CMatrix induced_metric(const Chart& chart, std::span<const cd> params) {
    CMatrix j = jacobian(chart, params);
    double scale = 1.0;
    for (std::size_t k = 0; k < j.cols(); ++k) {
        double col = 0;
        for (std::size_t i = 0; i < j.rows(); ++i) col += std::norm(j(i, k));
        scale *= std::sqrt(col);
    }
    if (std::abs(determinant(j)) <= 1e-10 * scale) throw DomainError(chart.id + ": coordinate singularity");
    return j.transpose() * metric_matrix(chart) * j;
}

cd norm_invariant(const Chart& chart, std::span<const cd> params) {
    auto x = eval_closed_form(chart, params);
    auto kx = metric_matrix(chart).apply(x);
    cd s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * kx[i];
    return s;
}

std::vector<cd> sample_domain(const Chart& chart, SplitMix64& rng) {
    if (chart.kind == ChartKind::Stub) throw DomainError(chart.id + ": chart details are out of scope");
    std::vector<cd> u(chart.dim());
    for (int attempt = 0; attempt < 10000; ++attempt) {
        for (std::size_t i = 0; i < u.size(); ++i) {
            const auto& d = chart.params[i].domain;
            u[i] = d.real ? cd(rng.uniform(d.lo, d.hi)) : rng.annulus(d.lo, d.hi);
        }
        if (!domain_violation(chart, u) && !singular_violation(chart, u)) return u;
    }
    throw DomainError(chart.id + ": no admissible sample found");
}

RealityReport reality_check(const Chart& chart, std::size_t n_samples, SplitMix64& rng) {
    RealityReport rep;
    rep.chart_id = chart.id;
    if (!is_real_form(chart.space) || chart.kind == ChartKind::Stub) return rep;
    for (std::size_t s = 0; s < n_samples; ++s) {
        auto u = sample_domain(chart, rng);
        auto x = eval_closed_form(chart, u);
        double size = 1.0;
        for (auto c : x) size = std::max(size, std::abs(c));
        double imag = 0;
        for (auto c : x) imag = std::max(imag, std::abs(c.imag()) / size);
        rep.max_imag = std::max(rep.max_imag, imag);
        bool ok = imag <= 1e-12;
        if (chart.norm_constant && chart.radius_param) {
            double r = u[*chart.radius_param].real();
            cd nv = norm_invariant(chart, u);
            double want = *chart.norm_constant * r * r;
            double err = std::abs(nv - want) / std::max(1.0, std::abs(want));
            rep.max_norm_error = std::max(rep.max_norm_error, err);
            ok = ok && err <= 1e-12 && (want == 0 || std::signbit(nv.real()) == std::signbit(want));
        }
        ++rep.samples;
        rep.failures += !ok;
    }
    rep.pass = rep.samples == n_samples && rep.failures == 0;
    return rep;
}

DualPathReport dual_path_check(const Chart& chart, std::size_t n_samples, SplitMix64& rng, double tol) {
    DualPathReport rep;
    rep.chart_id = chart.id;
    rep.tol = tol;
    if (chart.kind == ChartKind::Stub) return rep;
    for (std::size_t s = 0; s < n_samples; ++s) {
        auto u = sample_domain(chart, rng);
        auto a = eval_group_action(chart, u), b = eval_closed_form(chart, u);
        double d = 0, nb = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            d += std::norm(a[i] - b[i]);
            nb += std::norm(b[i]);
        }
        double e = std::sqrt(d) / (1.0 + std::sqrt(nb));
        if (!(e <= rep.max_rel_error)) rep.max_rel_error = std::isnan(e) ? INFINITY : e;
        ++rep.samples;
    }
    rep.pass = rep.samples == n_samples && rep.max_rel_error <= tol;
    return rep;
}

IgnorabilityReport ignorability_check(const Chart& chart, std::size_t n_samples, SplitMix64& rng, double tol) {
    IgnorabilityReport rep;
    rep.chart_id = chart.id;
    rep.tol = tol;
    if (chart.kind == ChartKind::Stub) return rep;
    for (std::size_t p = 0; p < chart.dim(); ++p) {
        if (!chart.params[p].ignorable) continue;
        rep.params.push_back(chart.params[p].name);
        for (std::size_t s = 0; s < n_samples; ++s) {
            auto u = sample_domain(chart, rng);
            auto v = u;
            v[p] += chart.params[p].domain.real ? cd(0.05) : cd(0.05, -0.03);
            if (domain_violation(chart, v)) v[p] -= 0.1;
            auto g1 = induced_metric(chart, u), g2 = induced_metric(chart, v);
            double e = max_abs(g1 - g2) / max_abs(g1);
            if (!(e <= rep.max_rel_change)) rep.max_rel_change = std::isnan(e) ? INFINITY : e;
            ++rep.samples;
        }
    }
    rep.pass = rep.max_rel_change <= tol;
    return rep;
}

std::size_t orbit_rank(const Masa& m, const std::vector<Qi>& point) {
    const std::size_t n = m.metric.dim();
    if (point.size() != n) throw std::invalid_argument("orbit_rank: point dimension mismatch");
    QMatrix fields(n, m.dim());
    for (std::size_t j = 0; j < m.dim(); ++j) {
        const auto& x = m.generators[j].matrix();
        for (std::size_t i = 0; i < n; ++i) {
            Qi s = x(i, n);
            for (std::size_t k = 0; k < n; ++k) s += x(i, k) * point[k];
            fields(i, j) = s;
        }
    }
    return rank(fields);
}

nlohmann::json to_json(const Chart& c) {
    nlohmann::json params = nlohmann::json::array();
    for (const auto& p : c.params)
        params.push_back({{"name", p.name},
                          {"ignorable", p.ignorable},
                          {"domain", p.domain.stated.empty() ? (p.domain.real ? "real" : "complex") : p.domain.stated}});
    nlohmann::json chain = nlohmann::json::array();
    for (const auto& node : c.chain) chain.push_back(node.label);
    nlohmann::json action = nlohmann::json::array();
    for (const auto& s : c.action) {
        nlohmann::json step = {{"generator", s.generator.label()}, {"param", c.params.at(s.param).name}};
        if (s.scale != cd(1.0)) step["scale"] = s.scale.real();
        action.push_back(step);
    }
    nlohmann::json j = {{"id", c.id},
                        {"name", c.name},
                        {"space", to_string(c.space)},
                        {"kind", to_string(c.kind)},
                        {"metric", to_json(c.metric)},
                        {"figure_ref", c.figure_ref},
                        {"chain", chain},
                        {"params", params},
                        {"action", action},
                        {"closed_form", c.closed_form_text},
                        {"laplacian_id", c.laplacian_id},
                        {"paper_eq", c.paper_eq},
                        {"masa_id", c.masa_id},
                        {"ignorable", c.ignorable_count()},
                        {"notes", c.notes}};
    if (!c.family.empty()) {
        nlohmann::json fam;
        for (const auto& [k, v] : c.family) fam[k] = v.imag() == 0 ? nlohmann::json(v.real()) : nlohmann::json({v.real(), v.imag()});
        j["family"] = fam;
    }
    if (c.norm_constant) j["norm_constant"] = *c.norm_constant;
    return j;
}

nlohmann::json to_json(const RealityReport& r) {
    return {{"chart_id", r.chart_id}, {"samples", r.samples},   {"max_imag", r.max_imag},
            {"max_norm_error", r.max_norm_error}, {"failures", r.failures}, {"pass", r.pass}};
}

nlohmann::json to_json(const DualPathReport& r) {
    return {{"chart_id", r.chart_id}, {"samples", r.samples}, {"max_rel_error", r.max_rel_error},
            {"tol", r.tol},           {"pass", r.pass}};
}

nlohmann::json to_json(const IgnorabilityReport& r) {
    return {{"chart_id", r.chart_id}, {"samples", r.samples}, {"params", r.params},
            {"max_rel_change", r.max_rel_change}, {"tol", r.tol}, {"pass", r.pass}};
}

}  // namespace sepcoords
