#pragma once

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sepcoords/algebra.hpp"
#include "sepcoords/jet.hpp"
#include "sepcoords/rng.hpp"

namespace sepcoords {

using PointMap = std::function<std::vector<Jet2>(std::span<const Jet2>)>;
// Returns the violated constraint, or nullopt when the point passes.
using Admissibility = std::function<std::optional<std::string>(std::span<const cd>)>;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct ParamDomain {
    bool real = false;
    // Complex parameters: annulus radii. Real parameters: sampling interval
    // inside the stated range.
    double lo = 0.3, hi = 2.0;
    std::string stated;  // e.g. "0 <= c <= pi/2" or "complex"
    // Hard bounds read off the stated range (real parameters only).
    double min = -std::numeric_limits<double>::infinity();
    double max = std::numeric_limits<double>::infinity();
};

struct ParamSpec {
    std::string name;
    bool ignorable = false;
    ParamDomain domain;
};

struct ActionStep {
    AlgebraElement generator;
    std::size_t param = 0;
    cd scale{1.0};
    std::shared_ptr<const ExpPlan> plan;  // built once from generator
};

ActionStep make_step(AlgebraElement generator, std::size_t param, cd scale = 1.0);

enum class ChartKind { Masa, Nonmaximal, Decomposable, Stub };
std::string to_string(ChartKind k);

enum class GroupKind { Euclidean, Orthogonal, PseudoOrthogonal, Masa, Unipotent };
std::string to_string(GroupKind k);

struct ChainNode {
    std::string label;
    GroupKind kind = GroupKind::Euclidean;
    // "semicircle" for O(n-1,1), empty otherwise.
    std::string real_form;
};

struct Chart {
    std::string id;
    std::string name;
    SpaceId space = SpaceId::M4C;
    MetricForm metric;
    ChartKind kind = ChartKind::Masa;
    std::vector<ParamSpec> params;
    std::vector<ActionStep> action;  // applied to the origin right to left
    std::vector<std::string> closed_form_text;
    PointMap closed_form;
    // Singular-locus margin: sampling and metric work stay this far from
    // r = 0, sin c = 0 and the like. Plain evaluation ignores it.
    Admissibility regular;
    std::string laplacian_id;
    std::string figure_ref;
    std::vector<ChainNode> chain;
    std::string paper_eq;
    std::string masa_id;
    std::vector<std::string> notes;
    // <x, K x> = norm_constant * r^2 on the orbit, for sphere/hyperboloid charts.
    std::optional<double> norm_constant;
    std::optional<std::size_t> radius_param;
    // Family constants such as beta or kappa, keyed by name.
    std::map<std::string, cd> family;

    std::size_t dim() const { return params.size(); }
    std::size_t ambient_dim() const { return metric.dim(); }
    std::size_t ignorable_count() const;
    std::optional<std::size_t> param_index(const std::string& name) const;
    bool has_action() const { return !action.empty(); }
};

// MASA and nonmaximal charts of a space (stubs included for M31).
std::vector<Chart> chart_catalog(SpaceId space);
// Cartesian, polar and hyperbolic-polar factors plus the flat chart left by M47.
std::vector<Chart> decomposable_charts();
std::vector<Chart> all_charts();
std::optional<Chart> find_chart(const std::string& id);
const Chart& chart_ref(const std::string& id);

Chart make_chart_m44(const Qi& beta, SpaceId space = SpaceId::M4C);
Chart make_chart_m45(const Qi& kappa, SpaceId space = SpaceId::M4C);

std::vector<cd> eval_closed_form(const Chart& chart, std::span<const cd> params);
std::vector<cd> eval_group_action(const Chart& chart, std::span<const cd> params);
std::vector<Jet2> closed_form_jets(const Chart& chart, std::span<const cd> params);
CMatrix jacobian(const Chart& chart, std::span<const cd> params);
CMatrix induced_metric(const Chart& chart, std::span<const cd> params);
cd norm_invariant(const Chart& chart, std::span<const cd> params);
// Hard domain: finiteness, reality for real charts, stated ranges.
std::optional<std::string> domain_violation(const Chart& chart, std::span<const cd> params);
std::optional<std::string> singular_violation(const Chart& chart, std::span<const cd> params);

// Random admissible point with the singular-locus margin applied.
std::vector<cd> sample_domain(const Chart& chart, SplitMix64& rng);

struct RealityReport {
    std::string chart_id;
    std::size_t samples = 0;
    double max_imag = 0;
    double max_norm_error = 0;
    std::size_t failures = 0;
    bool pass = false;
};
RealityReport reality_check(const Chart& chart, std::size_t n_samples, SplitMix64& rng);

struct DualPathReport {
    std::string chart_id;
    std::size_t samples = 0;
    double max_rel_error = 0;  // |action - closed form| / (1 + |closed form|)
    double tol = 1e-11;
    bool pass = false;
};
DualPathReport dual_path_check(const Chart& chart, std::size_t n_samples, SplitMix64& rng, double tol = 1e-11);

// Shifts each ignorable parameter and compares the induced metrics.
struct IgnorabilityReport {
    std::string chart_id;
    std::size_t samples = 0;
    std::vector<std::string> params;
    double max_rel_change = 0;
    double tol = 1e-10;
    bool pass = false;
};
IgnorabilityReport ignorability_check(const Chart& chart, std::size_t n_samples, SplitMix64& rng, double tol = 1e-10);

// Exact rank of the generator vector fields X x + alpha at a rational point.
std::size_t orbit_rank(const Masa& m, const std::vector<Qi>& point);

nlohmann::json to_json(const Chart& c);
nlohmann::json to_json(const RealityReport& r);
nlohmann::json to_json(const DualPathReport& r);
nlohmann::json to_json(const IgnorabilityReport& r);

}  // namespace sepcoords
