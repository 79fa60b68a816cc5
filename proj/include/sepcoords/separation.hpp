#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sepcoords/calculus.hpp"
#include "sepcoords/specfun.hpp"

namespace sepcoords {

struct SeparationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using Constants = std::map<std::string, cd>;
using Factor1D = std::function<Jet2(const Jet2&)>;

// Linear ODE c2 f'' + c1 f' + c0 f = 0 in one variable.
struct FactorOde {
    std::string text;
    std::function<std::array<cd, 3>(cd)> coeffs;
};

struct Factor {
    std::string variable;
    std::size_t param = 0;
    std::string form;
    bool ignorable = false;
    Factor1D f;
    // Samples the variable inside the regime of the series used by f.
    std::function<cd(SplitMix64&)> sample;
    FactorOde ode;  // the separated equation implied by the chart's operator
};

// A printed formula that is checked against a printed or derived equation and
// disagrees with it. Recorded, never used to decide pass.
struct PrintedForm {
    std::string label;
    std::string variable;
    std::string form;
    Factor1D f;
    FactorOde ode;
    std::function<cd(SplitMix64&)> sample;
};

// Separation constant measured from the chart's metric: scale(u) * Box(F)/F
// for the product F of the factors in `variables`, compared with `expected`.
struct ConstantRelation {
    std::string name;
    std::vector<std::string> variables;
    std::function<cd(std::span<const cd>)> scale;
    cd expected{0.0};
};

struct SeparatedSolution {
    std::string chart_id;
    std::string recipe_eq;
    std::string ansatz_form;
    Constants constants;
    cd energy{0.0};
    std::vector<Factor> factors;  // one per chart parameter, in parameter order
    std::vector<PrintedForm> printed_forms;
    std::vector<ConstantRelation> relations;
    std::optional<cd> lambda;  // angular eigenvalue when the radius is a Bessel factor
    bool elementary = false;   // expected to evaluate without special functions
    bool first_order_radial = false;

    Jet2 evaluate(std::span<const Jet2> u) const;
    ScalarField field() const;
};

// The twelve charts with a separated-solution recipe.
const std::vector<std::string>& recipe_charts();

// Throws SeparationError for missing or inconsistent constants and for a
// factor outside the supported special-function regime.
SeparatedSolution build_solution(const std::string& chart_id, const Constants& constants);
// |const| in [0.3, 1.5] with random phase, filtered by the factor regimes.
Constants random_constants(const std::string& chart_id, SplitMix64& rng);

struct IndexRoot {
    cd nu{0.0};
    double ode_residual = 0;
};

struct RadialIndex {
    cd lambda{0.0};
    std::array<cd, 3> indicial{};  // q(nu) = q0 + q1 nu + q2 nu^2
    std::vector<IndexRoot> oracle;
    cd printed{0.0};  // -5 - lambda
    double printed_residual = 0;
    bool printed_agrees = false;
};

// Indices nu for which r^-1 J_nu(sqrt(-E) r) solves R'' + 3/r R' + (lambda/r^2 - E) R = 0:
// the indicial polynomial is measured by applying the Euler part of the equation
// to r^(nu-1), and each root is confirmed on the full equation.
RadialIndex radial_index_oracle(cd lambda, SplitMix64* rng = nullptr);

// Max over samples of |c2 f'' + c1 f' + c0 f| / max term.
double ode_residual(const Factor1D& f, const FactorOde& ode, const std::function<cd(SplitMix64&)>& sample,
                    std::size_t n_samples, SplitMix64& rng);
double ode_residual(const SeparatedSolution& sol, std::size_t factor_index, std::size_t n_samples, SplitMix64& rng);

struct OdeCheck {
    std::string variable;
    std::string equation;
    double max_residual = 0;
};

struct RelationCheck {
    std::string name;
    cd expected{0.0};
    cd measured{0.0};  // worst sample
    double max_rel_error = 0;
    bool pass = false;
};

struct ResidualReport {
    std::string chart_id;
    std::string recipe_eq;
    Constants constants;
    std::vector<OdeCheck> ode_residuals;
    double pde_residual = 0;
    std::size_t samples = 0;
    std::vector<OdeCheck> printed_form_checks;
    std::vector<RelationCheck> relations;
    std::optional<RadialIndex> printed_vs_oracle_index;
    bool elementary_expected = false;
    std::size_t specfun_calls = 0;
    std::optional<bool> radial_first_order;
    double tol = 1e-6;
    bool pass = false;
};

ResidualReport pde_residual(const SeparatedSolution& sol, std::size_t n_samples, SplitMix64& rng, double tol = 1e-6);

nlohmann::json to_json(const RadialIndex& r);
nlohmann::json to_json(const ResidualReport& r);

}  // namespace sepcoords
