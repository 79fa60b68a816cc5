#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sepcoords/charts.hpp"

namespace sepcoords {

// A scalar field on chart parameters, evaluated on jets.
using ScalarField = std::function<Jet2(std::span<const Jet2>)>;
using Coefficient = std::function<cd(std::span<const cd>)>;

// Seeds the active variables as jet slots; the others enter as constants.
Jet2 jet_eval(const ScalarField& f, std::span<const cd> point, const std::vector<bool>& active = {});

struct LaplacianTerm {
    // First-order terms have j == npos.
    std::size_t i = 0, j = npos;
    Coefficient coeff;
    std::string text;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    bool second_order() const { return j != npos; }
};

struct LaplacianTable {
    std::string id;
    std::string chart_id;
    std::string paper_eq;
    bool printed = true;
    std::optional<std::string> corrects;  // id of the printed table a correction replaces
    std::vector<LaplacianTerm> terms;
    std::vector<std::string> notes;
};

// Table attached to the chart's laplacian_id, built for the chart's parameter order and family constants.
std::optional<LaplacianTable> laplacian_table(const Chart& chart);
// Corrected variant for a printed table that fails verification, if one is recorded.
std::optional<LaplacianTable> corrected_table(const Chart& chart);
// Ids of the printed operator tables and of the tables derived here for charts without a printed one.
const std::vector<std::string>& printed_table_ids();
const std::vector<std::string>& derived_table_ids();
// A chart carrying each table id.
std::string representative_chart(const std::string& table_id);

// Box f from the induced metric, without sqrt(g):
//   g^{ik} f_ik + (d_i g^{ik}) f_k + 1/2 g^{ik} tr(g^{-1} d_i g) f_k.
cd laplace_beltrami_apply(const Chart& chart, const ScalarField& f, std::span<const cd> params);
// H = -1/2 Box.
cd hamiltonian_apply(const Chart& chart, const ScalarField& f, std::span<const cd> params);
cd closed_form_apply(const LaplacianTable& table, const ScalarField& f, std::span<const cd> params);

// Polynomial of degree <= 3 in the chart parameters times exp of a linear form;
// integer coefficients in [-2, 2].
struct TestFunction {
    std::size_t dim = 0;
    std::vector<std::pair<std::vector<int>, double>> monomials;
    std::vector<double> linear;

    static TestFunction random(std::size_t dim, SplitMix64& rng);
    Jet2 operator()(std::span<const Jet2> u) const;
    ScalarField field() const;
};

struct TermDiscrepancy {
    std::string term;      // "d_c" or "d_a d_b"
    cd metric_value{0.0};  // coefficient measured from the metric
    cd table_value{0.0};   // coefficient read from the table
    std::vector<cd> at;    // sample where it was measured
};

struct LaplacianReport {
    std::string chart_id;
    std::string table_id;
    std::string paper_eq;
    bool printed = true;
    std::size_t samples = 0;
    std::size_t functions = 0;
    double max_rel_residual = 0;
    bool pass = false;
    std::vector<TermDiscrepancy> discrepancies;
};

LaplacianReport verify_laplacian(const Chart& chart, const LaplacianTable& table, std::size_t n_samples,
                                 std::size_t n_functions, SplitMix64& rng, double tol = 1e-8);
LaplacianReport verify_laplacian(const Chart& chart, std::size_t n_samples, std::size_t n_functions, SplitMix64& rng,
                                 double tol = 1e-8);

nlohmann::json to_json(const LaplacianReport& r);

}  // namespace sepcoords
