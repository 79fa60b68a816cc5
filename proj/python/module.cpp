// Python bindings. Reports cross the boundary as dicts built from the JSON contract.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sepcoords/calculus.hpp"
#include "sepcoords/charts.hpp"
#include "sepcoords/opsets.hpp"
#include "sepcoords/separation.hpp"
#include "sepcoords/specfun.hpp"

namespace py = pybind11;
using namespace sepcoords;

namespace {

py::object to_py(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

const Chart& chart_or_raise(const std::string& id) {
    if (!find_chart(id)) throw py::key_error("unknown chart id: " + id);
    return chart_ref(id);
}

SpaceId space_or_raise(const std::string& s) {
    auto sp = parse_space(s);
    if (!sp) throw py::value_error("unknown space: " + s);
    return *sp;
}

std::vector<std::string> chart_ids(const std::optional<std::string>& space) {
    std::vector<std::string> out;
    for (const auto& c : space ? chart_catalog(space_or_raise(*space)) : all_charts()) out.push_back(c.id);
    return out;
}

py::object chart_info(const std::string& id) {
    const Chart& c = chart_or_raise(id);
    auto j = to_json(c);
    if (auto m = find_masa(c.masa_id)) j["masa"] = to_json(*m);
    return to_py(j);
}

std::vector<std::vector<cd>> metric_rows(const std::string& id, const std::vector<cd>& u) {
    CMatrix g = induced_metric(chart_or_raise(id), u);
    std::vector<std::vector<cd>> rows(g.rows(), std::vector<cd>(g.cols()));
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t k = 0; k < g.cols(); ++k) rows[i][k] = g(i, k);
    return rows;
}

py::object laplacian(const std::string& id, std::size_t samples, std::size_t functions, std::uint64_t seed,
                     bool corrected) {
    const Chart& c = chart_or_raise(id);
    auto t = corrected ? corrected_table(c) : laplacian_table(c);
    if (!t) throw py::value_error(std::string("no ") + (corrected ? "corrected " : "") + "table for " + id);
    SplitMix64 rng(seed);
    return to_py(to_json(verify_laplacian(c, *t, samples, functions, rng)));
}

py::object opset(const std::string& id) {
    const Chart& c = chart_or_raise(id);
    auto s = opset_for_chart(c);
    if (!s) throw py::value_error("no commuting set for " + id);
    auto j = to_json(verify_opset(*s, c.ambient_dim()));
    j["members"] = to_json(*s)["members"];
    return to_py(j);
}

py::object solve(const std::string& id, const std::optional<Constants>& constants, std::size_t samples,
                 std::uint64_t seed, double tol) {
    SplitMix64 rng(seed);
    Constants c = constants ? *constants : random_constants(id, rng);
    auto sol = build_solution(id, c);
    return to_py(to_json(pde_residual(sol, samples, rng, tol)));
}

}  // namespace

PYBIND11_MODULE(sepcoords, m) {
    m.doc() = "Subgroup-type coordinate charts on complex and real Euclidean spaces";
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<SeparationError>(m, "SeparationError", PyExc_ValueError);
    py::register_exception<SpecfunUnsupported>(m, "SpecfunUnsupported", PyExc_ValueError);

    m.attr("PRNG") = SplitMix64::name;

    m.def("spaces", [] {
        std::vector<std::string> out;
        for (SpaceId s : all_spaces()) out.push_back(to_string(s));
        return out;
    });
    m.def("chart_ids", &chart_ids, py::arg("space") = py::none());
    m.def("chart", &chart_info, py::arg("chart_id"));
    m.def("masas", [](const std::string& space) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& x : masa_catalog(space_or_raise(space))) arr.push_back(to_json(x));
        return to_py(arr);
    });
    m.def("sample_domain", [](const std::string& id, std::uint64_t seed) {
        SplitMix64 rng(seed);
        return sample_domain(chart_or_raise(id), rng);
    }, py::arg("chart_id"), py::arg("seed") = 1);
    m.def("closed_form", [](const std::string& id, const std::vector<cd>& u) {
        return eval_closed_form(chart_or_raise(id), u);
    });
    m.def("group_action", [](const std::string& id, const std::vector<cd>& u) {
        return eval_group_action(chart_or_raise(id), u);
    });
    m.def("induced_metric", &metric_rows);

    m.def("dual_path_check", [](const std::string& id, std::size_t n, std::uint64_t seed) {
        SplitMix64 rng(seed);
        return to_py(to_json(dual_path_check(chart_or_raise(id), n, rng)));
    }, py::arg("chart_id"), py::arg("samples") = 50, py::arg("seed") = 1);
    m.def("reality_check", [](const std::string& id, std::size_t n, std::uint64_t seed) {
        SplitMix64 rng(seed);
        return to_py(to_json(reality_check(chart_or_raise(id), n, rng)));
    }, py::arg("chart_id"), py::arg("samples") = 100, py::arg("seed") = 1);
    m.def("verify_laplacian", &laplacian, py::arg("chart_id"), py::arg("samples") = 20, py::arg("functions") = 5,
          py::arg("seed") = 1, py::arg("corrected") = false);
    m.def("verify_opset", &opset, py::arg("chart_id"));

    m.def("recipe_charts", &recipe_charts);
    m.def("solve", &solve, py::arg("chart_id"), py::arg("constants") = py::none(), py::arg("samples") = 20,
          py::arg("seed") = 1, py::arg("tol") = 1e-6);
    m.def("radial_index_oracle", [](cd lambda) { return to_py(to_json(radial_index_oracle(lambda))); });

    m.def("gamma", [](cd z) { return complex_gamma(z).value; });
    m.def("bessel_j", [](cd nu, cd z) { return bessel_j(nu, z).value; });
    m.def("kummer_m", [](cd a, cd b, cd z) { return kummer_m(a, b, z).value; });
    m.def("whittaker_w", [](cd kappa, cd mu, cd z) { return whittaker_w(kappa, mu, z).value; });
    m.def("hyp2f1", [](cd a, cd b, cd c, cd z) { return gauss_2f1(a, b, c, z).value; });
    m.def("legendre_p", [](cd nu, cd mu, cd z) { return legendre_p(nu, mu, z).value; });
    m.def("jacobi_p", [](int n, cd a, cd b, cd z) { return jacobi_p(n, a, b, z).value; });
    m.def("airy_ai", [](cd z) { return airy_ai(z).value; });
    m.def("specfun_battery", [](std::uint64_t seed, std::size_t n) {
        SplitMix64 rng(seed);
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : specfun_battery(rng, n)) arr.push_back(to_json(r));
        return to_py(arr);
    }, py::arg("seed") = 1, py::arg("samples") = 25);
}
