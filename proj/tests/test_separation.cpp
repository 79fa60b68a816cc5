#include <doctest.h>

#include <cmath>

#include "sepcoords/separation.hpp"

using namespace sepcoords;

namespace {

bool has_root(const RadialIndex& r, cd nu) {
    for (const auto& x : r.oracle)
        if (std::abs(x.nu - nu) < 1e-12) return true;
    return false;
}

}  // namespace

TEST_CASE("radial index oracle") {
    auto one = radial_index_oracle(1.0);
    REQUIRE(one.oracle.size() == 1);
    CHECK(std::abs(one.oracle[0].nu) < 1e-12);

    auto zero = radial_index_oracle(0.0);
    CHECK(zero.oracle.size() == 2);
    CHECK(has_root(zero, 1.0));
    CHECK(has_root(zero, -1.0));

    auto m3 = radial_index_oracle(-3.0);
    CHECK(has_root(m3, 2.0));
    CHECK(has_root(m3, -2.0));

    for (const auto* r : {&one, &zero, &m3})
        for (const auto& x : r->oracle) CHECK(x.ode_residual <= 1e-9);

    // the printed index -5 - lambda fails the radial equation here
    CHECK(one.printed == cd(-6.0));
    CHECK(!one.printed_agrees);
    CHECK(!zero.printed_agrees);
    CHECK(zero.printed_residual > 1e-3);
    // at lambda = -3 it happens to give nu^2 = 1 - lambda
    CHECK(m3.printed_agrees);

    // nu^2 = 1 - lambda at complex lambda too
    cd lam(0.4, -0.7);
    auto c = radial_index_oracle(lam);
    REQUIRE(c.oracle.size() == 2);
    for (const auto& x : c.oracle) CHECK(std::abs(x.nu * x.nu - (1.0 - lam)) < 1e-12);
}

TEST_CASE("elementary radial examples") {
    auto s = build_solution("C_M43", {{"zeta", 1.0}, {"alpha1", 1.0}, {"alpha2", 0.0}, {"E", 2.0}});
    const auto& rf = s.factors[*chart_ref("C_M43").param_index("r")];
    for (double r : {0.6, 1.3}) {
        cd want = std::exp(0.5 * (1.0 / r + 2.0 * r)) / r;
        CHECK(std::abs(value_of(rf.f(Jet2(r))) - want) < 1e-14 * std::abs(want));
    }

    cd a1(0.8, 0.1), a2(-0.4, 0.3), zeta(0.5, -0.6), e(-1.1, 0.2);
    auto m46 = build_solution("C_M46", {{"zeta", zeta}, {"alpha1", a1}, {"alpha2", a2}, {"E", e}});
    const auto& rf46 = m46.factors[*chart_ref("C_M46").param_index("r")];
    cd r(0.9, 0.3);
    cd want = std::exp((-a2 * a2 * r * r + (e - 2.0 * a2 * zeta) * r) / (2.0 * a1));
    CHECK(std::abs(value_of(rf46.f(Jet2(r))) - want) < 1e-14 * std::abs(want));
}

TEST_CASE("Airy radial factor") {
    cd al(0.5, 0.2), zeta(0.9, -0.3), e(-0.7, 0.4);
    auto s = build_solution("C_3C_k1", {{"alpha", al}, {"zeta", zeta}, {"E", e}});
    const std::size_t ri = *chart_ref("C_3C_k1").param_index("r");
    const auto& rf = s.factors[ri];
    // x = (r - alpha/zeta - E/(2 zeta^2)) c with c^3 = -2 zeta^2
    cd c = s.constants.at("airy_scale");
    CHECK(std::abs(c * c * c + 2.0 * zeta * zeta) < 1e-12);
    cd r(1.1, 0.2);
    cd x = (r - al / zeta - e / (2.0 * zeta * zeta)) * c;
    CHECK(std::abs(value_of(rf.f(Jet2(r))) - airy_ai(x).value) < 1e-14);

    SplitMix64 rng(3);
    CHECK(ode_residual(s, ri, 20, rng) < 1e-9);
    REQUIRE(s.printed_forms.size() == 1);
    const auto& p = s.printed_forms[0];
    CHECK(ode_residual(p.f, p.ode, p.sample, 20, rng) > 1e-3);
}

TEST_CASE("Jacobi angular factor with integer parameters") {
    auto s = build_solution("C_M41", {{"alpha", 1.0}, {"beta", 2.0}, {"n", 2.0}, {"E", cd(-1.0, 0.5)}});
    CHECK(std::abs(s.constants.at("lambda") - (1.0 - 64.0)) < 1e-12);
    SplitMix64 rng(5);
    CHECK(ode_residual(s, *chart_ref("C_M41").param_index("c"), 25, rng) < 1e-9);
    auto rep = pde_residual(s, 20, rng);
    CHECK(rep.pde_residual <= 1e-6);
    CHECK(rep.pass);
}

TEST_CASE("every recipe satisfies the PDE") {
    SplitMix64 rng(2024);
    CHECK(recipe_charts().size() == 12);
    for (const auto& id : recipe_charts()) {
        for (int set = 0; set < 3; ++set) {
            auto c = random_constants(id, rng);
            auto s = build_solution(id, c);
            auto rep = pde_residual(s, 20, rng);
            CHECK_MESSAGE(rep.pass, to_json(rep).dump());
            CHECK(rep.samples == 20);
            if (s.elementary) {
                CHECK_MESSAGE(rep.pde_residual <= 1e-10, id);
                CHECK(rep.specfun_calls == 0);
                REQUIRE(rep.radial_first_order.has_value());
                CHECK(*rep.radial_first_order);
            } else {
                CHECK(rep.specfun_calls > 0);
            }
        }
    }
}

TEST_CASE("solution shape") {
    SplitMix64 rng(11);
    for (const auto& id : recipe_charts()) {
        auto s = build_solution(id, random_constants(id, rng));
        const auto& ch = chart_ref(id);
        REQUIRE(s.factors.size() == ch.dim());
        for (std::size_t i = 0; i < ch.dim(); ++i) {
            CHECK(s.factors[i].param == i);
            CHECK(s.factors[i].variable == ch.params[i].name);
            CHECK(s.factors[i].ignorable == ch.params[i].ignorable);
        }
        CHECK(!s.recipe_eq.empty());
        CHECK(!s.ansatz_form.empty());
    }
}

TEST_CASE("separation constants measured from the metric") {
    SplitMix64 rng(8);
    for (const char* id : {"C_M41", "C_M42", "C_4C1", "C_4C2", "C_4C3", "C_4C4"}) {
        auto s = build_solution(id, random_constants(id, rng));
        REQUIRE(s.lambda.has_value());
        auto rep = pde_residual(s, 5, rng);
        REQUIRE(!rep.relations.empty());
        CHECK(rep.relations[0].name == "lambda");
        for (const auto& r : rep.relations) CHECK_MESSAGE(r.pass, id, " ", r.name, " ", r.max_rel_error);
        REQUIRE(rep.printed_vs_oracle_index.has_value());
    }

    // an inconsistent k is caught by the measured relation, not assumed away
    Constants c{{"alpha", 0.7}, {"beta", 0.4}, {"lambda", cd(0.3, 0.2)}, {"E", cd(-1.0, 0.3)}, {"k", 1.5}};
    auto s = build_solution("C_4C4", c);
    auto rep = pde_residual(s, 5, rng);
    CHECK(!rep.pass);
    bool k_failed = false;
    for (const auto& r : rep.relations)
        if (r.name.find("k^2") != std::string::npos) k_failed = !r.pass && std::abs(r.measured - 0.65) < 1e-9;
    CHECK(k_failed);
}

TEST_CASE("printed equations that disagree are reported") {
    SplitMix64 rng(19);
    for (const char* id : {"C_M42", "C_4C3"}) {
        auto s = build_solution(id, random_constants(id, rng));
        auto rep = pde_residual(s, 10, rng);
        CHECK(rep.pass);
        REQUIRE(rep.printed_form_checks.size() == 1);
        CHECK(rep.printed_form_checks[0].max_residual > 1e-3);
    }
    // the remaining angular equations are used as printed
    auto s = build_solution("C_4C1", random_constants("C_4C1", rng));
    CHECK(s.printed_forms.empty());
}

TEST_CASE("build errors") {
    CHECK_THROWS_AS(build_solution("C_M43", {{"zeta", 1.0}, {"alpha1", 1.0}, {"E", 1.0}}), SeparationError);
    CHECK_THROWS_AS(build_solution("C_M43", {{"zeta", 0.0}, {"alpha1", 1.0}, {"alpha2", 1.0}, {"E", 1.0}}),
                    SeparationError);
    CHECK_THROWS_AS(build_solution("C_M41", {{"alpha", 1.0}, {"beta", 1.0}, {"n", 0.5}, {"E", 1.0}}), SeparationError);
    CHECK_THROWS_AS(build_solution("C_M41", {{"alpha", 1.0}, {"beta", 1.0}, {"n", 1.0}, {"E", 0.0}}), SeparationError);
    CHECK_THROWS_AS(build_solution("C_M47_cart", {}), SeparationError);
    // lambda = 0 puts the Whittaker factor in the logarithmic case
    try {
        build_solution("C_M42", {{"alpha", 0.5}, {"beta", 0.5}, {"lambda", 0.0}, {"E", cd(-1.0, 0.2)}});
        FAIL("expected an error");
    } catch (const SeparationError& e) {
        CHECK(std::string(e.what()).find("factor c") != std::string::npos);
    }
}

TEST_CASE("residual report json and determinism") {
    auto run = [] {
        SplitMix64 rng(99);
        auto s = build_solution("C_4C4", random_constants("C_4C4", rng));
        return to_json(pde_residual(s, 5, rng)).dump();
    };
    auto a = run();
    CHECK(a == run());
    auto j = nlohmann::json::parse(a);
    for (const char* key : {"chart_id", "recipe_eq", "constants", "ode_residuals", "pde_residual",
                            "printed_vs_oracle_index"})
        CHECK(j.contains(key));
    CHECK(j["printed_vs_oracle_index"]["printed_agrees"].is_boolean());
}
