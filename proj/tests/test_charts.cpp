#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sepcoords/charts.hpp"

using namespace sepcoords;

namespace {

double vec_dist(const std::vector<cd>& a, const std::vector<cd>& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

double vec_norm(const std::vector<cd>& a) {
    double d = 0;
    for (auto x : a) d = std::max(d, std::abs(x));
    return d;
}

std::size_t count_kind(const std::vector<Chart>& cs, ChartKind k) {
    std::size_t n = 0;
    for (const auto& c : cs) n += c.kind == k;
    return n;
}

std::vector<Chart> evaluable_charts() {
    std::vector<Chart> out;
    for (auto& c : all_charts())
        if (c.kind != ChartKind::Stub) out.push_back(c);
    return out;
}

}  // namespace

TEST_CASE("chart catalog counts per space") {
    CHECK(chart_catalog(SpaceId::M4C).size() == 10);
    CHECK(count_kind(chart_catalog(SpaceId::M4C), ChartKind::Masa) == 6);
    CHECK(count_kind(chart_catalog(SpaceId::M4C), ChartKind::Nonmaximal) == 4);
    CHECK(chart_catalog(SpaceId::M3C).size() == 2);
    CHECK(chart_catalog(SpaceId::M4R).size() == 2);
    auto m31 = chart_catalog(SpaceId::M31);
    CHECK(count_kind(m31, ChartKind::Masa) == 3);
    CHECK(count_kind(m31, ChartKind::Stub) == 6);
    auto m22 = chart_catalog(SpaceId::M22);
    CHECK(count_kind(m22, ChartKind::Masa) == 9);
    CHECK(count_kind(m22, ChartKind::Nonmaximal) == 5);
    CHECK(decomposable_charts().size() == 5);
    CHECK_FALSE(find_chart("C_M47").has_value());
}

TEST_CASE("every chart links to a catalog masa and the right metric") {
    for (const auto& c : all_charts()) {
        CAPTURE(c.id);
        if (c.masa_id.empty()) continue;
        auto m = find_masa(c.masa_id);
        REQUIRE(m.has_value());
        CHECK(m->space == c.space);
        CHECK(m->metric.entries == c.metric.entries);
        for (const auto& s : c.action) CHECK(is_isometry(s.generator, c.metric));
    }
}

TEST_CASE("closed-form examples") {
    const double pi = std::numbers::pi;
    std::vector<cd> u = {1.0, 0.0, 0.0, 0.0};
    CHECK(vec_dist(eval_closed_form(chart_ref("C_M41"), u), {1.0, 0.0, 0.0, 0.0}) < 1e-15);
    u = {1.0, 2.0, 1.0, 0.0};
    CHECK(vec_dist(eval_closed_form(chart_ref("C_M43"), u), {0.0, 2.0, 0.0, 2.0}) < 1e-15);
    u = {1.0, 0.0, pi, 0.0};
    CHECK(vec_dist(eval_closed_form(chart_ref("E22_a"), u), {-1.0, 0.0, 0.0, 0.0}) < 1e-15);
}

TEST_CASE("group-action examples") {
    std::vector<cd> u = {3.0, 0.0, 0.0, 0.0};
    CHECK(vec_dist(eval_group_action(chart_ref("C_M41"), u), {3.0, 0.0, 0.0, 0.0}) < 1e-15);
    u = {1.0, 0.0, 0.0, 0.0};
    CHECK(vec_dist(eval_group_action(chart_ref("C_M46"), u), {0.5, 0.0, 0.0, 1.0}) < 1e-15);
    u = {0.0, 0.0, 0.0, 2.0};
    CHECK(vec_dist(eval_group_action(chart_ref("C_M42"), u), {1.0, 1.0, 1.0, 1.0}) < 1e-15);
}

TEST_CASE("group action and closed form agree on every chart") {
    SplitMix64 rng(11);
    for (const auto& c : evaluable_charts()) {
        CAPTURE(c.id);
        double worst = 0;
        for (int s = 0; s < 200; ++s) {
            auto u = sample_domain(c, rng);
            auto a = eval_group_action(c, u), b = eval_closed_form(c, u);
            worst = std::max(worst, vec_dist(a, b) / (1.0 + vec_norm(b)));
        }
        CHECK(worst <= 1e-11);
    }
}

TEST_CASE("family charts agree for other beta and kappa") {
    SplitMix64 rng(5);
    for (const auto& c : {make_chart_m44(Qi::frac(-2, 3)), make_chart_m44(Qi::frac(1, 2, -1, 5)), make_chart_m45(Qi(0)),
                          make_chart_m45(Qi::frac(1, 3, 1, 1)), make_chart_m44(Qi(1), SpaceId::M22),
                          make_chart_m44(Qi(-1), SpaceId::M31), make_chart_m45(Qi(0), SpaceId::M22)}) {
        CAPTURE(c.id);
        for (int s = 0; s < 50; ++s) {
            auto u = sample_domain(c, rng);
            auto b = eval_closed_form(c, u);
            CHECK(vec_dist(eval_group_action(c, u), b) <= 1e-11 * (1.0 + vec_norm(b)));
        }
    }
    CHECK_THROWS(make_chart_m44(Qi(2), SpaceId::M31));
    CHECK_THROWS(make_chart_m44(Qi::i(), SpaceId::M22));
}

TEST_CASE("jacobian examples") {
    const double pi = std::numbers::pi;
    std::vector<cd> u = {1.0, 0.0, 0.0, 0.0};
    auto j = jacobian(chart_ref("C_M41"), u);
    CHECK(std::abs(j(0, 0) - 1.0) < 1e-15);
    for (int i = 1; i < 4; ++i) CHECK(std::abs(j(i, 0)) < 1e-15);
    u = {2.0, pi / 6, 0.0, 0.0};
    j = jacobian(chart_ref("C_M41"), u);
    CHECK(std::abs(j(1, 2) - std::sqrt(3.0)) < 1e-14);
    SplitMix64 rng(3);
    const auto& m43 = chart_ref("C_M43");
    for (int s = 0; s < 20; ++s) {
        auto v = sample_domain(m43, rng);
        CHECK(std::abs(jacobian(m43, v)(3, 2)) == 0.0);
    }
}

TEST_CASE("induced metric examples") {
    SplitMix64 rng(4);
    const auto& m41 = chart_ref("C_M41");
    for (int s = 0; s < 20; ++s) {
        auto u = sample_domain(m41, rng);
        auto g = induced_metric(m41, u);
        cd r = u[0], c = u[1];
        std::vector<cd> diag = {1.0, r * r, r * r * std::cos(c) * std::cos(c), r * r * std::sin(c) * std::sin(c)};
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k) CHECK(std::abs(g(i, k) - (i == k ? diag[i] : 0.0)) < 1e-12 * (1 + std::abs(diag[i])));
    }
    const auto& m43 = chart_ref("C_M43");
    for (int s = 0; s < 20; ++s) {
        auto u = sample_domain(m43, rng);
        auto g = induced_metric(m43, u);
        CHECK(std::abs(g(1, 1)) < 1e-13);
        CHECK(std::abs(g(0, 1) - 1.0) < 1e-13);
    }
}

TEST_CASE("induced metric is symmetric and nonsingular off the singular loci") {
    SplitMix64 rng(9);
    for (const auto& c : evaluable_charts()) {
        CAPTURE(c.id);
        for (int s = 0; s < 20; ++s) {
            auto u = sample_domain(c, rng);
            auto g = induced_metric(c, u);
            for (std::size_t i = 0; i < g.rows(); ++i)
                for (std::size_t k = 0; k < i; ++k) CHECK(std::abs(g(i, k) - g(k, i)) <= 1e-12 * (1 + max_abs(g)));
            CHECK(std::abs(determinant(g)) > 1e-12);
        }
    }
}

TEST_CASE("metric degenerates at declared singular loci") {
    std::vector<cd> u = {0.0, 0.4, 0.1, 0.2};
    CHECK_THROWS_AS(induced_metric(chart_ref("C_M41"), u), DomainError);
    u = {1.0, 0.0, 0.1, 0.2};
    CHECK_THROWS_AS(induced_metric(chart_ref("C_M41"), u), DomainError);
    // det g shrinks as r + kappa -> 0
    const auto& m45 = chart_ref("C_M45");
    double prev = 1e300;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        std::vector<cd> v = {0.3, -1.0 + eps, 0.5, 0.7};
        double d = std::abs(determinant(induced_metric(m45, v)));
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("ignorable parameters do not enter the metric") {
    SplitMix64 rng(21);
    for (const auto& c : evaluable_charts()) {
        CAPTURE(c.id);
        for (std::size_t p = 0; p < c.dim(); ++p) {
            if (!c.params[p].ignorable) continue;
            for (int s = 0; s < 50; ++s) {
                auto u = sample_domain(c, rng);
                auto v = u;
                v[p] += c.params[p].domain.real ? cd(0.05) : cd(0.05, -0.03);
                if (domain_violation(c, v)) v[p] -= 0.1;
                auto g1 = induced_metric(c, u), g2 = induced_metric(c, v);
                CHECK(max_abs(g1 - g2) <= 1e-10 * max_abs(g1));
            }
        }
    }
}

TEST_CASE("non-ignorable parameters do enter the metric") {
    SplitMix64 rng(22);
    for (const auto& c : evaluable_charts()) {
        if (c.kind == ChartKind::Decomposable) continue;
        CAPTURE(c.id);
        auto u = sample_domain(c, rng);
        bool some = false;
        for (std::size_t p = 0; p < c.dim(); ++p) {
            if (c.params[p].ignorable) continue;
            auto v = u;
            v[p] *= 1.05;
            some = some || max_abs(induced_metric(c, u) - induced_metric(c, v)) > 1e-8;
        }
        CHECK(some);
    }
}

TEST_CASE("ignorable counts match the abelian factors") {
    CHECK(chart_ref("C_M41").ignorable_count() == 2);
    CHECK(chart_ref("C_M42").ignorable_count() == 2);
    for (auto id : {"C_M43", "C_M44", "C_M45", "C_M46", "E22_f", "E22_g", "E22_h", "E22_i", "M31_M43", "M31_M44"})
        CHECK(chart_ref(id).ignorable_count() == 3);
    CHECK(chart_ref("C_4C1").ignorable_count() == 1);
    CHECK(chart_ref("C_4C4").ignorable_count() == 2);
    CHECK(chart_ref("C_3C_k0").ignorable_count() == 2);
    for (const auto& c : all_charts())
        if (c.kind != ChartKind::Stub) CHECK(c.dim() == c.ambient_dim());
}

TEST_CASE("sphere charts have constant norm times r squared") {
    SplitMix64 rng(31);
    for (const auto& c : evaluable_charts()) {
        if (!c.norm_constant) continue;
        CAPTURE(c.id);
        for (int s = 0; s < 50; ++s) {
            auto u = sample_domain(c, rng);
            cd r = u[*c.radius_param];
            cd want = *c.norm_constant * r * r;
            CHECK(std::abs(norm_invariant(c, u) - want) <= 1e-12 * (1 + std::abs(want)));
        }
    }
    SplitMix64 rng2(32);
    const auto& m43 = chart_ref("C_M43");
    for (int s = 0; s < 20; ++s) {
        auto u = sample_domain(m43, rng2);
        CHECK(std::abs(norm_invariant(m43, u) - 2.0 * u[0] * u[1]) < 1e-12 * (1 + std::abs(u[0] * u[1])));
    }
}

TEST_CASE("reality of the real-form charts") {
    for (SpaceId s : {SpaceId::M4R, SpaceId::M31, SpaceId::M22}) {
        SplitMix64 rng(100 + static_cast<int>(s));
        for (const auto& c : chart_catalog(s)) {
            if (c.kind == ChartKind::Stub) continue;
            CAPTURE(c.id);
            auto rep = reality_check(c, 100, rng);
            CHECK(rep.pass);
            CHECK(rep.samples == 100);
        }
    }
    SplitMix64 rng(7);
    auto rep = reality_check(chart_ref("M31_cyl"), 100, rng);
    CHECK(rep.pass);
    CHECK(rep.max_norm_error < 1e-13);
}

TEST_CASE("domain errors name the constraint") {
    std::vector<cd> u = {-1.0, 0.5, 0.1, 0.1};
    try {
        eval_closed_form(chart_ref("R4_cyl"), u);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("r outside") != std::string::npos);
    }
    u = {1.0, cd(0.5, 0.2), 0.1, 0.1};
    CHECK_THROWS_AS(eval_closed_form(chart_ref("R4_cyl"), u), DomainError);
    CHECK_THROWS_AS(sample_domain(chart_ref("M31_4a"), *std::make_unique<SplitMix64>(1)), DomainError);
    u = {1.0, 2.0};
    CHECK_THROWS(eval_closed_form(chart_ref("C_M41"), u));
}

TEST_CASE("degenerate MANS sweeps two-dimensional orbits") {
    auto m47 = find_masa("M47_2");
    REQUIRE(m47.has_value());
    SplitMix64 rng(47);
    for (int s = 0; s < 20; ++s) {
        std::vector<Qi> p;
        for (int i = 0; i < 4; ++i) p.push_back(rng.gauss_rational(5, 7));
        CHECK(orbit_rank(*m47, p) == 2);
    }
    auto m46 = find_masa("M46_2");
    std::vector<Qi> p = {Qi(1), Qi::frac(2, 3), Qi(-3), Qi::frac(1, 5)};
    CHECK(orbit_rank(*m46, p) == 3);
}

TEST_CASE("chart json") {
    auto j = to_json(chart_ref("C_M41"));
    CHECK(j["id"] == "C_M41");
    CHECK(j["figure_ref"] == "Fig 1a");
    CHECK(j["chain"].size() == 3);
    CHECK(j["params"].size() == 4);
    CHECK(j["params"][2]["ignorable"] == true);
    CHECK(j["closed_form"].size() == 4);
    CHECK(to_json(chart_ref("C_M44")).contains("family"));
}
