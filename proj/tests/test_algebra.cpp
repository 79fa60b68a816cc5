#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sepcoords/algebra.hpp"

using namespace sepcoords;

namespace {

AlgebraElement E(std::size_t i, std::size_t k) { return AlgebraElement::basis(4, i, k); }
AlgebraElement L(std::size_t i, std::size_t k) { return AlgebraElement::rotation(4, i, k); }

double rel_diff(const CMatrix& a, const CMatrix& b) { return max_abs(a - b) / std::max(1.0, max_abs(a)); }

}  // namespace

TEST_CASE("commutators of rotation generators") {
    CHECK(commutator(L(1, 2), L(3, 4)).matrix().is_zero());
    CHECK(commutator(L(1, 2), L(1, 2)).matrix().is_zero());

    // Hand product: L12 L13 = -E23, L13 L12 = -E32.
    QMatrix expected(5, 5);
    expected(1, 2) = Qi(-1);
    expected(2, 1) = Qi(1);
    CHECK(commutator(L(1, 2), L(1, 3)).matrix() == expected);
    CHECK(commutator(L(1, 2), L(1, 3)) == -L(2, 3));
}

TEST_CASE("commutator rejects mixed dimensions") {
    CHECK_THROWS(commutator(L(1, 2), AlgebraElement::rotation(3, 1, 2)));
}

TEST_CASE("isometry condition") {
    CHECK(is_isometry(L(1, 2), MetricForm::identity(4)));
    CHECK_FALSE(is_isometry(E(1, 3) + E(3, 1), MetricForm::identity(4)));
    CHECK(is_isometry(E(1, 3) + E(3, 1), MetricForm::diagonal({1, 1, -1, -1})));
    CHECK(is_isometry(E(1, 5), MetricForm::identity(4)));
}

TEST_CASE("isometry basis has dimension n(n+1)/2") {
    for (const auto& k : {MetricForm::identity(4), MetricForm::antidiagonal_blocks(), MetricForm::light_cone(),
                          MetricForm::full_antidiagonal(4), MetricForm::diagonal({1, 1, -1, -1})}) {
        auto b = isometry_basis(k);
        CHECK(b.size() == 10);
        for (const auto& x : b) CHECK(is_isometry(x, k));
        QMatrix flat(25, b.size());
        for (std::size_t c = 0; c < b.size(); ++c)
            for (std::size_t i = 0; i < 5; ++i)
                for (std::size_t j = 0; j < 5; ++j) flat(i * 5 + j, c) = b[c].matrix()(i, j);
        CHECK(rank(flat) == 10);
    }
    CHECK(isometry_basis(MetricForm::full_antidiagonal(3)).size() == 6);
}

TEST_CASE("metric signatures") {
    CHECK(MetricForm::identity(4).signature() == std::pair{4, 0});
    CHECK(MetricForm::antidiagonal_blocks().signature() == std::pair{2, 2});
    CHECK(MetricForm::light_cone().signature() == std::pair{3, 1});
    CHECK(MetricForm::light_cone_split().signature() == std::pair{2, 2});
    CHECK(MetricForm::full_antidiagonal(4).signature() == std::pair{2, 2});
    CHECK(MetricForm::diagonal({1, 1, 1, -1}).signature() == std::pair{3, 1});
}

TEST_CASE("one-parameter exponentials: closed forms") {
    CHECK(rel_diff(one_param_exp(L(1, 2), 0.0), CMatrix::identity(5)) == 0.0);

    // E12-E21 = [[0,1],[-1,0]] squares to -I, so exp(t X) = cos t + sin t X.
    CMatrix r = one_param_exp(L(1, 2), std::numbers::pi / 2);
    CMatrix expected = CMatrix::identity(5);
    expected(0, 0) = expected(1, 1) = 0.0;
    expected(0, 1) = 1.0;
    expected(1, 0) = -1.0;
    CHECK(rel_diff(r, expected) < 1e-15);
    CHECK(rel_diff(r * r.transpose(), CMatrix::identity(5)) < 1e-15);

    cd z(0.7, -1.3);
    CMatrix t = one_param_exp(E(1, 5), z);
    CMatrix te = CMatrix::identity(5);
    te(0, 4) = z;
    CHECK(rel_diff(t, te) == 0.0);

    CHECK(ExpPlan(E(1, 5)).kind() == ExpPlan::Kind::Nilpotent);
    CHECK(ExpPlan(L(1, 2)).kind() == ExpPlan::Kind::Trigonometric);
    CHECK(ExpPlan(E(1, 3) + E(3, 1)).kind() == ExpPlan::Kind::Trigonometric);
    CHECK(ExpPlan(E(1, 1) - E(3, 3)).kind() == ExpPlan::Kind::Diagonal);
}

TEST_CASE("one-parameter exponentials: boost closed form") {
    CMatrix b = one_param_exp(E(1, 3) + E(3, 1), 0.8);
    CHECK(std::abs(b(0, 0) - std::cosh(0.8)) < 1e-15);
    CHECK(std::abs(b(0, 2) - std::sinh(0.8)) < 1e-15);
}

TEST_CASE("exponential series fallback matches closed forms") {
    // Dilation plus a non-commuting nilpotent forces the generic path.
    AlgebraElement x = E(1, 1) + E(1, 2) + E(2, 5);
    ExpPlan p(x);
    CHECK(p.kind() == ExpPlan::Kind::Series);
    CMatrix m = p(cd(0.4, 0.2));
    // Upper triangular: (0,0) entry is exp(t).
    CHECK(std::abs(m(0, 0) - std::exp(cd(0.4, 0.2))) < 1e-14);
    CHECK(rel_diff(p(cd(0.9, 0.0)), p(0.5) * p(0.4)) < 1e-13);
}

TEST_CASE("group law and metric preservation for every catalog generator") {
    SplitMix64 rng(11);
    for (SpaceId s : all_spaces())
        for (const auto& m : masa_catalog(s))
            for (const auto& g : m.generators) {
                ExpPlan p(g);
                const bool real = is_real_form(s);
                for (int trial = 0; trial < 100; ++trial) {
                    cd a = real ? cd(rng.uniform(-2, 2)) : rng.annulus(0.0, 1.5);
                    cd b = real ? cd(rng.uniform(-2, 2)) : rng.annulus(0.0, 1.5);
                    CMatrix ab = p(a + b);
                    CHECK(max_abs(ab - p(a) * p(b)) <= 1e-12 * max_abs(ab));
                    CMatrix e = p(a), lin(4, 4), k = to_complex(m.metric.entries);
                    for (std::size_t i = 0; i < m.metric.dim(); ++i)
                        for (std::size_t j = 0; j < m.metric.dim(); ++j) lin(i, j) = e(i, j);
                    if (m.metric.dim() == 4) CHECK(max_abs(lin * k * lin.transpose() - k) <= 1e-12 * max_abs(ab));
                }
            }
}

TEST_CASE("MASA catalog cardinalities") {
    auto c4 = masa_catalog(SpaceId::M4C);
    CHECK(c4.size() == 7);
    int degenerate = 0;
    for (const auto& m : c4) degenerate += m.degenerate;
    CHECK(degenerate == 1);
    CHECK(c4.back().id == "M47_2");

    auto c31 = masa_catalog(SpaceId::M31);
    std::vector<std::string> parents;
    for (const auto& m : c31) parents.push_back(*m.descends_from);
    CHECK(parents == std::vector<std::string>{"M41_0", "M43_1", "M44_1"});

    int k2 = 0, k2deg = 0;
    for (const auto& m : masa_catalog(SpaceId::M22))
        if (m.k0 == 2) {
            ++k2;
            k2deg += m.degenerate;
        }
    CHECK(k2 == 2);
    CHECK(k2deg == 1);

    int cartan = 0;
    for (const auto& m : masa_catalog(SpaceId::M22)) cartan += m.id.rfind("Cartan", 0) == 0;
    CHECK(cartan == 3);
}

TEST_CASE("every MASA is Abelian, isometric and has k0 isotropic translations") {
    for (SpaceId s : all_spaces())
        for (const auto& m : masa_catalog(s)) {
            INFO(m.id);
            CHECK(m.params.size() == m.dim());
            for (const auto& a : m.generators) {
                CHECK(is_isometry(a, m.metric));
                for (const auto& b : m.generators) CHECK(commutator(a, b).matrix().is_zero());
            }
            auto t = isotropic_translations(m);
            CHECK(t.count == m.k0);
            CHECK(t.isotropic);
            if (is_real_form(s)) {
                auto [p, q] = m.metric.signature();
                CHECK(p == (s == SpaceId::M4R ? 4 : s == SpaceId::M31 ? 3 : 2));
                CHECK(q == 4 - p);
            }
        }
}

TEST_CASE("centralizer maximality") {
    SplitMix64 rng(3);
    for (SpaceId s : all_spaces())
        for (const auto& m : masa_catalog(s)) {
            INFO(m.id);
            auto r = centralizer_check(m, m.metric, rng);
            CHECK(r.is_maximal);
            CHECK(r.centralizer_dim == m.dim());
            CHECK(r.ambient_dim == (m.metric.dim() == 4 ? 10u : 6u));
            for (const auto& g : m.generators) CHECK_FALSE(centralizer_check({g}, m.metric).is_maximal);
        }
}

TEST_CASE("centralizer of a single translation") {
    auto r = centralizer_check({E(1, 5)}, MetricForm::identity(4));
    CHECK_FALSE(r.is_maximal);
    // Translations commute with E15, plus rotations fixing e1.
    CHECK(r.centralizer_dim == 7);
}

TEST_CASE("centralizer of M41 and M43") {
    SplitMix64 rng(5);
    auto c = masa_catalog(SpaceId::M4C);
    auto r41 = centralizer_check(c[0], c[0].metric, rng);
    CHECK(r41.centralizer_dim == 2);
    auto r43 = centralizer_check(c[2], c[2].metric, rng);
    CHECK(r43.is_maximal);
    CHECK(r43.centralizer_dim == 3);
}

TEST_CASE("conjugation to the antidiagonal-block metric") {
    auto [k0, x0] = conjugate(QMatrix::identity(4), MetricForm::identity(4), {L(1, 2)});
    CHECK(k0.entries == QMatrix::identity(4));
    CHECK(x0[0] == L(1, 2));

    const Qi h = Qi::frac(1, 2), ih = Qi::frac(0, 1, 1, 2);
    QMatrix g(4, 4);
    const Qi rows[4][4] = {{h, ih, h, ih}, {-ih, h, ih, -h}, {h, -ih, h, -ih}, {ih, h, -ih, -h}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = rows[i][j];
    auto m41 = masa_catalog(SpaceId::M4C)[0];
    auto [k, xs] = conjugate(g, MetricForm::identity(4), m41.generators);
    CHECK(k.entries == MetricForm::antidiagonal_blocks().entries);
    for (const auto& x : xs) CHECK(is_isometry(x, MetricForm::antidiagonal_blocks()));

    // The image lies in the span of the mixed Cartan generators.
    auto mixed = masa_catalog(SpaceId::M22)[2];
    QMatrix flat(25, 4);
    std::vector<QMatrix> all{xs[0].matrix(), xs[1].matrix(), mixed.generators[0].matrix(), mixed.generators[1].matrix()};
    for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) flat(i * 5 + j, c) = all[c](i, j);
    CHECK(rank(flat) == 2);
}

TEST_CASE("conjugation preserving the antidiagonal-block metric") {
    // sqrt(2) G has entries in Q(i); the scalar factor cancels in G X G^-1 and
    // contributes 1/2 to G K G^T.
    const Qi o(1), z(0), i = Qi::i();
    QMatrix g(4, 4);
    const Qi rows[4][4] = {{o, z, z, o}, {i, z, z, -i}, {z, o, o, z}, {z, i, -i, z}};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) g(r, c) = rows[r][c];
    auto m42 = masa_catalog(SpaceId::M4C)[1];
    auto [k, xs] = conjugate(g, m42.metric, m42.generators);
    CHECK(k.entries * Qi::frac(1, 2) == m42.metric.entries);
    for (const auto& x : xs) CHECK(is_isometry(x, m42.metric));
    CHECK(commutator(xs[0], xs[1]).matrix().is_zero());

    CHECK_THROWS(conjugate(QMatrix(4, 4), MetricForm::identity(4), {}));
}

TEST_CASE("catalog JSON") {
    auto j = to_json(masa_catalog(SpaceId::M4C)[2]);
    CHECK(j["id"] == "M43_1");
    CHECK(j["k0"] == 1);
    CHECK(j["generators"].size() == 3);
    CHECK(j["generators"][2].size() == 25);
    CHECK(j["generators"][2][4] == "1+0i");
    CHECK(j["class"] == "MANS");
    CHECK(Qi::frac(-1, 2, -3, 4).str() == "-1/2-3/4i");
}
