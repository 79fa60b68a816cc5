#include <doctest.h>

#include "sepcoords/opsets.hpp"

using namespace sepcoords;

namespace {

const std::size_t N = 4;

Poly x(std::size_t i, Qi c = Qi(1)) { return Poly::variable(N, i - 1, c); }
DiffOperator d(std::size_t i) { return DiffOperator::partial(N, i - 1); }
DiffOperator mul(const Poly& p) { return DiffOperator::multiply(p); }

DiffOperator term(const Poly& p, std::vector<int> alpha) {
    DiffOperator o(N);
    o.add_term(alpha, p);
    return o;
}

// x_i d_k - x_k d_i
DiffOperator rotation_op(std::size_t i, std::size_t k) { return compose(mul(x(i)), d(k)) - compose(mul(x(k)), d(i)); }

DiffOperator random_operator(SplitMix64& rng) {
    DiffOperator o(N);
    int nterms = int(rng.integer(1, 3));
    for (int t = 0; t < nterms; ++t) {
        std::vector<int> alpha(N, 0), e(N, 0);
        for (int k = int(rng.integer(0, 2)); k > 0; --k) ++alpha[std::size_t(rng.integer(0, 3))];
        for (int k = int(rng.integer(0, 2)); k > 0; --k) ++e[std::size_t(rng.integer(0, 3))];
        Poly p(N);
        p.add_term(e, rng.gauss_rational(2, 3));
        o.add_term(alpha, p);
    }
    return o;
}

}  // namespace

TEST_CASE("compose examples") {
    CHECK(compose(d(1), mul(x(1))) == compose(mul(x(1)), d(1)) + DiffOperator::identity(N));

    DiffOperator l12 = compose(mul(x(1)), d(2)) - compose(mul(x(2)), d(1));
    DiffOperator want = term(x(1) * x(1), {0, 2, 0, 0});
    want += Qi(-2) * term(x(1) * x(2), {1, 1, 0, 0});
    want += term(x(2) * x(2), {2, 0, 0, 0});
    want -= compose(mul(x(1)), d(1));
    want -= compose(mul(x(2)), d(2));
    CHECK(compose(l12, l12) == want);

    SplitMix64 rng(1);
    auto p = random_operator(rng);
    CHECK(compose(p, DiffOperator::identity(N)) == p);
    CHECK(compose(DiffOperator::identity(N), p) == p);
}

TEST_CASE("commutator examples") {
    CHECK(op_commutator(d(1), d(2)).is_zero());
    auto box = box_operator(MetricForm::identity(4));
    CHECK(op_commutator(box, rotation_op(1, 2)).is_zero());
    // [L12, L13] = -L23 at algebra level; the operator map reverses the sign
    auto a = AlgebraElement::rotation(4, 1, 2), b = AlgebraElement::rotation(4, 1, 3);
    CHECK(commutator(a, b) == -AlgebraElement::rotation(4, 2, 3));
    CHECK(op_commutator(generator_to_operator(a), generator_to_operator(b)) ==
          generator_to_operator(AlgebraElement::rotation(4, 2, 3)));
}

TEST_CASE("generator_to_operator examples") {
    CHECK(generator_to_operator(AlgebraElement::basis(4, 1, 5)) == d(1));
    // E12 - E21 moves x along (x2, -x1)
    QMatrix m(5, 5);
    m(0, 1) = Qi(1);
    m(1, 0) = Qi(-1);
    CHECK(generator_to_operator(AlgebraElement(m)) == compose(mul(x(2)), d(1)) - compose(mul(x(1)), d(2)));
    // the M47 generator B = s4 d1 - s3 d2
    auto m47 = *find_masa("M47_2");
    auto b = generator_to_operator(m47.generators[0]);
    CHECK(b == compose(mul(x(4)), d(1)) - compose(mul(x(3)), d(2)));
    CHECK(generator_to_operator(m47.generators[1]) == d(1));
    CHECK(generator_to_operator(m47.generators[2]) == d(2));
}

TEST_CASE("box and casimir") {
    CHECK(box_operator(MetricForm::identity(4)) ==
          compose(d(1), d(1)) + compose(d(2), d(2)) + compose(d(3), d(3)) + compose(d(4), d(4)));
    CHECK(box_operator(MetricForm::antidiagonal_blocks()) == Qi(2) * (compose(d(1), d(3)) + compose(d(2), d(4))));

    auto c2 = casimir_second_order(MetricForm::identity(4));
    DiffOperator want(N);
    for (std::size_t a = 1; a <= 4; ++a)
        for (std::size_t b = a + 1; b <= 4; ++b) want += compose(rotation_op(a, b), rotation_op(a, b));
    CHECK(c2 == Qi::frac(1, 2) * want);
    CHECK(c2.str() != "0");

    for (const auto& k : {MetricForm::identity(4), MetricForm::antidiagonal_blocks(), MetricForm::light_cone(),
                          MetricForm::light_cone_split(), MetricForm::diagonal({1, 1, -1, -1}),
                          MetricForm::diagonal({1, 1, 1, -1}), MetricForm::identity(3)}) {
        auto box = box_operator(k);
        auto cas = casimir_second_order(k);
        const std::size_t n = k.dim();
        for (const auto& g : isometry_basis(k)) {
            auto op = generator_to_operator(g);
            CHECK_MESSAGE(op_commutator(box, op).is_zero(), k.form_id, " ", g.label());
            bool rotation = true;
            for (std::size_t i = 0; i < n; ++i) rotation = rotation && g.matrix()(i, n).is_zero();
            if (rotation) CHECK_MESSAGE(op_commutator(cas, op).is_zero(), k.form_id, " ", g.label());
        }
        CHECK(op_commutator(box, cas).is_zero());
    }
}

TEST_CASE("operator map is an anti-homomorphism on e(4)") {
    for (const auto& k : {MetricForm::identity(4), MetricForm::antidiagonal_blocks()}) {
        auto basis = isometry_basis(k);
        for (const auto& a : basis)
            for (const auto& b : basis)
                CHECK(generator_to_operator(commutator(a, b)) ==
                      -op_commutator(generator_to_operator(a), generator_to_operator(b)));
    }
}

TEST_CASE("ring axioms on random operators") {
    SplitMix64 rng(17);
    for (int t = 0; t < 50; ++t) {
        auto p = random_operator(rng), q = random_operator(rng), r = random_operator(rng);
        CHECK(compose(compose(p, q), r) == compose(p, compose(q, r)));
        Qi s = rng.gauss_rational(3, 4);
        CHECK(op_commutator(p + s * q, r) == op_commutator(p, r) + s * op_commutator(q, r));
        CHECK(op_commutator(p, q) == -op_commutator(q, p));
        // action on polynomials is compatible with composition
        Poly f = x(1) * x(2) * x(2) + x(3, Qi(2)) * x(4) + Poly::constant(N, Qi(3));
        CHECK(compose(p, q).apply(f) == p.apply(q.apply(f)));
    }
}

TEST_CASE("every chart's commuting set verifies exactly") {
    std::size_t checked = 0;
    for (const auto& c : all_charts()) {
        auto s = opset_for_chart(c);
        if (c.kind == ChartKind::Stub) {
            CHECK(!s.has_value());
            continue;
        }
        REQUIRE(s.has_value());
        auto rep = verify_opset(*s, c.ambient_dim());
        CHECK_MESSAGE(rep.pass, c.id, " ", to_json(rep).dump());
        ++checked;
    }
    CHECK(checked >= 35);
}

TEST_CASE("set composition follows the chain") {
    auto m41 = *opset_for_chart(chart_ref("C_M41"));
    REQUIRE(m41.members.size() == 4);
    CHECK(m41.members[0].label == "Box");
    CHECK(m41.members[1].label == "Delta_LB");
    CHECK(m41.members[2].op == rotation_op(1, 2));

    auto m43 = *opset_for_chart(chart_ref("C_M43"));
    CHECK(m43.members.size() == 4);
    for (std::size_t i = 1; i < 4; ++i) CHECK(m43.members[i].role == "generator");

    auto c1 = *opset_for_chart(chart_ref("C_4C1"));
    CHECK(c1.subalgebra.find("dim 3") != std::string::npos);
    CHECK(c1.members[2].label == "C2(L)");
    auto c3 = *opset_for_chart(chart_ref("C_4C3"));
    CHECK(c3.subalgebra.find("dim 3") != std::string::npos);
    auto c4 = *opset_for_chart(chart_ref("C_4C4"));
    CHECK(c4.subalgebra == "abelian, dim 2");

    auto k0 = *opset_for_chart(chart_ref("C_3C_k0"));
    CHECK(k0.members.size() == 3);
}

TEST_CASE("corrupted set is rejected") {
    OpSet s;
    s.chart_id = "negative-control";
    auto k = MetricForm::identity(4);
    s.members = {{"Box", "hamiltonian", box_operator(k)},
                 {"L12", "generator", generator_to_operator(AlgebraElement::rotation(4, 1, 2))},
                 {"L13", "generator", generator_to_operator(AlgebraElement::rotation(4, 1, 3))},
                 {"C2", "casimir", casimir_second_order(k)}};
    auto rep = verify_opset(s, 4);
    CHECK(!rep.pass);
    std::size_t nonzero = 0;
    for (const auto& p : rep.pairs)
        if (!p.zero) {
            ++nonzero;
            CHECK(p.a == "L12");
            CHECK(p.b == "L13");
        }
    CHECK(nonzero == 1);

    // dependent members are rejected too
    s.members = {{"Box", "hamiltonian", box_operator(k)}, {"Box again", "hamiltonian", Qi(2) * box_operator(k)}};
    CHECK(!verify_opset(s).independent);
}

TEST_CASE("M47 generators span a two-dimensional subspace") {
    auto s = *opset_for_chart(chart_ref("C_M47_cart"));
    auto rep = verify_opset(s, 4);
    REQUIRE(rep.rank_checks.size() == 1);
    CHECK(rep.rank_checks[0].operators == 3);
    CHECK(rep.rank_checks[0].generic_rank == 2);
    CHECK(rep.pass);

    auto m46 = verify_opset(*opset_for_chart(chart_ref("C_M46")), 4);
    CHECK(m46.rank_checks.at(0).generic_rank == 3);
}

TEST_CASE("lie closure and subalgebra casimirs") {
    auto l = lie_closure({AlgebraElement::rotation(4, 1, 2), AlgebraElement::rotation(4, 1, 3)});
    CHECK(l.size() == 3);
    auto c = quadratic_casimir(l);
    REQUIRE(c.has_value());
    for (const auto& g : l) CHECK(op_commutator(*c, generator_to_operator(g)).is_zero());
    // abelian: no unique invariant
    CHECK(!quadratic_casimir({AlgebraElement::rotation(4, 1, 2), AlgebraElement::rotation(4, 3, 4)}).has_value());
}

TEST_CASE("opset json") {
    auto s = *opset_for_chart(chart_ref("C_M41"));
    auto j = to_json(verify_opset(s, 4));
    CHECK(j["chart_id"] == "C_M41");
    CHECK(j["pairs"].size() == 6);
    CHECK(j["pairs"][0]["commutator_is_zero"] == true);
    CHECK(to_json(s)["members"].size() == 4);
}
