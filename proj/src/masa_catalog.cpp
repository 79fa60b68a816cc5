#include <initializer_list>
#include <tuple>

#include "sepcoords/algebra.hpp"

namespace sepcoords {

namespace {

struct Entry {
    std::size_t i, k;
    Qi c;
};

AlgebraElement gen(std::size_t n, std::initializer_list<Entry> entries, std::string label) {
    QMatrix m(n + 1, n + 1);
    for (const auto& e : entries) m(e.i - 1, e.k - 1) += e.c;
    return AlgebraElement(m, std::move(label));
}

const Qi one(1), mone(-1);

Masa m41(SpaceId space) {
    Masa m;
    m.id = space == SpaceId::M4C ? "M41_0" : "R4_Cartan";
    m.space = space;
    m.metric = MetricForm::identity(4);
    m.params = {"a", "b"};
    m.generators = {gen(4, {{1, 2, mone}, {2, 1, one}}, "-E12+E21"), gen(4, {{3, 4, mone}, {4, 3, one}}, "-E34+E43")};
    m.decomposability_class = "Cartan";
    m.paper_eq = "3.MV41";
    if (space != SpaceId::M4C) m.descends_from = "M41_0";
    return m;
}

Masa m42() {
    Masa m;
    m.id = "M42_0";
    m.space = SpaceId::M4C;
    m.metric = MetricForm::antidiagonal_blocks();
    m.params = {"a", "b"};
    m.generators = {gen(4, {{1, 1, one}, {2, 2, one}, {3, 3, mone}, {4, 4, mone}}, "E11+E22-E33-E44"),
                    gen(4, {{1, 2, one}, {4, 3, mone}}, "E12-E43")};
    m.decomposability_class = "OID-but-D";
    m.paper_eq = "3.M420";
    return m;
}

Masa m43(SpaceId space) {
    Masa m;
    m.space = space;
    m.params = {"a1", "a2", "z"};
    m.k0 = 1;
    m.decomposability_class = "MANS";
    m.paper_eq = "3.M431";
    if (space == SpaceId::M22) {
        m.id = "M22_M43_1";
        m.metric = MetricForm::light_cone_split();
        m.generators = {gen(4, {{1, 2, mone}, {2, 4, one}}, "-E12+E24"), gen(4, {{1, 3, one}, {3, 4, one}}, "E13+E34"),
                        gen(4, {{1, 5, one}}, "E15")};
        m.notes.push_back("middle block of the light-cone form taken as diag(1,-1) to realize signature (2,2)");
    } else {
        m.id = space == SpaceId::M4C ? "M43_1" : "M31_M43_1";
        m.metric = MetricForm::light_cone();
        m.generators = {gen(4, {{1, 2, mone}, {2, 4, one}}, "-E12+E24"), gen(4, {{1, 3, mone}, {3, 4, one}}, "-E13+E34"),
                        gen(4, {{1, 5, one}}, "E15")};
    }
    if (space != SpaceId::M4C) m.descends_from = "M43_1";
    return m;
}

Masa m46(SpaceId space, bool degenerate) {
    Masa m;
    m.space = space;
    m.metric = MetricForm::antidiagonal_blocks();
    m.params = {"z", "a1", "a2"};
    m.k0 = 2;
    m.decomposability_class = "MANS";
    m.degenerate = degenerate;
    std::string base = degenerate ? "M47_2" : "M46_2";
    m.id = space == SpaceId::M4C ? base : "M22_" + base;
    if (space != SpaceId::M4C) m.descends_from = base;
    if (degenerate) {
        m.generators = {gen(4, {{1, 4, one}, {2, 3, mone}}, "E14-E23"), gen(4, {{1, 5, one}}, "E15"),
                        gen(4, {{2, 5, one}}, "E25")};
        m.paper_eq = "3.M472";
        m.notes.push_back("orbits are 2-dimensional; no coordinate system");
    } else {
        m.generators = {gen(4, {{1, 4, one}, {2, 3, mone}, {4, 5, one}}, "E14-E23+E45"), gen(4, {{1, 5, one}}, "E15"),
                        gen(4, {{2, 5, one}}, "E25")};
        m.paper_eq = "3.M462";
    }
    return m;
}

Masa cartan_compact() {
    Masa m;
    m.id = "CartanCompact";
    m.space = SpaceId::M22;
    m.metric = MetricForm::diagonal({1, 1, -1, -1});
    m.params = {"a", "b"};
    m.generators = {gen(4, {{1, 2, mone}, {2, 1, one}}, "-E12+E21"), gen(4, {{3, 4, mone}, {4, 3, one}}, "-E34+E43")};
    m.decomposability_class = "Cartan";
    m.descends_from = "M41_0";
    m.paper_eq = "5.3";
    return m;
}

Masa cartan_noncompact() {
    Masa m;
    m.id = "CartanNoncompact";
    m.space = SpaceId::M22;
    m.metric = MetricForm::diagonal({1, 1, -1, -1});
    m.params = {"a", "b"};
    m.generators = {gen(4, {{1, 3, one}, {3, 1, one}}, "E13+E31"), gen(4, {{2, 4, one}, {4, 2, one}}, "E24+E42")};
    m.decomposability_class = "Cartan";
    m.descends_from = "M41_0";
    m.paper_eq = "5.9";
    return m;
}

Masa cartan_mixed() {
    Masa m;
    m.id = "CartanMixed";
    m.space = SpaceId::M22;
    m.metric = MetricForm::antidiagonal_blocks();
    m.params = {"a", "b"};
    m.generators = {gen(4, {{1, 1, one}, {2, 2, one}, {3, 3, mone}, {4, 4, mone}}, "E11+E22-E33-E44"),
                    gen(4, {{1, 2, mone}, {2, 1, one}, {3, 4, mone}, {4, 3, one}}, "-E12+E21-E34+E43")};
    m.decomposability_class = "Cartan";
    m.descends_from = "M41_0";
    m.paper_eq = "5.14";
    m.notes.push_back(
        "printed matrix has its lower block shifted by one row; read as rows 3-4 = (-a,-b),(b,-a). "
        "The printed action string's b-term E12-E21-E34+E43 fails the isometry condition");
    return m;
}

Masa m1_0() {
    Masa m = m42();
    m.id = "M1_0";
    m.space = SpaceId::M22;
    m.decomposability_class = "AOID-but-D";
    m.descends_from = "M42_0";
    m.paper_eq = "3.M420";
    return m;
}

Masa m2_0() {
    Masa m;
    m.id = "M2_0";
    m.space = SpaceId::M22;
    m.metric = MetricForm::antidiagonal_blocks();
    m.params = {"a", "b"};
    m.generators = {gen(4, {{1, 2, one}, {2, 1, mone}, {3, 4, one}, {4, 3, mone}}, "E12-E21+E34-E43"),
                    gen(4, {{1, 4, one}, {2, 3, mone}}, "E14-E23")};
    m.decomposability_class = "AOID-ID-NAID";
    m.descends_from = "M42_0";
    m.paper_eq = "5.M2_0";
    m.notes.push_back("matrix form authoritative; the action string's a-term -E12+E21-E34+E34 is a suspected typo for -E34+E43");
    return m;
}

Masa cartan_m31() {
    Masa m;
    m.id = "M31_Cartan";
    m.space = SpaceId::M31;
    m.metric = MetricForm::diagonal({1, 1, 1, -1});
    m.params = {"a", "b"};
    m.generators = {gen(4, {{1, 2, mone}, {2, 1, one}}, "-E12+E21"), gen(4, {{3, 4, one}, {4, 3, one}}, "E34+E43")};
    m.decomposability_class = "Cartan";
    m.descends_from = "M41_0";
    m.paper_eq = "4.1";
    return m;
}

}  // namespace

Masa make_m44(const Qi& beta, SpaceId space) {
    Masa m;
    m.space = space;
    m.params = {"a1", "a2", "z"};
    m.k0 = 1;
    m.decomposability_class = "MANS";
    m.paper_eq = "3.M441";
    const Qi s = space == SpaceId::M22 ? one : mone;
    m.metric = space == SpaceId::M22 ? MetricForm::light_cone_split() : MetricForm::light_cone();
    m.generators = {gen(4, {{1, 2, mone}, {2, 4, one}, {2, 5, one}}, "-E12+E24+E25"),
                    gen(4, {{1, 3, s}, {3, 4, one}, {3, 5, beta}}, (space == SpaceId::M22 ? "E13" : "-E13") +
                                                                     std::string("+E34+beta*E35")),
                    gen(4, {{1, 5, one}}, "E15")};
    m.id = space == SpaceId::M4C ? "M44_1" : space == SpaceId::M31 ? "M31_M44_1" : "M22_M44_1";
    if (space != SpaceId::M4C) m.descends_from = "M44_1";
    m.notes.push_back("beta=" + beta.str());
    return m;
}

Masa make_m45(const Qi& kappa, SpaceId space) {
    Masa m;
    m.space = space;
    m.params = {"a1", "a2", "z"};
    m.k0 = 1;
    m.decomposability_class = "MANS";
    m.paper_eq = "3.M451";
    m.metric = MetricForm::full_antidiagonal(4);
    m.generators = {gen(4, {{1, 2, mone}, {3, 4, one}, {3, 5, kappa}}, "-E12+E34+kappa*E35"),
                    gen(4, {{1, 3, mone}, {2, 4, one}, {3, 5, one}, {2, 5, kappa}}, "-E13+E24+E35+kappa*E25"),
                    gen(4, {{1, 5, one}}, "E15")};
    m.id = space == SpaceId::M4C ? "M45_1" : "M22_M45_1";
    if (space != SpaceId::M4C) m.descends_from = "M45_1";
    m.notes.push_back("kappa=" + kappa.str());
    return m;
}

Masa make_m3c(int kappa) {
    Masa m;
    m.id = kappa == 0 ? "M3C_k0" : "M3C_k1";
    m.space = SpaceId::M3C;
    m.metric = MetricForm::full_antidiagonal(3);
    m.params = {"a", "z"};
    m.k0 = 1;
    m.decomposability_class = "MANS";
    m.paper_eq = "3.B3";
    if (kappa == 0)
        m.generators = {gen(3, {{1, 2, one}, {2, 3, mone}}, "E12-E23"), gen(3, {{1, 4, one}}, "E14")};
    else
        m.generators = {gen(3, {{1, 2, one}, {2, 3, mone}, {3, 4, mone}}, "E12-E23-E34"), gen(3, {{1, 4, one}}, "E14")};
    return m;
}

std::vector<Masa> masa_catalog(SpaceId space) {
    switch (space) {
        case SpaceId::M4C:
            return {m41(space), m42(), m43(space), make_m44(Qi::frac(1, 3, 1, 4)), make_m45(Qi(1)),
                    m46(space, false), m46(space, true)};
        case SpaceId::M3C: return {make_m3c(0), make_m3c(1)};
        case SpaceId::M4R: return {m41(space)};
        case SpaceId::M31: return {cartan_m31(), m43(space), make_m44(Qi::frac(-1, 2), space)};
        case SpaceId::M22:
            return {cartan_compact(), cartan_noncompact(), cartan_mixed(), m1_0(), m2_0(), m43(space),
                    make_m44(Qi::frac(1, 2), space), make_m45(Qi(1), space), m46(space, false), m46(space, true)};
    }
    return {};
}

std::optional<Masa> find_masa(const std::string& id) {
    for (SpaceId s : all_spaces())
        for (auto& m : masa_catalog(s))
            if (m.id == id) return m;
    return std::nullopt;
}

}  // namespace sepcoords
