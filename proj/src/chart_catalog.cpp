#include <cmath>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <sstream>

#include "sepcoords/charts.hpp"

namespace sepcoords {

namespace {

using J = Jet2;
using U = std::span<const Jet2>;
using Guard = std::optional<std::string>;

constexpr double kPi = std::numbers::pi;
constexpr double kMargin = 0.1;
const cd I(0.0, 1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

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

ParamSpec cp(std::string name, bool ignorable = false) {
    return {std::move(name), ignorable, {false, 0.3, 2.0, "complex"}};
}

double bound_value(const std::string& t) {
    if (t == "inf") return std::numeric_limits<double>::infinity();
    if (t == "-inf") return -std::numeric_limits<double>::infinity();
    if (t == "pi") return kPi;
    if (t == "-pi/2") return -kPi / 2;
    if (t == "pi/2") return kPi / 2;
    if (t == "2pi") return 2 * kPi;
    return std::stod(t);
}

// Stated ranges have the form "lo <op> name <op> hi".
ParamSpec rp(std::string name, bool ignorable, double lo, double hi, std::string stated) {
    ParamSpec p{std::move(name), ignorable, {true, lo, hi, stated}};
    std::istringstream in(stated);
    std::string a, op1, var, op2, b;
    in >> a >> op1 >> var >> op2 >> b;
    p.domain.min = bound_value(a);
    p.domain.max = bound_value(b);
    return p;
}

bool small(cd v) { return std::abs(v) < kMargin; }

ChainNode node(std::string label, GroupKind kind, std::string real_form = {}) {
    return {std::move(label), kind, std::move(real_form)};
}

ChainNode semicircle(std::string label) { return node(std::move(label), GroupKind::PseudoOrthogonal, "semicircle"); }

// Recurring one-parameter subgroups.
AlgebraElement rot(std::size_t i, std::size_t k) {
    // -E_ik + E_ki: turns e_i towards e_k.
    return gen(4, {{i, k, mone}, {k, i, one}},
               "-E" + std::to_string(i) + std::to_string(k) + "+E" + std::to_string(k) + std::to_string(i));
}
AlgebraElement boost(std::size_t i, std::size_t k) {
    return gen(4, {{i, k, one}, {k, i, one}},
               "E" + std::to_string(i) + std::to_string(k) + "+E" + std::to_string(k) + std::to_string(i));
}
AlgebraElement transl(std::size_t n, std::size_t i) {
    return gen(n, {{i, n + 1, one}}, "E" + std::to_string(i) + std::to_string(n + 1));
}

// ---------------------------------------------------------------- spheres

Chart cylindrical(bool real) {
    Chart c;
    c.id = real ? "R4_cyl" : "C_M41";
    c.name = real ? "cylindrical" : "complex cylindrical";
    c.space = real ? SpaceId::M4R : SpaceId::M4C;
    c.metric = MetricForm::identity(4);
    if (real)
        c.params = {rp("r", false, 0.3, 3.0, "0 <= r <= inf"), rp("c", false, 0.0, kPi / 2, "0 <= c <= pi/2"),
                    rp("a", true, 0.0, 2 * kPi, "0 <= a < 2pi"), rp("b", true, 0.0, 2 * kPi, "0 <= b < 2pi")};
    else
        c.params = {cp("r"), cp("c"), cp("a", true), cp("b", true)};
    c.action = {make_step(rot(1, 2), 2), make_step(rot(3, 4), 3), make_step(rot(1, 3), 1),
                make_step(transl(4, 1), 0)};
    c.closed_form_text = {"x1 = r cos c cos a", "x2 = r cos c sin a", "x3 = r sin c cos b", "x4 = r sin c sin b"};
    c.closed_form = [](U u) {
        const J &r = u[0], &cc = u[1], &a = u[2], &b = u[3];
        J rc = r * cos(cc), rs = r * sin(cc);
        return std::vector<J>{rc * cos(a), rc * sin(a), rs * cos(b), rs * sin(b)};
    };
    c.regular = [](std::span<const cd> u) -> Guard {
        if (small(u[0])) return "r = 0";
        if (small(std::sin(u[1]))) return "sin c = 0";
        if (small(std::cos(u[1]))) return "cos c = 0";
        return std::nullopt;
    };
    c.laplacian_id = "M41";
    c.figure_ref = "Fig 1a";
    c.chain = real ? std::vector<ChainNode>{node("E(4)", GroupKind::Euclidean), node("O(4)", GroupKind::Orthogonal),
                                            node("O(2)xO(2)", GroupKind::Masa)}
                   : std::vector<ChainNode>{node("E(4,C)", GroupKind::Euclidean), node("O(4,C)", GroupKind::Orthogonal),
                                            node("M41(0)", GroupKind::Masa)};
    c.paper_eq = "3.V4100";
    c.masa_id = real ? "R4_Cartan" : "M41_0";
    c.norm_constant = 1.0;
    c.radius_param = 0;
    return c;
}

Chart m42_chart(bool real) {
    Chart c;
    c.id = real ? "E22_d" : "C_M42";
    c.name = real ? "(2,2) analog of the M42 chart" : "complex light-cone dilation chart";
    c.space = real ? SpaceId::M22 : SpaceId::M4C;
    c.metric = MetricForm::antidiagonal_blocks();
    if (real)
        c.params = {rp("a", true, -1.5, 1.5, "-inf < a < inf"), rp("b", true, -1.5, 1.5, "-inf < b < inf"),
                    rp("c", false, -1.0, 1.0, "-inf < c < inf"), rp("r", false, 0.3, 3.0, "0 <= r < inf")};
    else
        c.params = {cp("a", true), cp("b", true), cp("c"), cp("r")};
    c.action = {make_step(gen(4, {{1, 1, one}, {2, 2, one}, {3, 3, mone}, {4, 4, mone}}, "E11+E22-E33-E44"), 0),
                make_step(gen(4, {{1, 2, one}, {4, 3, mone}}, "E12-E43"), 1),
                make_step(gen(4, {{1, 1, one}, {2, 2, mone}, {3, 3, mone}, {4, 4, one}}, "E11-E22-E33+E44"), 2),
                make_step(gen(4, {{1, 5, one}, {2, 5, one}, {3, 5, one}, {4, 5, one}}, "E15+E25+E35+E45"), 3, 0.5)};
    c.closed_form_text = {"x1 = r/2 e^a (e^c + b e^-c)", "x2 = r/2 e^a e^-c", "x3 = r/2 e^-a e^-c",
                          "x4 = r/2 e^-a (e^c - b e^-c)"};
    c.closed_form = [](U u) {
        const J &a = u[0], &b = u[1], &cc = u[2], &r = u[3];
        J ea = exp(a), ema = exp(-a), ec = exp(cc), emc = exp(-cc);
        J h = 0.5 * r;
        return std::vector<J>{h * ea * (ec + b * emc), h * ea * emc, h * ema * emc, h * ema * (ec - b * emc)};
    };
    c.regular = [](std::span<const cd> u) -> Guard {
        if (small(u[3])) return "r = 0";
        return std::nullopt;
    };
    c.laplacian_id = "M42";
    c.figure_ref = real ? "Fig 5d" : "Fig 1b";
    c.chain = real ? std::vector<ChainNode>{node("E(2,2)", GroupKind::Euclidean), node("O(2,2)", GroupKind::PseudoOrthogonal),
                                            node("M1(0)", GroupKind::Masa)}
                   : std::vector<ChainNode>{node("E(4,C)", GroupKind::Euclidean), node("O(4,C)", GroupKind::Orthogonal),
                                            node("M42(0)", GroupKind::Masa)};
    c.paper_eq = "3.V4200";
    c.masa_id = real ? "M1_0" : "M42_0";
    c.notes.push_back("the r-translation carries a factor 1/2 so that the origin maps to r/2 (1,1,1,1)");
    c.norm_constant = 1.0;
    c.radius_param = 3;
    return c;
}

// ------------------------------------------------------------------- MANS

std::vector<ParamSpec> mans_params(bool real, bool m46 = false) {
    auto r = real ? rp("r", false, 0.3, 3.0, "0 <= r <= inf") : cp("r");
    auto z = real ? rp("z", true, -2.0, 2.0, "-inf < z < inf") : cp("z", true);
    auto a1 = real ? rp("a1", true, -2.0, 2.0, "-inf < a1 < inf") : cp("a1", true);
    auto a2 = real ? rp("a2", true, -2.0, 2.0, "-inf < a2 < inf") : cp("a2", true);
    if (m46) return {z, a1, a2, r};
    return {z, r, a1, a2};
}

std::vector<ChainNode> mans_chain(SpaceId space, std::string masa) {
    std::string e = space == SpaceId::M4C ? "E(4,C)" : space == SpaceId::M31 ? "E(3,1)" : "E(2,2)";
    return {node(e, GroupKind::Euclidean), node(std::move(masa), GroupKind::Masa)};
}

Chart m43_chart(SpaceId space) {
    Chart c;
    const bool real = space != SpaceId::M4C, split = space == SpaceId::M22;
    c.id = space == SpaceId::M4C ? "C_M43" : space == SpaceId::M31 ? "M31_M43" : "E22_f";
    c.name = "light-cone MANS chart";
    c.space = space;
    c.metric = split ? MetricForm::light_cone_split() : MetricForm::light_cone();
    c.params = mans_params(real);
    auto x2 = split ? gen(4, {{1, 3, one}, {3, 4, one}}, "E13+E34") : gen(4, {{1, 3, mone}, {3, 4, one}}, "-E13+E34");
    c.action = {make_step(gen(4, {{1, 2, mone}, {2, 4, one}}, "-E12+E24"), 2), make_step(x2, 3),
                make_step(transl(4, 1), 0), make_step(transl(4, 4), 1)};
    const double s = split ? -1.0 : 1.0;
    c.closed_form_text = {split ? "x1 = z - r/2 (a1^2 - a2^2)" : "x1 = z - r/2 (a1^2 + a2^2)", "x2 = r a1",
                          "x3 = r a2", "x4 = r"};
    c.closed_form = [s](U u) {
        const J &z = u[0], &r = u[1], &a1 = u[2], &a2 = u[3];
        return std::vector<J>{z - 0.5 * r * (a1 * a1 + s * a2 * a2), r * a1, r * a2, r};
    };
    c.regular = [](std::span<const cd> u) -> Guard {
        if (small(u[1])) return "r = 0";
        return std::nullopt;
    };
    c.laplacian_id = split ? "E22_f" : "M43";
    c.figure_ref = space == SpaceId::M4C ? "Fig 1c" : space == SpaceId::M31 ? "Fig 3b" : "Fig 5f";
    c.chain = mans_chain(space, "M43(1)");
    c.paper_eq = split ? "5.31" : "3.V431";
    c.masa_id = space == SpaceId::M4C ? "M43_1" : space == SpaceId::M31 ? "M31_M43_1" : "M22_M43_1";
    if (split) c.notes.push_back("light-cone form with middle block diag(1,-1) realizes signature (2,2)");
    return c;
}

Chart m46_chart(bool real) {
    Chart c;
    c.id = real ? "E22_i" : "C_M46";
    c.name = "doubly isotropic MANS chart";
    c.space = real ? SpaceId::M22 : SpaceId::M4C;
    c.metric = MetricForm::antidiagonal_blocks();
    c.params = mans_params(real, true);
    c.action = {make_step(gen(4, {{1, 4, one}, {2, 3, mone}, {4, 5, one}}, "E14-E23+E45"), 0),
                make_step(transl(4, 1), 1), make_step(transl(4, 2), 2), make_step(transl(4, 3), 3)};
    c.closed_form_text = {"x1 = a1 + z^2/2", "x2 = a2 - r z", "x3 = r", "x4 = z"};
    c.closed_form = [](U u) {
        const J &z = u[0], &a1 = u[1], &a2 = u[2], &r = u[3];
        return std::vector<J>{a1 + 0.5 * z * z, a2 - r * z, r, z};
    };
    c.laplacian_id = "M46";
    c.figure_ref = real ? "Fig 5i" : "Fig 1f";
    c.chain = mans_chain(c.space, "M46(2)");
    c.paper_eq = "3.V462";
    c.masa_id = real ? "M22_M46_2" : "M46_2";
    return c;
}

// ------------------------------------------------------------ 3.6 chains

Chart four_c(int which) {
    Chart c;
    c.id = "C_4C" + std::to_string(which);
    c.space = SpaceId::M4C;
    c.metric = MetricForm::identity(4);
    c.kind = ChartKind::Nonmaximal;
    const AlgebraElement l12 = rot(1, 2), l13 = rot(1, 3), l23 = rot(2, 3);
    const AlgebraElement g3 = rot(1, 4), g4 = transl(4, 1);
    // L12 - i L24 and L13 - i L34 are nilpotent (isotropic rotations).
    const AlgebraElement x1 = (l12 - Qi::i() * rot(2, 4)).set_label("L12-iL24");
    const AlgebraElement x2 = (l13 - Qi::i() * rot(3, 4)).set_label("L13-iL34");
    const AlgebraElement x1p = (l12 - Qi::i() * l23).set_label("L12-iL23");
    auto guard_rc = [](std::span<const cd> u) -> Guard {
        if (small(u[0])) return "r = 0";
        if (small(std::cos(u[1]))) return "cos c = 0";
        return std::nullopt;
    };
    std::vector<ChainNode> head = {node("E(4,C)", GroupKind::Euclidean), node("O(4,C)", GroupKind::Orthogonal)};
    switch (which) {
        case 1:
            c.name = "complex spherical";
            c.params = {cp("r"), cp("c"), cp("b"), cp("a", true)};
            c.action = {make_step(l12, 3), make_step(l13, 2), make_step(g3, 1), make_step(g4, 0)};
            c.closed_form_text = {"x1 = r cos c cos b cos a", "x2 = r cos c cos b sin a", "x3 = r cos c sin b",
                                  "x4 = r sin c"};
            c.closed_form = [](U u) {
                const J &r = u[0], &cc = u[1], &b = u[2], &a = u[3];
                J rc = r * cos(cc), rcb = rc * cos(b);
                return std::vector<J>{rcb * cos(a), rcb * sin(a), rc * sin(b), r * sin(cc)};
            };
            c.regular = [](std::span<const cd> u) -> Guard {
                if (small(u[0])) return "r = 0";
                if (small(std::cos(u[1]))) return "cos c = 0";
                if (small(std::cos(u[2]))) return "cos b = 0";
                return std::nullopt;
            };
            c.chain = head;
            c.chain.push_back(node("O(3,C)", GroupKind::Orthogonal));
            c.chain.push_back(node("O(2,C)", GroupKind::Orthogonal));
            c.figure_ref = "Fig 2a";
            break;
        case 2:
            c.name = "complex spherical with isotropic rotation";
            c.params = {cp("r"), cp("c"), cp("b"), cp("a", true)};
            c.action = {make_step(x1p, 3), make_step(l13, 2), make_step(g3, 1), make_step(g4, 0)};
            c.closed_form_text = {"x1 = r cos c (cos b - a^2/2 e^{ib})", "x2 = r cos c a e^{ib}",
                                  "x3 = r cos c (sin b - i a^2/2 e^{ib})", "x4 = r sin c"};
            c.closed_form = [](U u) {
                const J &r = u[0], &cc = u[1], &b = u[2], &a = u[3];
                J rc = r * cos(cc), e = exp(I * b), h = 0.5 * a * a * e;
                return std::vector<J>{rc * (cos(b) - h), rc * a * e, rc * (sin(b) - I * h), r * sin(cc)};
            };
            c.regular = guard_rc;
            c.chain = head;
            c.chain.push_back(node("O(3,C)", GroupKind::Orthogonal));
            c.chain.push_back(node("E(1,C)", GroupKind::Unipotent));
            c.figure_ref = "Fig 2b";
            c.notes.push_back("isotropic generator taken as L12 - i L23; L12 - i L24 leaves the O(3,C) subgroup and does "
                              "not reproduce the closed form");
            break;
        case 3:
            c.name = "complex horospherical with rotation";
            c.params = {cp("r"), cp("c"), cp("b"), cp("a", true)};
            c.action = {make_step(l23, 3), make_step(x1, 2), make_step(g3, 1), make_step(g4, 0)};
            c.closed_form_text = {"x1 = r (cos c - b^2/2 e^{ic})", "x2 = r b e^{ic} cos a", "x3 = r b e^{ic} sin a",
                                  "x4 = r (sin c - i b^2/2 e^{ic})"};
            c.closed_form = [](U u) {
                const J &r = u[0], &cc = u[1], &b = u[2], &a = u[3];
                J e = exp(I * cc), h = 0.5 * b * b * e, rbe = r * b * e;
                return std::vector<J>{r * (cos(cc) - h), rbe * cos(a), rbe * sin(a), r * (sin(cc) - I * h)};
            };
            c.regular = [](std::span<const cd> u) -> Guard {
                if (small(u[0])) return "r = 0";
                if (small(u[2])) return "b = 0";
                return std::nullopt;
            };
            c.chain = head;
            c.chain.push_back(node("E(2,C)", GroupKind::Euclidean));
            c.chain.push_back(node("O(2,C)", GroupKind::Orthogonal));
            c.figure_ref = "Fig 2c";
            break;
        default:
            c.name = "complex horospherical";
            c.params = {cp("r"), cp("c"), cp("a1", true), cp("a2", true)};
            c.action = {make_step(x1, 2), make_step(x2, 3), make_step(g3, 1), make_step(g4, 0)};
            c.closed_form_text = {"x1 = r (cos c - (a1^2 + a2^2)/2 e^{ic})", "x2 = r a1 e^{ic}", "x3 = r a2 e^{ic}",
                                  "x4 = r (sin c - i (a1^2 + a2^2)/2 e^{ic})"};
            c.closed_form = [](U u) {
                const J &r = u[0], &cc = u[1], &a1 = u[2], &a2 = u[3];
                J e = exp(I * cc), h = 0.5 * (a1 * a1 + a2 * a2) * e, re = r * e;
                return std::vector<J>{r * (cos(cc) - h), re * a1, re * a2, r * (sin(cc) - I * h)};
            };
            c.regular = [](std::span<const cd> u) -> Guard {
                if (small(u[0])) return "r = 0";
                return std::nullopt;
            };
            c.chain = head;
            c.chain.push_back(node("E(2,C)", GroupKind::Euclidean));
            c.chain.push_back(node("E(1,C)xE(1,C)", GroupKind::Unipotent));
            c.figure_ref = "Fig 2d";
            break;
    }
    c.laplacian_id = "4C" + std::to_string(which);
    c.paper_eq = "3.4C" + std::to_string(which);
    c.norm_constant = 1.0;
    c.radius_param = 0;
    return c;
}

Chart real_spherical() {
    Chart c = four_c(1);
    c.id = "R4_sph";
    c.name = "spherical";
    c.space = SpaceId::M4R;
    c.params = {rp("r", false, 0.3, 3.0, "0 <= r <= inf"), rp("c", false, 0.0, kPi, "0 <= c <= pi"),
                rp("b", false, 0.0, kPi, "0 <= b <= pi"), rp("a", true, 0.0, 2 * kPi, "0 <= a < 2pi")};
    c.chain = {node("E(4)", GroupKind::Euclidean), node("O(4)", GroupKind::Orthogonal), node("O(3)", GroupKind::Orthogonal),
               node("O(2)", GroupKind::Orthogonal)};
    c.figure_ref = "Fig 2a (real)";
    return c;
}

// -------------------------------------------------------------- M(3,C)

Chart m3c_chart(int kappa) {
    Chart c;
    c.id = kappa == 0 ? "C_3C_k0" : "C_3C_k1";
    c.name = kappa == 0 ? "M(3,C) MANS chart, kappa = 0" : "M(3,C) MANS chart, kappa = 1";
    c.space = SpaceId::M3C;
    c.metric = MetricForm::full_antidiagonal(3);
    c.params = {cp("a", true), cp("z", true), cp("r")};
    if (kappa == 0) {
        c.action = {make_step(gen(3, {{1, 2, one}, {2, 3, mone}}, "E12-E23"), 0), make_step(transl(3, 1), 1),
                    make_step(transl(3, 3), 2)};
        c.closed_form_text = {"x1 = z - r a^2/2", "x2 = -a r", "x3 = r"};
        c.closed_form = [](U u) {
            const J &a = u[0], &z = u[1], &r = u[2];
            return std::vector<J>{z - 0.5 * r * a * a, -a * r, r};
        };
        c.regular = [](std::span<const cd> u) -> Guard {
            if (small(u[2])) return "r = 0";
            return std::nullopt;
        };
    } else {
        c.action = {make_step(gen(3, {{1, 2, one}, {2, 3, mone}, {3, 4, mone}}, "E12-E23-E34"), 0),
                    make_step(transl(3, 1), 1), make_step(transl(3, 2), 2)};
        c.closed_form_text = {"x1 = z + a r + a^3/6", "x2 = r + a^2/2", "x3 = -a"};
        c.closed_form = [](U u) {
            const J &a = u[0], &z = u[1], &r = u[2];
            return std::vector<J>{z + a * r + a * a * a / 6.0, r + 0.5 * a * a, -a};
        };
    }
    c.laplacian_id = kappa == 0 ? "M3C_k0" : "M3C_k1";
    c.figure_ref = "";
    c.chain = {node("E(3,C)", GroupKind::Euclidean), node(kappa == 0 ? "B3(0)" : "B3(1)", GroupKind::Masa)};
    c.paper_eq = kappa == 0 ? "3.eqM3C_kapa0" : "3.eqM3C_kapa1";
    c.masa_id = kappa == 0 ? "M3C_k0" : "M3C_k1";
    c.family["kappa"] = double(kappa);
    return c;
}

// ---------------------------------------------------------------- M(3,1)

Chart m31_cylindrical() {
    Chart c;
    c.id = "M31_cyl";
    c.name = "pseudo-cylindrical";
    c.space = SpaceId::M31;
    c.metric = MetricForm::diagonal({1, 1, 1, -1});
    c.params = {rp("r", false, 0.3, 3.0, "0 <= r <= inf"), rp("c", false, 0.0, 2.0, "0 <= c < inf"),
                rp("a", true, 0.0, 2 * kPi, "0 <= a < 2pi"), rp("b", true, 0.0, 2.0, "0 <= b < inf")};
    c.action = {make_step(rot(1, 2), 2), make_step(boost(3, 4), 3), make_step(boost(1, 4), 1),
                make_step(transl(4, 4), 0)};
    c.closed_form_text = {"x1 = r sinh c cos a", "x2 = r sinh c sin a", "x3 = r cosh c sinh b", "x4 = r cosh c cosh b"};
    c.closed_form = [](U u) {
        const J &r = u[0], &cc = u[1], &a = u[2], &b = u[3];
        J rs = r * sinh(cc), rc = r * cosh(cc);
        return std::vector<J>{rs * cos(a), rs * sin(a), rc * sinh(b), rc * cosh(b)};
    };
    c.regular = [](std::span<const cd> u) -> Guard {
        if (small(u[0])) return "r = 0";
        if (small(std::sinh(u[1]))) return "sinh c = 0";
        return std::nullopt;
    };
    c.laplacian_id = "M31_cyl";
    c.figure_ref = "Fig 3a";
    c.chain = {node("E(3,1)", GroupKind::Euclidean), semicircle("O(3,1)"), node("O(2)xO(1,1)", GroupKind::Masa)};
    c.paper_eq = "4.1";
    c.masa_id = "M31_Cartan";
    c.notes.push_back("group action not printed; reconstructed as exp(a L12) exp(b B34) exp(c B14) exp(r E45)");
    c.notes.push_back("orbits r = const are two-sheeted hyperboloids <x,Kx> = -r^2");
    c.norm_constant = -1.0;
    c.radius_param = 0;
    return c;
}

Chart m31_stub(char tag, std::vector<ChainNode> tail) {
    Chart c;
    c.id = std::string("M31_4") + tag;
    c.name = "hyperbolic-space chain (details out of scope)";
    c.space = SpaceId::M31;
    c.metric = MetricForm::diagonal({1, 1, 1, -1});
    c.kind = ChartKind::Stub;
    c.figure_ref = std::string("Fig 4") + tag;
    c.chain = {node("E(3,1)", GroupKind::Euclidean), semicircle("O(3,1)")};
    for (auto& n : tail) c.chain.push_back(std::move(n));
    c.notes.push_back("coordinates on the hyperboloid are not detailed; chain recorded only");
    return c;
}

// ---------------------------------------------------------------- M(2,2)

std::vector<ParamSpec> e22_sphere_params(bool c_positive = true) {
    return {rp("r", false, 0.3, 3.0, "0 <= r < inf"),
            c_positive ? rp("c", false, 0.0, 2.0, "0 <= c < inf") : rp("c", false, -1.5, 1.5, "-inf < c < inf"),
            rp("a", true, 0.0, 2 * kPi, "0 <= a < 2pi"), rp("b", true, 0.0, 2 * kPi, "0 <= b < 2pi")};
}

std::vector<ChainNode> e22_head() {
    return {node("E(2,2)", GroupKind::Euclidean), node("O(2,2)", GroupKind::PseudoOrthogonal)};
}

Chart e22_a() {
    Chart c;
    c.id = "E22_a";
    c.name = "compact Cartan chart";
    c.space = SpaceId::M22;
    c.metric = MetricForm::diagonal({1, 1, -1, -1});
    c.params = e22_sphere_params();
    c.action = {make_step(rot(1, 2), 2), make_step(rot(3, 4), 3), make_step(boost(1, 3), 1), make_step(transl(4, 1), 0)};
    c.closed_form_text = {"x1 = r cosh c cos a", "x2 = r cosh c sin a", "x3 = r sinh c cos b", "x4 = r sinh c sin b"};
    c.closed_form = [](U u) {
        const J &r = u[0], &cc = u[1], &a = u[2], &b = u[3];
        J rc = r * cosh(cc), rs = r * sinh(cc);
        return std::vector<J>{rc * cos(a), rc * sin(a), rs * cos(b), rs * sin(b)};
    };
    c.regular = [](std::span<const cd> u) -> Guard {
        if (small(u[0])) return "r = 0";
        if (small(std::exp(4.0 * u[1]) - 1.0)) return "e^{2c} = +-1";
        if (small(std::exp(2.0 * u[1]) + 1.0)) return "e^{2c} = -1";
        return std::nullopt;
    };
    c.laplacian_id = "E22_a";
    c.figure_ref = "Fig 5a";
    c.chain = e22_head();
    c.chain.push_back(node("O(2)xO(2)", GroupKind::Masa));
    c.paper_eq = "5.4";
    c.masa_id = "CartanCompact";
    c.norm_constant = 1.0;
    c.radius_param = 0;
    return c;
}

Chart e22_b() {
    Chart c = e22_a();
    c.id = "E22_b";
    c.name = "noncompact Cartan chart";
    c.params = {rp("r", false, 0.3, 3.0, "0 <= r < inf"), rp("c", false, 0.0, 2.0, "0 <= c < inf"),
                rp("a", true, -1.5, 1.5, "-inf < a < inf"), rp("b", true, -1.5, 1.5, "-inf < b < inf")};
    c.action = {make_step(boost(1, 3), 2), make_step(boost(2, 4), 3), make_step(boost(1, 4), 1),
                make_step(transl(4, 1), 0)};
    c.closed_form_text = {"x1 = r cosh c cosh a", "x2 = r sinh c sinh b", "x3 = r cosh c sinh a", "x4 = r sinh c cosh b"};
    c.closed_form = [](U u) {
        const J &r = u[0], &cc = u[1], &a = u[2], &b = u[3];
        J rc = r * cosh(cc), rs = r * sinh(cc);
        return std::vector<J>{rc * cosh(a), rs * sinh(b), rc * sinh(a), rs * cosh(b)};
    };
    c.laplacian_id = "E22_b";
    c.figure_ref = "Fig 5b";
    c.chain = e22_head();
    c.chain.push_back(node("O(1,1)xO(1,1)", GroupKind::Masa));
    c.paper_eq = "5.10";
    c.masa_id = "CartanNoncompact";
    return c;
}

Chart e22_c() {
    Chart c;
    c.id = "E22_c";
    c.name = "mixed Cartan chart";
    c.space = SpaceId::M22;
    c.metric = MetricForm::antidiagonal_blocks();
    c.params = {rp("r", false, 0.3, 3.0, "0 <= r < inf"), rp("c", false, -1.5, 1.5, "-inf < c < inf"),
                rp("a", true, -1.5, 1.5, "-inf < a < inf"), rp("b", true, 0.0, 2 * kPi, "0 <= b < 2pi")};
    c.action = {make_step(gen(4, {{1, 1, one}, {2, 2, one}, {3, 3, mone}, {4, 4, mone}}, "E11+E22-E33-E44"), 2),
                make_step(gen(4, {{1, 2, mone}, {2, 1, one}, {3, 4, mone}, {4, 3, one}}, "-E12+E21-E34+E43"), 3),
                make_step(gen(4, {{1, 2, one}, {2, 1, one}, {3, 4, mone}, {4, 3, mone}}, "E12+E21-E34-E43"), 1),
                make_step(gen(4, {{1, 5, one}, {3, 5, one}}, "E15+E35"), 0, kInvSqrt2)};
    c.closed_form_text = {"x1 = r/sqrt2 e^a (cosh c cos b - sinh c sin b)",
                          "x2 = r/sqrt2 e^a (cosh c sin b + sinh c cos b)",
                          "x3 = r/sqrt2 e^-a (cosh c cos b + sinh c sin b)",
                          "x4 = r/sqrt2 e^-a (cosh c sin b - sinh c cos b)"};
    c.closed_form = [](U u) {
        const J &r = u[0], &cc = u[1], &a = u[2], &b = u[3];
        J p = kInvSqrt2 * r * exp(a), m = kInvSqrt2 * r * exp(-a);
        J ch = cosh(cc), sh = sinh(cc), cb = cos(b), sb = sin(b);
        return std::vector<J>{p * (ch * cb - sh * sb), p * (ch * sb + sh * cb), m * (ch * cb + sh * sb),
                              m * (ch * sb - sh * cb)};
    };
    c.regular = [](std::span<const cd> u) -> Guard {
        if (small(u[0])) return "r = 0";
        if (small(std::cosh(2.0 * u[1]))) return "cosh 2c = 0";
        return std::nullopt;
    };
    c.laplacian_id = "E22_c";
    c.figure_ref = "Fig 5c";
    c.chain = e22_head();
    c.chain.push_back(node("O(1,1)xO(2)", GroupKind::Masa));
    c.paper_eq = "5.16";
    c.masa_id = "CartanMixed";
    c.notes.push_back("group action rebuilt from the mixed Cartan matrix; the printed b-generator is not an isometry");
    c.norm_constant = 1.0;
    c.radius_param = 0;
    return c;
}

Chart e22_e() {
    Chart c;
    c.id = "E22_e";
    c.name = "AOID, ID but NAID chart";
    c.space = SpaceId::M22;
    c.metric = MetricForm::antidiagonal_blocks();
    c.params = {rp("r", false, 0.3, 3.0, "0 <= r < inf"), rp("c", false, -1.0, 1.0, "-inf < c < inf"),
                rp("a", true, 0.0, 2 * kPi, "0 <= a < 2pi"), rp("b", true, 0.0, 2.0, "0 <= b < inf")};
    c.action = {make_step(gen(4, {{1, 2, mone}, {2, 1, one}, {3, 4, mone}, {4, 3, one}}, "-E12+E21-E34+E43"), 2),
                make_step(gen(4, {{1, 4, one}, {2, 3, mone}}, "E14-E23"), 3),
                make_step(gen(4, {{1, 1, one}, {2, 2, one}, {3, 3, mone}, {4, 4, mone}}, "E11+E22-E33-E44"), 1),
                make_step(gen(4, {{1, 5, one}, {3, 5, one}}, "E15+E35"), 0, kInvSqrt2)};
    c.closed_form_text = {"x1 = r/sqrt2 (e^c cos a + b e^-c sin a)", "x2 = r/sqrt2 (e^c sin a - b e^-c cos a)",
                          "x3 = r/sqrt2 e^-c cos a", "x4 = r/sqrt2 e^-c sin a"};
    c.closed_form = [](U u) {
        const J &r = u[0], &cc = u[1], &a = u[2], &b = u[3];
        J h = kInvSqrt2 * r, ec = exp(cc), emc = exp(-cc), ca = cos(a), sa = sin(a);
        return std::vector<J>{h * (ec * ca + b * emc * sa), h * (ec * sa - b * emc * ca), h * emc * ca, h * emc * sa};
    };
    c.regular = [](std::span<const cd> u) -> Guard {
        if (small(u[0])) return "r = 0";
        return std::nullopt;
    };
    c.laplacian_id = "E22_e";
    c.figure_ref = "Fig 5e";
    c.chain = e22_head();
    c.chain.push_back(node("M2(0)", GroupKind::Masa));
    c.paper_eq = "5.27";
    c.masa_id = "M2_0";
    c.notes.push_back("a-generator read as -E12+E21-E34+E43 from the matrix form; the printed action repeats E34");
    c.notes.push_back("c-generator taken as +(E11+E22-E33-E44); the printed sign maps c to -c in the closed form");
    c.notes.push_back("origin translation carries 1/sqrt2 so that <x,Kx> = r^2");
    c.norm_constant = 1.0;
    c.radius_param = 0;
    return c;
}

// Nonmaximal (2,2) charts; K = diag(1,1,-1,-1) throughout.
Chart e22_nonmax(char tag) {
    Chart c;
    c.id = std::string("E22_6") + tag;
    c.space = SpaceId::M22;
    c.metric = MetricForm::diagonal({1, 1, -1, -1});
    c.kind = ChartKind::Nonmaximal;
    const auto r = rp("r", false, 0.3, 3.0, "0 <= r < inf");
    const auto cpar = rp("c", false, -1.5, 1.5, "-inf < c < inf");
    const AlgebraElement g3 = boost(1, 4), g4 = transl(4, 1);
    auto guard_r = [](std::span<const cd> u) -> Guard {
        if (small(u[0])) return "r = 0";
        return std::nullopt;
    };
    c.chain = e22_head();
    c.regular = guard_r;
    switch (tag) {
        case 'a':
            c.name = "pseudo-spherical, O(2,1) > O(2)";
            c.params = {r, cpar, rp("b", false, -1.5, 1.5, "-inf < b < inf"), rp("a", true, 0.0, 2 * kPi, "0 <= a < 2pi")};
            c.action = {make_step(rot(1, 2), 3), make_step(boost(1, 3), 2), make_step(g3, 1), make_step(g4, 0)};
            c.closed_form_text = {"x1 = r cosh c cosh b cos a", "x2 = r cosh c cosh b sin a", "x3 = r cosh c sinh b",
                                  "x4 = r sinh c"};
            c.closed_form = [](U u) {
                const J &rr = u[0], &cc = u[1], &b = u[2], &a = u[3];
                J rc = rr * cosh(cc), rcb = rc * cosh(b);
                return std::vector<J>{rcb * cos(a), rcb * sin(a), rc * sinh(b), rr * sinh(cc)};
            };
            c.chain.push_back(semicircle("O(2,1)"));
            c.chain.push_back(node("O(2)", GroupKind::Orthogonal));
            break;
        case 'b':
            c.name = "pseudo-spherical, O(2,1) > O(1,1)";
            c.params = {r, cpar, rp("b", false, -1.2, 1.2, "-pi/2 < b < pi/2"), rp("a", true, -1.5, 1.5, "-inf < a < inf")};
            c.action = {make_step(boost(1, 3), 3), make_step(rot(1, 2), 2), make_step(g3, 1), make_step(g4, 0)};
            c.closed_form_text = {"x1 = r cosh c cos b cosh a", "x2 = r cosh c sin b", "x3 = r cosh c cos b sinh a",
                                  "x4 = r sinh c"};
            c.closed_form = [](U u) {
                const J &rr = u[0], &cc = u[1], &b = u[2], &a = u[3];
                J rc = rr * cosh(cc), rcb = rc * cos(b);
                return std::vector<J>{rcb * cosh(a), rc * sin(b), rcb * sinh(a), rr * sinh(cc)};
            };
            c.regular = [](std::span<const cd> u) -> Guard {
                if (small(u[0])) return "r = 0";
                if (small(std::cos(u[2]))) return "cos b = 0";
                return std::nullopt;
            };
            c.chain.push_back(semicircle("O(2,1)"));
            c.chain.push_back(node("O(1,1)", GroupKind::PseudoOrthogonal));
            break;
        case 'c':
            c.name = "pseudo-spherical, O(2,1) > E(1)";
            c.params = {r, cpar, rp("b", false, -1.5, 1.5, "-inf < b < inf"), rp("a", true, -1.5, 1.5, "-inf < a < inf")};
            c.action = {make_step(gen(4, {{1, 2, mone}, {2, 1, one}, {2, 3, one}, {3, 2, one}}, "-E12+E21+E23+E32"), 3),
                        make_step(boost(1, 3), 2), make_step(g3, 1), make_step(g4, 0)};
            c.closed_form_text = {"x1 = r cosh c (cosh b - a^2/2 e^b)", "x2 = r cosh c a e^b",
                                  "x3 = r cosh c (sinh b + a^2/2 e^b)", "x4 = r sinh c"};
            c.closed_form = [](U u) {
                const J &rr = u[0], &cc = u[1], &b = u[2], &a = u[3];
                J rc = rr * cosh(cc), e = exp(b), h = 0.5 * a * a * e;
                return std::vector<J>{rc * (cosh(b) - h), rc * a * e, rc * (sinh(b) + h), rr * sinh(cc)};
            };
            c.chain.push_back(semicircle("O(2,1)"));
            c.chain.push_back(node("E(1)", GroupKind::Unipotent));
            break;
        case 'd':
            c.name = "pseudo-horospherical with boost";
            c.params = {r, cpar, rp("b", false, 0.3, 2.0, "0 < b < inf"), rp("a", true, -1.5, 1.5, "-inf < a < inf")};
            c.action = {make_step(boost(2, 3), 3),
                        make_step(gen(4, {{1, 2, mone}, {2, 1, one}, {2, 4, one}, {4, 2, one}}, "-E12+E21+E24+E42"), 2),
                        make_step(g3, 1), make_step(g4, 0)};
            c.closed_form_text = {"x1 = r (cosh c - b^2/2 e^c)", "x2 = r b e^c cosh a", "x3 = r b e^c sinh a",
                                  "x4 = r (sinh c + b^2/2 e^c)"};
            c.closed_form = [](U u) {
                const J &rr = u[0], &cc = u[1], &b = u[2], &a = u[3];
                J e = exp(cc), h = 0.5 * b * b * e, rbe = rr * b * e;
                return std::vector<J>{rr * (cosh(cc) - h), rbe * cosh(a), rbe * sinh(a), rr * (sinh(cc) + h)};
            };
            c.regular = [](std::span<const cd> u) -> Guard {
                if (small(u[0])) return "r = 0";
                if (small(u[2])) return "b = 0";
                return std::nullopt;
            };
            c.chain.push_back(node("E(1,1)", GroupKind::Euclidean));
            c.chain.push_back(node("O(1,1)", GroupKind::PseudoOrthogonal));
            break;
        default:
            c.name = "pseudo-horospherical";
            c.params = {r, cpar, rp("a", true, -1.5, 1.5, "-inf < a < inf"), rp("b", true, -1.5, 1.5, "-inf < b < inf")};
            c.action = {make_step(gen(4, {{1, 2, mone}, {2, 1, one}, {2, 4, one}, {4, 2, one}}, "-E12+E21+E24+E42"), 2),
                        make_step(gen(4, {{1, 3, one}, {3, 1, one}, {3, 4, one}, {4, 3, mone}}, "E13+E31+E34-E43"), 3),
                        make_step(g3, 1), make_step(g4, 0)};
            c.closed_form_text = {"x1 = r (cosh c - (a^2 - b^2)/2 e^c)", "x2 = r a e^c", "x3 = r b e^c",
                                  "x4 = r (sinh c + (a^2 - b^2)/2 e^c)"};
            c.closed_form = [](U u) {
                const J &rr = u[0], &cc = u[1], &a = u[2], &b = u[3];
                J e = exp(cc), h = 0.5 * (a * a - b * b) * e, re = rr * e;
                return std::vector<J>{rr * (cosh(cc) - h), re * a, re * b, rr * (sinh(cc) + h)};
            };
            c.chain.push_back(node("E(1,1)", GroupKind::Euclidean));
            c.chain.push_back(node("E(1)xE(1)", GroupKind::Unipotent));
            break;
    }
    c.laplacian_id = c.id;
    c.figure_ref = std::string("Fig 6") + tag;
    c.paper_eq = std::string("5.6") + tag;
    c.norm_constant = 1.0;
    c.radius_param = 0;
    return c;
}

// ----------------------------------------------------------- decomposable

Chart decomposable_line() {
    Chart c;
    c.id = "D_line_C";
    c.name = "Cartesian line factor";
    c.space = SpaceId::M4C;
    c.metric = MetricForm::identity(1);
    c.kind = ChartKind::Decomposable;
    c.params = {cp("s", true)};
    c.action = {make_step(gen(1, {{1, 2, one}}, "E12"), 0)};
    c.closed_form_text = {"x1 = s"};
    c.closed_form = [](U u) { return std::vector<J>{u[0]}; };
    c.chain = {node("E(1,C)", GroupKind::Euclidean)};
    return c;
}

Chart decomposable_polar(bool real) {
    Chart c;
    c.id = real ? "D_polar_R" : "D_polar_C";
    c.name = real ? "polar factor" : "complex polar factor";
    c.space = real ? SpaceId::M4R : SpaceId::M4C;
    c.metric = MetricForm::identity(2);
    c.kind = ChartKind::Decomposable;
    c.params = real ? std::vector<ParamSpec>{rp("r", false, 0.3, 3.0, "0 <= r < inf"),
                                             rp("a", true, 0.0, 2 * kPi, "0 <= a < 2pi")}
                    : std::vector<ParamSpec>{cp("r"), cp("a", true)};
    c.action = {make_step(gen(2, {{1, 2, mone}, {2, 1, one}}, "-E12+E21"), 1), make_step(transl(2, 1), 0)};
    c.closed_form_text = {"x1 = r cos a", "x2 = r sin a"};
    c.closed_form = [](U u) { return std::vector<J>{u[0] * cos(u[1]), u[0] * sin(u[1])}; };
    c.regular = [](std::span<const cd> u) -> Guard {
        if (small(u[0])) return "r = 0";
        return std::nullopt;
    };
    c.chain = {node(real ? "E(2)" : "E(2,C)", GroupKind::Euclidean), node(real ? "O(2)" : "O(2,C)", GroupKind::Orthogonal)};
    c.norm_constant = 1.0;
    c.radius_param = 0;
    return c;
}

Chart decomposable_hyperbolic() {
    Chart c;
    c.id = "D_hyperbolic";
    c.name = "hyperbolic polar factor";
    c.space = SpaceId::M22;
    c.metric = MetricForm::diagonal({1, -1});
    c.kind = ChartKind::Decomposable;
    c.params = {rp("r", false, 0.3, 3.0, "0 <= r < inf"), rp("a", true, -1.5, 1.5, "-inf < a < inf")};
    c.action = {make_step(gen(2, {{1, 2, one}, {2, 1, one}}, "E12+E21"), 1), make_step(transl(2, 1), 0)};
    c.closed_form_text = {"x1 = r cosh a", "x2 = r sinh a"};
    c.closed_form = [](U u) { return std::vector<J>{u[0] * cosh(u[1]), u[0] * sinh(u[1])}; };
    c.regular = [](std::span<const cd> u) -> Guard {
        if (small(u[0])) return "r = 0";
        return std::nullopt;
    };
    c.chain = {node("E(1,1)", GroupKind::Euclidean), node("O(1,1)", GroupKind::PseudoOrthogonal)};
    c.norm_constant = 1.0;
    c.radius_param = 0;
    return c;
}

Chart m47_cartesian() {
    Chart c;
    c.id = "C_M47_cart";
    c.name = "Cartesian chart left by the degenerate MANS";
    c.space = SpaceId::M4C;
    c.metric = MetricForm::antidiagonal_blocks();
    c.kind = ChartKind::Decomposable;
    c.params = {cp("a1", true), cp("a2", true), cp("s3"), cp("s4")};
    c.action = {make_step(transl(4, 1), 0), make_step(transl(4, 2), 1), make_step(transl(4, 3), 2),
                make_step(transl(4, 4), 3)};
    c.closed_form_text = {"x1 = a1", "x2 = a2", "x3 = s3", "x4 = s4"};
    c.closed_form = [](U u) { return std::vector<J>(u.begin(), u.end()); };
    c.laplacian_id = "M47_cart";
    c.chain = {node("E(4,C)", GroupKind::Euclidean), node("M47(2)", GroupKind::Masa)};
    c.paper_eq = "3.V472";
    c.masa_id = "M47_2";
    c.notes.push_back("the degenerate MANS sweeps 2-dimensional orbits; coordinates are Cartesian");
    return c;
}

// --------------------------------------------------------------- catalogs

struct Catalogs {
    std::map<SpaceId, std::vector<Chart>> by_space;
    std::vector<Chart> decomposable;
    std::map<std::string, const Chart*> index;
};

const Catalogs& catalogs() {
    static const Catalogs cats = [] {
        Catalogs c;
        c.by_space[SpaceId::M4C] = {cylindrical(false),
                                    m42_chart(false),
                                    m43_chart(SpaceId::M4C),
                                    make_chart_m44(Qi::frac(1, 3, 1, 4)),
                                    make_chart_m45(Qi(1)),
                                    m46_chart(false),
                                    four_c(1),
                                    four_c(2),
                                    four_c(3),
                                    four_c(4)};
        c.by_space[SpaceId::M3C] = {m3c_chart(0), m3c_chart(1)};
        c.by_space[SpaceId::M4R] = {cylindrical(true), real_spherical()};
        c.by_space[SpaceId::M31] = {
            m31_cylindrical(),
            m43_chart(SpaceId::M31),
            make_chart_m44(Qi::frac(-1, 2), SpaceId::M31),
            m31_stub('a', {node("O(3)", GroupKind::Orthogonal), node("O(2)", GroupKind::Orthogonal)}),
            m31_stub('b', {semicircle("O(2,1)"), node("O(2)", GroupKind::Orthogonal)}),
            m31_stub('c', {semicircle("O(2,1)"), node("O(1,1)", GroupKind::PseudoOrthogonal)}),
            m31_stub('d', {semicircle("O(2,1)"), node("E(1)", GroupKind::Unipotent)}),
            m31_stub('e', {node("E(2)", GroupKind::Euclidean), node("O(2)", GroupKind::Orthogonal)}),
            m31_stub('f', {node("E(2)", GroupKind::Euclidean), node("E(1)xE(1)", GroupKind::Unipotent)})};
        c.by_space[SpaceId::M22] = {e22_a(),
                                    e22_b(),
                                    e22_c(),
                                    m42_chart(true),
                                    e22_e(),
                                    m43_chart(SpaceId::M22),
                                    make_chart_m44(Qi::frac(1, 2), SpaceId::M22),
                                    make_chart_m45(Qi(1), SpaceId::M22),
                                    m46_chart(true),
                                    e22_nonmax('a'),
                                    e22_nonmax('b'),
                                    e22_nonmax('c'),
                                    e22_nonmax('d'),
                                    e22_nonmax('e')};
        c.decomposable = {decomposable_line(), decomposable_polar(false), decomposable_polar(true),
                          decomposable_hyperbolic(), m47_cartesian()};
        for (auto& [space, charts] : c.by_space)
            for (auto& ch : charts) c.index[ch.id] = &ch;
        for (auto& ch : c.decomposable) c.index[ch.id] = &ch;
        return c;
    }();
    return cats;
}

}  // namespace

Chart make_chart_m44(const Qi& beta, SpaceId space) {
    if (space == SpaceId::M4C || space == SpaceId::M3C || space == SpaceId::M4R) space = SpaceId::M4C;
    if (space != SpaceId::M4C) {
        if (!beta.is_real()) throw std::invalid_argument("real forms need real beta");
        const auto b = beta.to_complex().real();
        if (b < -1 || b > 1) throw std::invalid_argument("real forms need -1 <= beta <= 1");
    }
    Chart c;
    const bool real = space != SpaceId::M4C, split = space == SpaceId::M22;
    c.id = space == SpaceId::M4C ? "C_M44" : space == SpaceId::M31 ? "M31_M44" : "E22_g";
    c.name = "light-cone MANS chart with beta";
    c.space = space;
    c.metric = split ? MetricForm::light_cone_split() : MetricForm::light_cone();
    c.params = mans_params(real);
    auto x2 = gen(4, {{1, 3, split ? one : mone}, {3, 4, one}, {3, 5, beta}}, (split ? "E13" : "-E13") + std::string("+E34+beta*E35"));
    c.action = {make_step(gen(4, {{1, 2, mone}, {2, 4, one}, {2, 5, one}}, "-E12+E24+E25"), 2), make_step(x2, 3),
                make_step(transl(4, 1), 0), make_step(transl(4, 4), 1)};
    const cd b = beta.to_complex();
    const double s = split ? -1.0 : 1.0;
    c.closed_form_text = {split ? "x1 = z - a1^2 (r+1)/2 + a2^2 (r+beta)/2" : "x1 = z - r/2 (a1^2 + a2^2) - (a1^2 + beta a2^2)/2",
                          "x2 = (r+1) a1", "x3 = (r+beta) a2", "x4 = r"};
    c.closed_form = [b, s](U u) {
        const J &z = u[0], &r = u[1], &a1 = u[2], &a2 = u[3];
        return std::vector<J>{z - 0.5 * (r + 1.0) * a1 * a1 - 0.5 * s * (r + b) * a2 * a2, (r + 1.0) * a1, (r + b) * a2, r};
    };
    c.regular = [b](std::span<const cd> u) -> Guard {
        if (small(u[1] + 1.0)) return "r + 1 = 0";
        if (small(u[1] + b)) return "r + beta = 0";
        return std::nullopt;
    };
    c.laplacian_id = split ? "E22_g" : "M44";
    c.figure_ref = space == SpaceId::M4C ? "Fig 1d" : space == SpaceId::M31 ? "Fig 3c" : "Fig 5g";
    c.chain = mans_chain(space, "M44(1)");
    c.paper_eq = split ? "5.33" : "3.V441";
    c.masa_id = space == SpaceId::M4C ? "M44_1" : space == SpaceId::M31 ? "M31_M44_1" : "M22_M44_1";
    c.family["beta"] = b;
    return c;
}

Chart make_chart_m45(const Qi& kappa, SpaceId space) {
    const bool real = space == SpaceId::M22;
    if (real && !kappa.is_real()) throw std::invalid_argument("real forms need real kappa");
    Chart c;
    c.id = real ? "E22_h" : "C_M45";
    c.name = "full-antidiagonal MANS chart";
    c.space = real ? SpaceId::M22 : SpaceId::M4C;
    c.metric = MetricForm::full_antidiagonal(4);
    c.params = mans_params(real);
    c.action = {make_step(gen(4, {{1, 2, mone}, {3, 4, one}, {3, 5, kappa}}, "-E12+E34+kappa*E35"), 2),
                make_step(gen(4, {{1, 3, mone}, {2, 4, one}, {3, 5, one}, {2, 5, kappa}}, "-E13+E24+E35+kappa*E25"), 3),
                make_step(transl(4, 1), 0), make_step(transl(4, 4), 1)};
    const cd k = kappa.to_complex();
    c.closed_form_text = {"x1 = z - (r+kappa) a1 a2 - a2^2/2", "x2 = (r+kappa) a2", "x3 = (r+kappa) a1 + a2", "x4 = r"};
    c.closed_form = [k](U u) {
        const J &z = u[0], &r = u[1], &a1 = u[2], &a2 = u[3];
        J rk = r + k;
        return std::vector<J>{z - rk * a1 * a2 - 0.5 * a2 * a2, rk * a2, rk * a1 + a2, r};
    };
    c.regular = [k](std::span<const cd> u) -> Guard {
        if (small(u[1] + k)) return "r + kappa = 0";
        return std::nullopt;
    };
    c.laplacian_id = "M45";
    c.figure_ref = real ? "Fig 5h" : "Fig 1e";
    c.chain = mans_chain(c.space, "M45(1)");
    c.paper_eq = "3.V451";
    c.masa_id = real ? "M22_M45_1" : "M45_1";
    c.family["kappa"] = k;
    return c;
}

std::vector<Chart> chart_catalog(SpaceId space) { return catalogs().by_space.at(space); }

std::vector<Chart> decomposable_charts() { return catalogs().decomposable; }

std::vector<Chart> all_charts() {
    std::vector<Chart> out;
    for (SpaceId s : all_spaces())
        for (const auto& c : catalogs().by_space.at(s)) out.push_back(c);
    for (const auto& c : catalogs().decomposable) out.push_back(c);
    return out;
}

std::optional<Chart> find_chart(const std::string& id) {
    auto it = catalogs().index.find(id);
    if (it == catalogs().index.end()) return std::nullopt;
    return *it->second;
}

const Chart& chart_ref(const std::string& id) {
    auto it = catalogs().index.find(id);
    if (it == catalogs().index.end()) throw std::out_of_range("unknown chart id: " + id);
    return *it->second;
}

}  // namespace sepcoords
