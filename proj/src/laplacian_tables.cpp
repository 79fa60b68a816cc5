#include <cmath>
#include <map>

#include "sepcoords/calculus.hpp"

namespace sepcoords {

namespace {

const cd I(0.0, 1.0);

cd sq(cd z) { return z * z; }

class TableBuilder {
public:
    TableBuilder(const Chart& chart, std::string id, std::string eq, bool printed = true) : chart_(chart) {
        t_.id = std::move(id);
        t_.chart_id = chart.id;
        t_.paper_eq = std::move(eq);
        t_.printed = printed;
    }

    std::size_t at(const std::string& name) const {
        auto i = chart_.param_index(name);
        if (!i) throw std::logic_error(chart_.id + ": table refers to unknown parameter " + name);
        return *i;
    }

    TableBuilder& d2(const std::string& a, const std::string& b, Coefficient f, std::string text) {
        std::size_t i = at(a), j = at(b);
        if (i > j) std::swap(i, j);
        t_.terms.push_back({i, j, std::move(f), std::move(text)});
        return *this;
    }
    TableBuilder& d1(const std::string& a, Coefficient f, std::string text) {
        t_.terms.push_back({at(a), LaplacianTerm::npos, std::move(f), std::move(text)});
        return *this;
    }

    // d_r^2 + (3/r) d_r, with sign -1 for the timelike radius.
    TableBuilder& radial(double sign = 1.0) {
        r_ = at("r");
        std::size_t r = r_;
        d2("r", "r", [sign](std::span<const cd>) { return cd(sign); }, sign > 0 ? "d_r^2" : "-d_r^2");
        d1("r", [r, sign](std::span<const cd> u) { return sign * 3.0 / u[r]; }, sign > 0 ? "3/r d_r" : "-3/r d_r");
        return *this;
    }
    // Angular part, divided by r^2.
    TableBuilder& s2(const std::string& a, const std::string& b, Coefficient f, std::string text) {
        std::size_t r = r_;
        return d2(a, b, [r, f](std::span<const cd> u) { return f(u) / sq(u[r]); }, "1/r^2 " + text);
    }
    TableBuilder& s1(const std::string& a, Coefficient f, std::string text) {
        std::size_t r = r_;
        return d1(a, [r, f](std::span<const cd> u) { return f(u) / sq(u[r]); }, "1/r^2 " + text);
    }

    TableBuilder& note(std::string n) {
        t_.notes.push_back(std::move(n));
        return *this;
    }
    TableBuilder& corrects(std::string id) {
        t_.corrects = std::move(id);
        return *this;
    }

    LaplacianTable done() { return std::move(t_); }

private:
    const Chart& chart_;
    LaplacianTable t_;
    std::size_t r_ = 0;
};

Coefficient k_(cd v) {
    return [v](std::span<const cd>) { return v; };
}

cd family(const Chart& c, const std::string& key) {
    auto it = c.family.find(key);
    if (it == c.family.end()) throw std::logic_error(c.id + ": missing family constant " + key);
    return it->second;
}

LaplacianTable m41(const Chart& ch) {
    TableBuilder b(ch, "M41", "3.318+3.19");
    const std::size_t c = b.at("c");
    b.radial()
        .s2("c", "c", k_(1.0), "d_c^2")
        .s1("c", [c](std::span<const cd> u) { return 2.0 / std::tan(2.0 * u[c]); }, "2 cot 2c d_c")
        .s2("a", "a", [c](std::span<const cd> u) { return 1.0 / sq(std::cos(u[c])); }, "1/cos^2 c d_a^2")
        .s2("b", "b", [c](std::span<const cd> u) { return 1.0 / sq(std::sin(u[c])); }, "1/sin^2 c d_b^2");
    return b.done();
}

LaplacianTable m42(const Chart& ch) {
    TableBuilder b(ch, "M42", "3.318+3.317");
    const std::size_t c = b.at("c");
    b.radial()
        .s2("c", "c", k_(-1.0), "-d_c^2")
        .s1("c", k_(2.0), "2 d_c")
        .s2("b", "b", [c](std::span<const cd> u) { return 4.0 * std::exp(4.0 * u[c]); }, "4 e^{4c} d_b^2")
        .s2("a", "b", [c](std::span<const cd> u) { return -4.0 * std::exp(2.0 * u[c]); }, "-4 e^{2c} d_a d_b")
        .note("the printed 4 e^{4c} d/db^2 is read as a second derivative");
    return b.done();
}

LaplacianTable m43(const Chart& ch, bool split) {
    TableBuilder b(ch, split ? "E22_f" : "M43", split ? "" : "3.L325", !split);
    const std::size_t r = b.at("r");
    const double s = split ? -1.0 : 1.0;
    b.d2("z", "r", k_(2.0), "2 d_z d_r")
        .d1("z", [r](std::span<const cd> u) { return 2.0 / u[r]; }, "2/r d_z")
        .d2("a1", "a1", [r](std::span<const cd> u) { return 1.0 / sq(u[r]); }, "1/r^2 d_a1^2")
        .d2("a2", "a2", [r, s](std::span<const cd> u) { return s / sq(u[r]); }, split ? "-1/r^2 d_a2^2" : "1/r^2 d_a2^2");
    return b.done();
}

LaplacianTable m44(const Chart& ch, bool split) {
    TableBuilder b(ch, split ? "E22_g" : "M44", split ? "" : "3.L329", !split);
    const std::size_t r = b.at("r");
    const cd beta = family(ch, "beta");
    const double s = split ? -1.0 : 1.0;
    b.d2("r", "z", k_(2.0), "2 d_r d_z")
        .d1("z", [r, beta](std::span<const cd> u) { return (2.0 * u[r] + beta + 1.0) / ((u[r] + 1.0) * (u[r] + beta)); },
            "(2r+beta+1)/((r+1)(r+beta)) d_z")
        .d2("a1", "a1", [r](std::span<const cd> u) { return 1.0 / sq(u[r] + 1.0); }, "1/(r+1)^2 d_a1^2")
        .d2("a2", "a2", [r, beta, s](std::span<const cd> u) { return s / sq(u[r] + beta); },
            split ? "-1/(r+beta)^2 d_a2^2" : "1/(r+beta)^2 d_a2^2");
    return b.done();
}

LaplacianTable m45(const Chart& ch) {
    TableBuilder b(ch, "M45", "3.L333");
    const std::size_t r = b.at("r");
    const cd kappa = family(ch, "kappa");
    b.d2("r", "z", k_(2.0), "2 d_r d_z")
        .d1("z", [r, kappa](std::span<const cd> u) { return 2.0 / (u[r] + kappa); }, "2/(r+kappa) d_z")
        .d2("a1", "a1", [r, kappa](std::span<const cd> u) { return -2.0 / std::pow(u[r] + kappa, 3); },
            "-2/(r+kappa)^3 d_a1^2")
        .d2("a1", "a2", [r, kappa](std::span<const cd> u) { return 2.0 / sq(u[r] + kappa); }, "2/(r+kappa)^2 d_a1 d_a2");
    return b.done();
}

LaplacianTable m46(const Chart& ch) {
    TableBuilder b(ch, "M46", "3.L337");
    const std::size_t r = b.at("r");
    b.d2("a1", "r", k_(2.0), "2 d_a1 d_r")
        .d2("a2", "a2", [r](std::span<const cd> u) { return 2.0 * u[r]; }, "2r d_a2^2")
        .d2("a2", "z", k_(2.0), "2 d_a2 d_z");
    return b.done();
}

LaplacianTable m47_cart(const Chart& ch) {
    TableBuilder b(ch, "M47_cart", "3.L341");
    b.d2("a1", "s3", k_(2.0), "2 d_a1 d_s3").d2("a2", "s4", k_(2.0), "2 d_a2 d_s4");
    return b.done();
}

LaplacianTable m3c(const Chart& ch, int kappa) {
    if (kappa == 0) {
        TableBuilder b(ch, "M3C_k0", "3.346_kapa0");
        const std::size_t r = b.at("r");
        b.d2("r", "z", k_(2.0), "2 d_r d_z")
            .d2("a", "a", [r](std::span<const cd> u) { return 1.0 / sq(u[r]); }, "1/r^2 d_a^2")
            .d1("z", [r](std::span<const cd> u) { return 1.0 / u[r]; }, "1/r d_z");
        return b.done();
    }
    TableBuilder b(ch, "M3C_k1", "3.346_kapa1");
    const std::size_t r = b.at("r");
    b.d2("r", "r", k_(1.0), "d_r^2")
        .d2("a", "z", k_(-2.0), "-2 d_a d_z")
        .d2("z", "z", [r](std::span<const cd> u) { return 2.0 * u[r]; }, "2r d_z^2");
    return b.done();
}

LaplacianTable four_c(const Chart& ch, int which) {
    TableBuilder b(ch, "4C" + std::to_string(which), "3.359/4C" + std::to_string(which));
    const std::size_t c = b.at("c");
    b.radial().s2("c", "c", k_(1.0), "d_c^2");
    switch (which) {
        case 1: {
            const std::size_t bb = b.at("b");
            b.s1("c", [c](std::span<const cd> u) { return -2.0 * std::tan(u[c]); }, "-2 tan c d_c")
                .s2("b", "b", [c](std::span<const cd> u) { return 1.0 / sq(std::cos(u[c])); }, "1/cos^2 c d_b^2")
                .s2("a", "a", [c, bb](std::span<const cd> u) { return 1.0 / sq(std::cos(u[c]) * std::cos(u[bb])); },
                    "1/(cos^2 c cos^2 b) d_a^2")
                .s1("b", [c, bb](std::span<const cd> u) { return -std::tan(u[bb]) / sq(std::cos(u[c])); },
                    "-tan b/cos^2 c d_b");
            break;
        }
        case 2: {
            const std::size_t bb = b.at("b");
            b.s1("c", [c](std::span<const cd> u) { return -2.0 * std::tan(u[c]); }, "-2 tan c d_c")
                .s2("b", "b", [c](std::span<const cd> u) { return 1.0 / sq(std::cos(u[c])); }, "1/cos^2 c d_b^2")
                .s1("b", [c](std::span<const cd> u) { return I / sq(std::cos(u[c])); }, "i/cos^2 c d_b")
                .s2("a", "a", [c, bb](std::span<const cd> u) { return std::exp(-2.0 * I * u[bb]) / sq(std::cos(u[c])); },
                    "e^{-2ib}/cos^2 c d_a^2");
            break;
        }
        case 3: {
            const std::size_t bb = b.at("b");
            b.s1("c", k_(2.0 * I), "2i d_c")
                .s2("b", "b", [c](std::span<const cd> u) { return std::exp(-2.0 * I * u[c]); }, "e^{-2ic} d_b^2")
                .s1("b", [c, bb](std::span<const cd> u) { return std::exp(-2.0 * I * u[c]) / u[bb]; }, "e^{-2ic}/b d_b")
                .s2("a", "a", [c, bb](std::span<const cd> u) { return std::exp(-2.0 * I * u[c]) / sq(u[bb]); },
                    "e^{-2ic}/b^2 d_a^2");
            break;
        }
        default:
            b.s1("c", k_(2.0 * I), "2i d_c")
                .s2("a1", "a1", [c](std::span<const cd> u) { return std::exp(-2.0 * I * u[c]); }, "e^{-2ic} d_a1^2")
                .s2("a2", "a2", [c](std::span<const cd> u) { return std::exp(-2.0 * I * u[c]); }, "e^{-2ic} d_a2^2");
            break;
    }
    return b.done();
}

// Compact (sign = +1) and noncompact (sign = -1) Cartan charts of M(2,2).
LaplacianTable e22_ab(const Chart& ch, double sign) {
    TableBuilder b(ch, sign > 0 ? "E22_a" : "E22_b", sign > 0 ? "5.5" : "5.11");
    const std::size_t c = b.at("c");
    b.radial()
        .s2("c", "c", k_(-1.0), "-d_c^2")
        .s1("c", [c](std::span<const cd> u) {
                cd e4 = std::exp(4.0 * u[c]);
                return -2.0 * (e4 + 1.0) / (e4 - 1.0);
            },
            "-2(e^{4c}+1)/(e^{4c}-1) d_c")
        .s2("a", "a", [c, sign](std::span<const cd> u) {
                cd e2 = std::exp(2.0 * u[c]);
                return sign * 4.0 * e2 / sq(e2 + 1.0);
            },
            sign > 0 ? "4e^{2c}/(e^{2c}+1)^2 d_a^2" : "-4e^{2c}/(e^{2c}+1)^2 d_a^2")
        .s2("b", "b", [c, sign](std::span<const cd> u) {
                cd e2 = std::exp(2.0 * u[c]);
                return -sign * 4.0 * e2 / sq(e2 - 1.0);
            },
            sign > 0 ? "-4e^{2c}/(e^{2c}-1)^2 d_b^2" : "4e^{2c}/(e^{2c}-1)^2 d_b^2");
    return b.done();
}

LaplacianTable e22_c(const Chart& ch, bool corrected) {
    TableBuilder b(ch, corrected ? "E22_c:corrected" : "E22_c", corrected ? "" : "5.517", !corrected);
    const std::size_t c = b.at("c");
    const double s = corrected ? -1.0 : 1.0;
    b.radial()
        .s2("c", "c", k_(-1.0), "-d_c^2")
        .s1("c", [c](std::span<const cd> u) { return -2.0 * std::tanh(2.0 * u[c]); }, "-2 tanh 2c d_c")
        .s2("a", "b", [c](std::span<const cd> u) { return 2.0 * std::sinh(2.0 * u[c]) / sq(std::cosh(2.0 * u[c])); },
            "2 sinh 2c/cosh^2 2c d_a d_b")
        .s2("a", "a", [c, s](std::span<const cd> u) { return s / sq(std::cosh(2.0 * u[c])); },
            corrected ? "-1/cosh^2 2c d_a^2" : "1/cosh^2 2c d_a^2")
        .s2("b", "b", [c, s](std::span<const cd> u) { return -s / sq(std::cosh(2.0 * u[c])); },
            corrected ? "1/cosh^2 2c d_b^2" : "-1/cosh^2 2c d_b^2");
    if (corrected) b.corrects("E22_c").note("sign of the (d_a^2 - d_b^2) bracket reversed");
    return b.done();
}

LaplacianTable e22_e(const Chart& ch, bool corrected) {
    TableBuilder b(ch, corrected ? "E22_e:corrected" : "E22_e", corrected ? "" : "5.29", !corrected);
    const std::size_t c = b.at("c");
    b.radial()
        .s2("c", "c", k_(-1.0), "-d_c^2")
        .s1("c", k_(corrected ? 2.0 : 1.0), corrected ? "2 d_c" : "d_c")
        .s2("b", "b", [c](std::span<const cd> u) { return -4.0 * std::exp(4.0 * u[c]); }, "-4 e^{4c} d_b^2")
        .s2("a", "b", [c](std::span<const cd> u) { return -4.0 * std::exp(2.0 * u[c]); }, "-4 e^{2c} d_a d_b");
    if (corrected) b.corrects("E22_e").note("first-derivative coefficient 2, as in the complex analog");
    return b.done();
}

LaplacianTable m31_cyl(const Chart& ch) {
    TableBuilder b(ch, "M31_cyl", "", false);
    const std::size_t c = b.at("c");
    b.radial(-1.0)
        .s2("c", "c", k_(1.0), "d_c^2")
        .s1("c", [c](std::span<const cd> u) { return 2.0 / std::tanh(2.0 * u[c]); }, "2 coth 2c d_c")
        .s2("a", "a", [c](std::span<const cd> u) { return 1.0 / sq(std::sinh(u[c])); }, "1/sinh^2 c d_a^2")
        .s2("b", "b", [c](std::span<const cd> u) { return 1.0 / sq(std::cosh(u[c])); }, "1/cosh^2 c d_b^2");
    return b.done();
}

LaplacianTable e22_nonmax(const Chart& ch) {
    const char tag = ch.id.back();
    TableBuilder b(ch, ch.id, "", false);
    const std::size_t c = b.at("c");
    b.radial().s2("c", "c", k_(-1.0), "-d_c^2");
    auto hyp = [&](Coefficient f2b, std::string t2b, Coefficient f1b, std::string t1b, Coefficient f2a, std::string t2a) {
        b.s1("c", [c](std::span<const cd> u) { return -2.0 * std::tanh(u[c]); }, "-2 tanh c d_c");
        auto over = [c](Coefficient f) {
            return [c, f](std::span<const cd> u) { return f(u) / sq(std::cosh(u[c])); };
        };
        b.s2("b", "b", over(f2b), "1/cosh^2 c " + t2b).s1("b", over(f1b), "1/cosh^2 c " + t1b).s2("a", "a", over(f2a),
                                                                                             "1/cosh^2 c " + t2a);
    };
    const std::size_t bb = b.at("b");
    switch (tag) {
        case 'a':
            hyp(k_(-1.0), "(-d_b^2)", [bb](std::span<const cd> u) { return -std::tanh(u[bb]); }, "(-tanh b d_b)",
                [bb](std::span<const cd> u) { return 1.0 / sq(std::cosh(u[bb])); }, "(1/cosh^2 b d_a^2)");
            break;
        case 'b':
            hyp(k_(1.0), "(d_b^2)", [bb](std::span<const cd> u) { return -std::tan(u[bb]); }, "(-tan b d_b)",
                [bb](std::span<const cd> u) { return -1.0 / sq(std::cos(u[bb])); }, "(-1/cos^2 b d_a^2)");
            break;
        case 'c':
            hyp(k_(-1.0), "(-d_b^2)", k_(-1.0), "(-d_b)",
                [bb](std::span<const cd> u) { return std::exp(-2.0 * u[bb]); }, "(e^{-2b} d_a^2)");
            break;
        case 'd':
            b.s1("c", k_(-2.0), "-2 d_c")
                .s2("b", "b", [c](std::span<const cd> u) { return std::exp(-2.0 * u[c]); }, "e^{-2c} d_b^2")
                .s1("b", [c, bb](std::span<const cd> u) { return std::exp(-2.0 * u[c]) / u[bb]; }, "e^{-2c}/b d_b")
                .s2("a", "a", [c, bb](std::span<const cd> u) { return -std::exp(-2.0 * u[c]) / sq(u[bb]); },
                    "-e^{-2c}/b^2 d_a^2");
            break;
        default:
            b.s1("c", k_(-2.0), "-2 d_c")
                .s2("a", "a", [c](std::span<const cd> u) { return std::exp(-2.0 * u[c]); }, "e^{-2c} d_a^2")
                .s2("b", "b", [c](std::span<const cd> u) { return -std::exp(-2.0 * u[c]); }, "-e^{-2c} d_b^2");
            break;
    }
    return b.done();
}

}  // namespace

const std::vector<std::string>& printed_table_ids() {
    static const std::vector<std::string> ids = {"M41",  "M42",  "M43",  "M44",    "M45",    "M46",
                                                 "M47_cart", "M3C_k0", "M3C_k1", "4C1",  "4C2",  "4C3",
                                                 "4C4",  "E22_a", "E22_b", "E22_c",  "E22_e"};
    return ids;
}

const std::vector<std::string>& derived_table_ids() {
    static const std::vector<std::string> ids = {"M31_cyl", "E22_f",  "E22_g",  "E22_6a",
                                                 "E22_6b",  "E22_6c", "E22_6d", "E22_6e"};
    return ids;
}

std::string representative_chart(const std::string& table_id) {
    static const std::map<std::string, std::string> m = {
        {"M41", "C_M41"},     {"M42", "C_M42"},     {"M43", "C_M43"},     {"M44", "C_M44"},   {"M45", "C_M45"},
        {"M46", "C_M46"},     {"M47_cart", "C_M47_cart"}, {"M3C_k0", "C_3C_k0"}, {"M3C_k1", "C_3C_k1"},
        {"4C1", "C_4C1"},     {"4C2", "C_4C2"},     {"4C3", "C_4C3"},     {"4C4", "C_4C4"}};
    auto it = m.find(table_id);
    return it == m.end() ? table_id : it->second;
}

std::optional<LaplacianTable> laplacian_table(const Chart& chart) {
    const std::string& id = chart.laplacian_id;
    if (id.empty()) return std::nullopt;
    if (id == "M41") return m41(chart);
    if (id == "M42") return m42(chart);
    if (id == "M43") return m43(chart, false);
    if (id == "E22_f") return m43(chart, true);
    if (id == "M44") return m44(chart, false);
    if (id == "E22_g") return m44(chart, true);
    if (id == "M45") return m45(chart);
    if (id == "M46") return m46(chart);
    if (id == "M47_cart") return m47_cart(chart);
    if (id == "M3C_k0") return m3c(chart, 0);
    if (id == "M3C_k1") return m3c(chart, 1);
    if (id.size() == 3 && id.rfind("4C", 0) == 0) return four_c(chart, id[2] - '0');
    if (id == "E22_a") return e22_ab(chart, 1.0);
    if (id == "E22_b") return e22_ab(chart, -1.0);
    if (id == "E22_c") return e22_c(chart, false);
    if (id == "E22_e") return e22_e(chart, false);
    if (id == "M31_cyl") return m31_cyl(chart);
    if (id.rfind("E22_6", 0) == 0) return e22_nonmax(chart);
    return std::nullopt;
}

std::optional<LaplacianTable> corrected_table(const Chart& chart) {
    if (chart.laplacian_id == "E22_c") return e22_c(chart, true);
    if (chart.laplacian_id == "E22_e") return e22_e(chart, true);
    return std::nullopt;
}

}  // namespace sepcoords
