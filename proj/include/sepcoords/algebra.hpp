#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sepcoords/matrix.hpp"
#include "sepcoords/rng.hpp"

namespace sepcoords {

enum class SpaceId { M4C, M3C, M4R, M31, M22 };

std::string to_string(SpaceId s);
std::optional<SpaceId> parse_space(const std::string& s);
bool is_real_form(SpaceId s);
std::size_t space_dim(SpaceId s);
const std::vector<SpaceId>& all_spaces();

struct MetricForm {
    std::string form_id;
    QMatrix entries;

    std::size_t dim() const { return entries.rows(); }
    // Sylvester inertia (p, q) of the real symmetric form; complex entries are rejected.
    std::pair<int, int> signature() const;

    static MetricForm identity(std::size_t n);
    static MetricForm antidiagonal_blocks();  // [[0,I2],[I2,0]]
    static MetricForm light_cone();           // (1,4) and (4,1) plus I2 in the middle
    static MetricForm light_cone_split();     // as light_cone with middle block diag(1,-1)
    static MetricForm full_antidiagonal(std::size_t n);
    static MetricForm diagonal(const std::vector<long>& d);
};

class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(QMatrix m, std::string label = {});

    // E_ik in gl(n+1), 1-based.
    static AlgebraElement basis(std::size_t n, std::size_t i, std::size_t k);
    // L_ik = E_ik - E_ki.
    static AlgebraElement rotation(std::size_t n, std::size_t i, std::size_t k);
    static AlgebraElement zero(std::size_t n) { return AlgebraElement(QMatrix(n + 1, n + 1)); }

    std::size_t n() const { return m_.rows() - 1; }
    const QMatrix& matrix() const { return m_; }
    const std::string& label() const { return label_; }
    AlgebraElement& set_label(std::string l) {
        label_ = std::move(l);
        return *this;
    }

    QMatrix linear_part() const;
    std::vector<Qi> translation() const;

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator-() const { return AlgebraElement(-m_, label_.empty() ? "" : "-(" + label_ + ")"); }
    friend AlgebraElement operator*(const Qi& s, const AlgebraElement& x);
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.m_ == b.m_; }

private:
    QMatrix m_;
    std::string label_;
};

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);
bool is_isometry(const AlgebraElement& x, const MetricForm& k);
// Rotational part A K^{-1} (A antisymmetric) followed by the n translations.
std::vector<AlgebraElement> isometry_basis(const MetricForm& k);

// Closed-form exponential plan, built once per generator.
class ExpPlan {
public:
    enum class Kind { Nilpotent, Trigonometric, Diagonal, DiagonalTimesNilpotent, Series };

    explicit ExpPlan(const AlgebraElement& x);
    CMatrix operator()(cd t) const;
    Kind kind() const { return kind_; }
    static std::string kind_name(Kind k);

private:
    Kind kind_ = Kind::Series;
    std::size_t dim_ = 0;
    std::vector<CMatrix> powers_;  // X^0 .. X^{k-1} for the nilpotent part
    cd c_{0.0};                    // X^3 = c X
    std::vector<cd> diag_;
    CMatrix x_;
};

CMatrix one_param_exp(const AlgebraElement& x, cd t);

struct Masa {
    std::string id;
    SpaceId space = SpaceId::M4C;
    MetricForm metric;
    std::vector<std::string> params;
    std::vector<AlgebraElement> generators;
    int k0 = 0;
    std::string decomposability_class;
    bool degenerate = false;
    std::optional<std::string> descends_from;
    std::string paper_eq;
    std::vector<std::string> notes;

    std::size_t dim() const { return generators.size(); }
    AlgebraElement element(const std::vector<Qi>& p) const;
};

Masa make_m44(const Qi& beta, SpaceId space = SpaceId::M4C);
Masa make_m45(const Qi& kappa, SpaceId space = SpaceId::M4C);
Masa make_m3c(int kappa);
std::vector<Masa> masa_catalog(SpaceId space);
std::optional<Masa> find_masa(const std::string& id);

// Dimension of the pure-translation subspace and whether it is totally isotropic.
struct TranslationReport {
    int count = 0;
    bool isotropic = true;
};
TranslationReport isotropic_translations(const Masa& m);

struct CentralizerReport {
    bool is_maximal = false;
    std::size_t centralizer_dim = 0;
    std::size_t subalgebra_dim = 0;
    std::size_t ambient_dim = 0;
    int retries = 0;
    std::vector<std::vector<std::string>> sample_params;
};

// Centralizer of span{elements(p_t)} in the isometry algebra of k, using
// random rational parameter tuples p_t.
CentralizerReport centralizer_check(const Masa& m, const MetricForm& k, SplitMix64& rng);
CentralizerReport centralizer_check(const std::vector<AlgebraElement>& elements, const MetricForm& k);

template <class T>
std::pair<Matrix<T>, std::vector<Matrix<T>>> conjugate(const Matrix<T>& g, const Matrix<T>& k1,
                                                      const std::vector<Matrix<T>>& elements) {
    const std::size_t n = g.rows();
    Matrix<T> ginv = inverse(g);
    Matrix<T> big = Matrix<T>::identity(n + 1), biginv = Matrix<T>::identity(n + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            big(i, j) = g(i, j);
            biginv(i, j) = ginv(i, j);
        }
    std::vector<Matrix<T>> out;
    out.reserve(elements.size());
    for (const auto& x : elements) out.push_back(big * x * biginv);
    return {g * k1 * g.transpose(), out};
}

std::pair<MetricForm, std::vector<AlgebraElement>> conjugate(const QMatrix& g, const MetricForm& k1,
                                                             const std::vector<AlgebraElement>& elements);

nlohmann::json to_json(const MetricForm& k);
nlohmann::json to_json(const Masa& m);

}  // namespace sepcoords
