#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sepcoords/charts.hpp"

namespace sepcoords {

using MultiIndex = std::vector<int>;

// Polynomial in n ambient variables with Q(i) coefficients. Zero terms are never stored.
class Poly {
public:
    explicit Poly(std::size_t nvars = 4) : n_(nvars) {}
    static Poly constant(std::size_t nvars, const Qi& c);
    static Poly variable(std::size_t nvars, std::size_t i, const Qi& c = Qi(1));

    std::size_t nvars() const { return n_; }
    const std::map<MultiIndex, Qi>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int degree() const;

    void add_term(const MultiIndex& e, const Qi& c);
    Poly derivative(std::size_t i) const;
    Poly derivative(const MultiIndex& alpha) const;
    Qi eval(const std::vector<Qi>& x) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator-() const;
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Qi& s, const Poly& p);
    friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.t_ == b.t_; }

    std::string str() const;

private:
    std::size_t n_;
    std::map<MultiIndex, Qi> t_;
};

// Sum of poly(x) * d^alpha, coefficients to the left, like terms merged.
class DiffOperator {
public:
    explicit DiffOperator(std::size_t nvars = 4) : n_(nvars) {}
    static DiffOperator identity(std::size_t nvars);
    static DiffOperator partial(std::size_t nvars, std::size_t i);
    static DiffOperator multiply(const Poly& p);

    std::size_t nvars() const { return n_; }
    const std::map<MultiIndex, Poly>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int order() const;
    // Coefficient of d_i, zero if absent.
    Poly first_order_coefficient(std::size_t i) const;

    void add_term(const MultiIndex& alpha, const Poly& p);
    Poly apply(const Poly& f) const;

    DiffOperator& operator+=(const DiffOperator& o);
    DiffOperator& operator-=(const DiffOperator& o);
    DiffOperator operator-() const;
    friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
    friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
    friend DiffOperator operator*(const Qi& s, const DiffOperator& d);
    friend bool operator==(const DiffOperator& a, const DiffOperator& b) { return a.n_ == b.n_ && a.t_ == b.t_; }

    std::string str() const;

private:
    std::size_t n_;
    std::map<MultiIndex, Poly> t_;
};

DiffOperator compose(const DiffOperator& p, const DiffOperator& q);
DiffOperator op_commutator(const DiffOperator& p, const DiffOperator& q);

// (X x + alpha) . grad, the derivative of f(e^{tX} x) at t = 0.
// With this sign D([X, Y]) = -[D(X), D(Y)].
DiffOperator generator_to_operator(const AlgebraElement& x);

// sum (K^-1)_{ik} d_i d_k
DiffOperator box_operator(const MetricForm& k);
// sum_ij (G^-1)_ij D(X_i) D(X_j) over the rotations of K, with G_ij = -tr(X_i X_j).
// For K = I this is 1/2 sum_{a<b} L_ab^2.
DiffOperator casimir_second_order(const MetricForm& k);

// Lie subalgebra generated by the elements (basis, exact).
std::vector<AlgebraElement> lie_closure(const std::vector<AlgebraElement>& gens);
// Quadratic Casimir of the span of `basis`, from the one-dimensional space of
// ad-invariant symmetric tensors. nullopt when that space is not one-dimensional.
std::optional<DiffOperator> quadratic_casimir(const std::vector<AlgebraElement>& basis);

// Largest k with a k x k minor that is a nonzero polynomial.
std::size_t generic_rank(const std::vector<std::vector<Poly>>& rows);
// Rows are the first-order coefficient vectors of the operators.
std::vector<std::vector<Poly>> first_order_rows(const std::vector<DiffOperator>& ops);

struct OpMember {
    std::string label;
    std::string role;  // hamiltonian, casimir, generator
    DiffOperator op;
};

struct OpSet {
    std::string chart_id;
    std::string subalgebra;  // description of L when a subalgebra Casimir is used
    std::vector<OpMember> members;
    std::vector<std::string> notes;
};

// Commuting set attached to a chart, in ambient Cartesian variables.
std::optional<OpSet> opset_for_chart(const Chart& chart);

struct PairCheck {
    std::string a, b;
    bool zero = false;
    std::string commutator;  // canonical form when nonzero
};

struct RankCheck {
    std::string label;
    std::size_t generic_rank = 0;
    std::size_t operators = 0;
};

struct OpSetReport {
    std::string chart_id;
    std::vector<PairCheck> pairs;
    bool independent = false;
    std::size_t expected_size = 0;
    std::vector<RankCheck> rank_checks;
    bool pass = false;
};

OpSetReport verify_opset(const OpSet& s, std::size_t expected_size = 0);

nlohmann::json to_json(const OpSetReport& r);
nlohmann::json to_json(const OpSet& s);

}  // namespace sepcoords
