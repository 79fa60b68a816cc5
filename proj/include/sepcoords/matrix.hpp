#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sepcoords/gauss_rational.hpp"

namespace sepcoords {

// Pivoting policy for Gaussian elimination: exact fields accept any nonzero
// pivot, floating fields take the largest magnitude and a relative cutoff.
template <class T>
struct FieldTraits;

template <>
struct FieldTraits<Qi> {
    static constexpr bool exact = true;
    static double score(const Qi& x) { return x.is_zero() ? 0.0 : 1.0; }
    static bool negligible(const Qi& x, double) { return x.is_zero(); }
    static Qi from_int(long v) { return Qi(v); }
};

template <>
struct FieldTraits<cd> {
    static constexpr bool exact = false;
    static double score(const cd& x) { return std::abs(x); }
    static bool negligible(const cd& x, double scale) { return std::abs(x) <= 1e-12 * scale; }
    static cd from_int(long v) { return cd(static_cast<double>(v), 0.0); }
};

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    // Basis matrix E_ik with 1-based indices.
    static Matrix unit(std::size_t n, std::size_t i, std::size_t k) {
        Matrix m(n, n);
        m(i - 1, k - 1) = T(1);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!(x == T(0))) return false;
        return true;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& x : a_) x *= s;
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
    Matrix operator-() const {
        Matrix m = *this;
        for (auto& x : m.a_) x = -x;
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("matrix product: dimension mismatch");
        Matrix m(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                const T& x = a(i, k);
                if (x == T(0)) continue;
                for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
            }
        return m;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != c_) throw std::invalid_argument("matrix-vector: dimension mismatch");
        std::vector<T> out(r_, T(0));
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    template <class F>
    auto map(F f) const {
        Matrix<decltype(f(a_[0]))> m(r_, c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
        return m;
    }

private:
    void check_same(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix sum: dimension mismatch");
    }

    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using QMatrix = Matrix<Qi>;
using CMatrix = Matrix<cd>;

template <class T>
double max_abs(const Matrix<T>& m) {
    double s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s = std::max(s, FieldTraits<T>::score(m(i, j)));
    return s;
}

inline CMatrix to_complex(const QMatrix& m) {
    return m.map([](const Qi& x) { return x.to_complex(); });
}

// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
    using Tr = FieldTraits<T>;
    const double scale = std::max(1.0, max_abs(m));
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t best = row;
        double best_score = Tr::score(m(row, col));
        for (std::size_t i = row + 1; i < m.rows(); ++i) {
            double s = Tr::score(m(i, col));
            if (s > best_score) {
                best = i;
                best_score = s;
                if constexpr (Tr::exact) break;
            }
        }
        if (Tr::negligible(m(best, col), scale)) continue;
        if (best != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(best, j));
        T inv = T(1) / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == T(0)) continue;
            T f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
    return rref(m).size();
}

// Basis of {v : m v = 0}, one vector per column of the result.
template <class T>
Matrix<T> nullspace(Matrix<T> m) {
    auto piv = rref(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_piv[j]) free.push_back(j);
    Matrix<T> n(m.cols(), free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
        n(free[f], f) = T(1);
        for (std::size_t r = 0; r < piv.size(); ++r) n(piv[r], f) = -m(r, free[f]);
    }
    return n;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    Matrix<T> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = T(1);
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("inverse: singular matrix");
    Matrix<T> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

template <class T>
T determinant(Matrix<T> m) {
    using Tr = FieldTraits<T>;
    const std::size_t n = m.rows();
    T det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        double best_score = Tr::score(m(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            double s = Tr::score(m(i, col));
            if (s > best_score) {
                best = i;
                best_score = s;
            }
        }
        if (best_score == 0.0) return T(0);
        if (best != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(best, j));
            det = -det;
        }
        det *= m(col, col);
        T inv = T(1) / m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            T f = m(i, col) * inv;
            if (f == T(0)) continue;
            for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

}  // namespace sepcoords
