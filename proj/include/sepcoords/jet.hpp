#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>

#include "sepcoords/gauss_rational.hpp"

namespace sepcoords {

// Second-order forward-mode jet in up to four variables.
struct Jet2 {
    static constexpr std::size_t N = 4;

    cd v{0.0};
    std::array<cd, N> g{};
    std::array<std::array<cd, N>, N> h{};

    Jet2() = default;
    Jet2(cd value) : v(value) {}
    Jet2(double value) : v(value) {}

    static Jet2 variable(cd value, std::size_t slot) {
        if (slot >= N) throw std::out_of_range("jet slot out of range");
        Jet2 j(value);
        j.g[slot] = 1.0;
        return j;
    }

    // f(u) with f' = d1, f'' = d2 evaluated at u.v.
    Jet2 chain(cd f, cd d1, cd d2) const {
        Jet2 r(f);
        for (std::size_t i = 0; i < N; ++i) r.g[i] = d1 * g[i];
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) r.h[i][k] = d1 * h[i][k] + d2 * g[i] * g[k];
        return r;
    }

    Jet2& operator+=(const Jet2& o) {
        v += o.v;
        for (std::size_t i = 0; i < N; ++i) {
            g[i] += o.g[i];
            for (std::size_t k = 0; k < N; ++k) h[i][k] += o.h[i][k];
        }
        return *this;
    }
    Jet2& operator-=(const Jet2& o) {
        v -= o.v;
        for (std::size_t i = 0; i < N; ++i) {
            g[i] -= o.g[i];
            for (std::size_t k = 0; k < N; ++k) h[i][k] -= o.h[i][k];
        }
        return *this;
    }
    Jet2& operator*=(cd s) {
        v *= s;
        for (std::size_t i = 0; i < N; ++i) {
            g[i] *= s;
            for (std::size_t k = 0; k < N; ++k) h[i][k] *= s;
        }
        return *this;
    }
    Jet2& operator*=(const Jet2& o) {
        Jet2 r(v * o.v);
        for (std::size_t i = 0; i < N; ++i) r.g[i] = v * o.g[i] + o.v * g[i];
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k)
                r.h[i][k] = v * o.h[i][k] + o.v * h[i][k] + g[i] * o.g[k] + o.g[i] * g[k];
        return *this = r;
    }
    Jet2& operator/=(const Jet2& o);
    Jet2 operator-() const {
        Jet2 r = *this;
        r *= cd(-1.0);
        return r;
    }
};

inline Jet2 reciprocal(const Jet2& u) {
    if (u.v == cd(0.0)) throw std::domain_error("jet division by zero");
    cd inv = 1.0 / u.v;
    return u.chain(inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline Jet2& Jet2::operator/=(const Jet2& o) { return *this *= reciprocal(o); }

inline Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
inline Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
inline Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
inline Jet2 operator/(Jet2 a, const Jet2& b) { return a /= b; }
inline Jet2 operator+(Jet2 a, cd s) { a.v += s; return a; }
inline Jet2 operator+(cd s, Jet2 a) { a.v += s; return a; }
inline Jet2 operator-(Jet2 a, cd s) { a.v -= s; return a; }
inline Jet2 operator-(cd s, const Jet2& a) { return -a + s; }
inline Jet2 operator*(Jet2 a, cd s) { return a *= s; }
inline Jet2 operator*(cd s, Jet2 a) { return a *= s; }
inline Jet2 operator/(Jet2 a, cd s) { return a *= (1.0 / s); }
inline Jet2 operator/(cd s, const Jet2& a) { return reciprocal(a) * s; }
inline Jet2 operator+(Jet2 a, double s) { return a + cd(s); }
inline Jet2 operator+(double s, Jet2 a) { return a + cd(s); }
inline Jet2 operator-(Jet2 a, double s) { return a - cd(s); }
inline Jet2 operator-(double s, const Jet2& a) { return cd(s) - a; }
inline Jet2 operator*(Jet2 a, double s) { return a * cd(s); }
inline Jet2 operator*(double s, Jet2 a) { return a * cd(s); }
inline Jet2 operator/(Jet2 a, double s) { return a / cd(s); }
inline Jet2 operator/(double s, const Jet2& a) { return cd(s) / a; }

inline Jet2 exp(const Jet2& u) {
    cd e = std::exp(u.v);
    return u.chain(e, e, e);
}
inline Jet2 log(const Jet2& u) {
    if (u.v == cd(0.0)) throw std::domain_error("jet log of zero");
    cd inv = 1.0 / u.v;
    return u.chain(std::log(u.v), inv, -inv * inv);
}
inline Jet2 sin(const Jet2& u) {
    cd s = std::sin(u.v), c = std::cos(u.v);
    return u.chain(s, c, -s);
}
inline Jet2 cos(const Jet2& u) {
    cd s = std::sin(u.v), c = std::cos(u.v);
    return u.chain(c, -s, -c);
}
inline Jet2 tan(const Jet2& u) {
    cd t = std::tan(u.v);
    cd d1 = 1.0 + t * t;
    return u.chain(t, d1, 2.0 * t * d1);
}
inline Jet2 sinh(const Jet2& u) {
    cd s = std::sinh(u.v), c = std::cosh(u.v);
    return u.chain(s, c, s);
}
inline Jet2 cosh(const Jet2& u) {
    cd s = std::sinh(u.v), c = std::cosh(u.v);
    return u.chain(c, s, c);
}
inline Jet2 tanh(const Jet2& u) {
    cd t = std::tanh(u.v);
    cd d1 = 1.0 - t * t;
    return u.chain(t, d1, -2.0 * t * d1);
}
// Principal branch u^w = exp(w log u).
inline Jet2 pow(const Jet2& u, cd w) {
    if (u.v == cd(0.0)) throw std::domain_error("jet power at zero");
    cd p = std::pow(u.v, w);
    cd inv = 1.0 / u.v;
    return u.chain(p, w * p * inv, w * (w - 1.0) * p * inv * inv);
}
inline Jet2 pow(const Jet2& u, int n) {
    Jet2 r(1.0);
    Jet2 base = n < 0 ? reciprocal(u) : u;
    for (int k = 0; k < (n < 0 ? -n : n); ++k) r *= base;
    return r;
}
inline Jet2 sqrt(const Jet2& u) { return pow(u, cd(0.5)); }

inline cd value_of(const cd& x) { return x; }
inline cd value_of(const Jet2& x) { return x.v; }

}  // namespace sepcoords
