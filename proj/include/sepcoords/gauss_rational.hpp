#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace sepcoords {

using cd = std::complex<double>;

// Exact element of Q(i).
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long re) : re_(re), im_(0) {}
    GaussRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }
    static GaussRational i() { return {0, 1}; }
    static GaussRational frac(long num, long den, long inum = 0, long iden = 1);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }
    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussRational conj() const { return {re_, -im_}; }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussRational operator-() const { return {-re_, -im_}; }
    GaussRational& operator+=(const GaussRational& o);
    GaussRational& operator-=(const GaussRational& o);
    GaussRational& operator*=(const GaussRational& o);
    GaussRational& operator/=(const GaussRational& o);

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    cd to_complex() const { return {re_.get_d(), im_.get_d()}; }

    // "re+im i" form, e.g. "1/2-3i", "0+0i".
    std::string str() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

using Qi = GaussRational;

}  // namespace sepcoords
