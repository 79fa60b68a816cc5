#include "sepcoords/gauss_rational.hpp"

#include <stdexcept>

namespace sepcoords {

GaussRational GaussRational::frac(long num, long den, long inum, long iden) {
    return {mpq_class(num, den), mpq_class(inum, iden)};
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
    mpq_class d = o.norm();
    if (sgn(d) == 0) throw std::domain_error("division by zero in Q(i)");
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / d;
    mpq_class m = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

std::string GaussRational::str() const {
    std::string s = re_.get_str();
    if (sgn(im_) < 0) {
        s += "-";
        s += mpq_class(-im_).get_str();
    } else {
        s += "+";
        s += im_.get_str();
    }
    s += "i";
    return s;
}

}  // namespace sepcoords
