#pragma once

#include <complex>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace supercoh {

// Gaussian rational re + im*i with exact GMP components.
class Scalar {
public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long n) : re_(n), im_(0) {}  // NOLINT(google-explicit-constructor)
    Scalar(mpq_class re, mpq_class im = 0);

    static Scalar i() { return Scalar(0, 1); }
    static Scalar fraction(long num, long den, long imNum = 0, long imDen = 1);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool isZero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool isOne() const { return re_ == 1 && sgn(im_) == 0; }
    bool isReal() const { return sgn(im_) == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }
    mpq_class normSquared() const { return re_ * re_ + im_ * im_; }
    Scalar inverse() const;

    Scalar operator-() const { return Scalar(-re_, -im_); }
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Total order (re first, then im); only used for keys.
    friend bool operator<(const Scalar& a, const Scalar& b)
    {
        if (a.re_ != b.re_)
            return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    std::complex<double> toComplex() const { return {re_.get_d(), im_.get_d()}; }

    // "3", "-1/2", "(1/2+3 i)", "(-2 i)".
    std::string str() const;

private:
    mpq_class re_;
    mpq_class im_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

Scalar power(const Scalar& base, unsigned exponent);

}  // namespace supercoh
