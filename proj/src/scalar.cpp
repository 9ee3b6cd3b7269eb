#include "supercoh/scalar.hpp"
#include "supercoh/error.hpp"

namespace supercoh {

const char* errorKindName(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::TwistMismatch: return "TwistMismatch";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::NotARefinement: return "NotARefinement";
    case ErrorKind::InvalidSection: return "InvalidSection";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::NotADerivation: return "NotADerivation";
    case ErrorKind::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::UnsupportedCover: return "UnsupportedCover";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::HasDegreeZeroPart: return "HasDegreeZeroPart";
    case ErrorKind::NotInGE: return "NotInGE";
    case ErrorKind::GlobalDer2Nonzero: return "GlobalDer2Nonzero";
    case ErrorKind::RankTooHigh: return "RankTooHigh";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::ChannelUnknown: return "ChannelUnknown";
    case ErrorKind::WrongActionKind: return "WrongActionKind";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im))
{
    re_.canonicalize();
    im_.canonicalize();
}

Scalar Scalar::fraction(long num, long den, long imNum, long imDen)
{
    return Scalar(mpq_class(num, den), mpq_class(imNum, imDen));
}

Scalar Scalar::inverse() const
{
    if (isZero())
        throw Error(ErrorKind::InvalidArgument, "division by zero scalar");
    mpq_class n = normSquared();
    return Scalar(re_ / n, -im_ / n);
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (sgn(o.im_) == 0) {
        if (sgn(o.re_) == 0)
            throw Error(ErrorKind::InvalidArgument, "division by zero scalar");
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string Scalar::str() const
{
    if (sgn(im_) == 0)
        return re_.get_str();
    std::string s = "(";
    if (sgn(re_) != 0) {
        s += re_.get_str();
        if (sgn(im_) > 0)
            s += "+";
    }
    s += im_.get_str() + " i)";
    return s;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar power(const Scalar& base, unsigned exponent)
{
    Scalar result(1);
    Scalar b = base;
    while (exponent > 0) {
        if (exponent & 1U)
            result *= b;
        b *= b;
        exponent >>= 1U;
    }
    return result;
}

}  // namespace supercoh
