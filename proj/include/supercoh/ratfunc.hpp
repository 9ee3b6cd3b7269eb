#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "supercoh/scalar.hpp"

namespace supercoh {

// Dense univariate polynomial in z, coefficients low to high, no trailing zeros.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Scalar> coeffs);
    static Poly constant(const Scalar& c);
    static Poly monomial(const Scalar& c, int degree);
    // (z - a)^e
    static Poly linearPower(const Scalar& a, int e);

    bool isZero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    Scalar coeff(int k) const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Scalar& c, const Poly& p);
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    Poly derivative() const;
    Scalar eval(const Scalar& x) const;
    // Coefficients of p(t + a) as a polynomial in t.
    Poly shifted(const Scalar& a) const;
    // Synthetic division by (z - a); returns quotient, stores remainder.
    Poly divideLinear(const Scalar& a, Scalar& remainder) const;

    std::string str() const;

private:
    void trim();
    std::vector<Scalar> coeffs_;
};

// A point of P^1 with Gaussian-rational affine coordinate, or infinity.
struct Point {
    bool infinite = false;
    Scalar value;

    static Point inf() { return Point{true, Scalar()}; }
    static Point at(const Scalar& a) { return Point{false, a}; }

    friend bool operator==(const Point& a, const Point& b)
    {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
    friend bool operator<(const Point& a, const Point& b)
    {
        if (a.infinite != b.infinite)
            return !a.infinite;
        return !a.infinite && a.value < b.value;
    }
    std::string str() const { return infinite ? "inf" : value.str(); }
};

// Sorted set of removed points S; the open set is P^1 \ S.
class PointSet {
public:
    PointSet() = default;
    PointSet(std::initializer_list<Point> pts);
    explicit PointSet(std::vector<Point> pts);
    // Parses "inf", "0,1,inf", "" (empty set).
    static PointSet parse(const std::string& text);

    bool empty() const { return points_.empty(); }
    bool hasInfinity() const;
    bool contains(const Point& p) const;
    bool containsFinite(const Scalar& a) const { return contains(Point::at(a)); }
    std::vector<Scalar> finitePoints() const;
    bool isSubsetOf(const PointSet& other) const;
    PointSet unionWith(const PointSet& other) const;
    const std::vector<Point>& points() const { return points_; }

    friend bool operator==(const PointSet& a, const PointSet& b) { return a.points_ == b.points_; }
    friend bool operator!=(const PointSet& a, const PointSet& b) { return !(a == b); }
    friend bool operator<(const PointSet& a, const PointSet& b) { return a.points_ < b.points_; }

    std::string str() const;

private:
    std::vector<Point> points_;
};

// Reduced rational function N(z) / prod (z - a)^{e_a} over the Gaussian rationals.
class RatFunc {
public:
    static constexpr int kMinusInfinity = std::numeric_limits<int>::min() / 4;

    RatFunc() = default;
    RatFunc(const Scalar& c);  // NOLINT(google-explicit-constructor)
    explicit RatFunc(Poly numerator, std::map<Scalar, int> poles = {});

    static RatFunc monomial(const Scalar& c, int exponent);
    static RatFunc fromLaurent(const std::map<int, Scalar>& terms);
    // c / (z - a)^e
    static RatFunc polar(const Scalar& c, const Scalar& a, int e);

    bool isZero() const { return num_.isZero(); }
    const Poly& numerator() const { return num_; }
    const std::map<Scalar, int>& poles() const { return poles_; }
    Poly denominator() const;
    int poleOrder(const Scalar& a) const;
    // deg(numerator) - sum of pole orders; kMinusInfinity for zero.
    int degreeAtInfinity() const;
    bool isPolynomial() const { return poles_.empty(); }
    // Poles only at z = 0.
    bool isLaurent() const;
    // Exponent -> coefficient; requires isLaurent().
    std::map<int, Scalar> laurentTerms() const;

    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.poles_ == b.poles_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc derivative() const;
    // Principal part of the Laurent expansion at the finite point a.
    RatFunc principalPart(const Scalar& a) const;
    // What remains after removing every finite principal part.
    Poly polynomialPart() const;

    std::string str() const;

private:
    void normalize();
    Poly num_;
    std::map<Scalar, int> poles_;
};

// Truncation of infinite-dimensional section spaces: finite poles of order at
// most -lo, and z-degree at most hi when infinity is removed.
struct Window {
    int lo = -8;
    int hi = 8;
    static Window symmetric(int w) { return Window{-w, w}; }
    Window widened(int by) const { return Window{lo - by, hi + by}; }
    friend bool operator==(const Window& a, const Window& b) { return a.lo == b.lo && a.hi == b.hi; }
};

// Section of O(twist) over P^1 \ domain, in the z-trivialization.
class RatSection {
public:
    RatSection(RatFunc f, int twist, PointSet domain);
    static RatSection zero(int twist, PointSet domain) { return RatSection(RatFunc(), twist, std::move(domain)); }

    const RatFunc& func() const { return f_; }
    int twist() const { return twist_; }
    const PointSet& domain() const { return domain_; }
    bool isZero() const { return f_.isZero(); }

    // Pole and degree conditions for the given data; no exception.
    static bool isValid(const RatFunc& f, int twist, const PointSet& domain);

    RatSection add(const RatSection& g) const;
    RatSection mul(const RatSection& g) const;
    RatSection restrict(const PointSet& largerS) const;

    friend bool operator==(const RatSection& a, const RatSection& b)
    {
        return a.twist_ == b.twist_ && a.domain_ == b.domain_ && a.f_ == b.f_;
    }

    std::string str() const { return f_.str(); }

private:
    RatFunc f_;
    int twist_;
    PointSet domain_;
};

// Basis of sections of O(twist) over P^1 \ S truncated by the window:
// z^i / prod_{a in S finite} (z - a)^{-lo}. For S empty this is {1, ..., z^twist}.
std::vector<RatSection> basisOfSections(int twist, const PointSet& S, const Window& window);

// Coordinates of f in basisOfSections(twist, S, window); throws WindowTooSmall
// if f does not fit.
std::vector<Scalar> sectionCoordinates(const RatFunc& f, int twist, const PointSet& S, const Window& window);
std::size_t sectionSpaceDimension(int twist, const PointSet& S, const Window& window);

}  // namespace supercoh
