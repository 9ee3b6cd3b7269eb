#include "supercoh/ratfunc.hpp"

#include <algorithm>
#include <sstream>

#include "supercoh/error.hpp"

namespace supercoh {

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Scalar& c) { return Poly(std::vector<Scalar>{c}); }

Poly Poly::monomial(const Scalar& c, int degree)
{
    std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Poly(std::move(v));
}

Poly Poly::linearPower(const Scalar& a, int e)
{
    Poly result = constant(1);
    Poly lin(std::vector<Scalar>{-a, Scalar(1)});
    for (int k = 0; k < e; ++k)
        result = result * lin;
    return result;
}

void Poly::trim()
{
    while (!coeffs_.empty() && coeffs_.back().isZero())
        coeffs_.pop_back();
}

Scalar Poly::coeff(int k) const
{
    if (k < 0 || k >= static_cast<int>(coeffs_.size()))
        return Scalar();
    return coeffs_[static_cast<std::size_t>(k)];
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

Poly operator+(const Poly& a, const Poly& b)
{
    std::vector<Scalar> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k)
        v[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k)
        v[k] += b.coeffs_[k];
    return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.isZero() || b.isZero())
        return Poly();
    std::vector<Scalar> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].isZero())
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(v));
}

Poly operator*(const Scalar& c, const Poly& p)
{
    if (c.isZero())
        return Poly();
    Poly r = p;
    for (auto& x : r.coeffs_)
        x *= c;
    return r;
}

Poly Poly::derivative() const
{
    if (coeffs_.size() <= 1)
        return Poly();
    std::vector<Scalar> v(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        v[k - 1] = coeffs_[k] * Scalar(static_cast<long>(k));
    return Poly(std::move(v));
}

Scalar Poly::eval(const Scalar& x) const
{
    Scalar acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

Poly Poly::shifted(const Scalar& a) const
{
    if (a.isZero())
        return *this;
    // Horner in t with z = t + a.
    Poly acc;
    Poly lin(std::vector<Scalar>{a, Scalar(1)});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * lin + constant(*it);
    return acc;
}

Poly Poly::divideLinear(const Scalar& a, Scalar& remainder) const
{
    if (coeffs_.empty()) {
        remainder = Scalar();
        return Poly();
    }
    std::vector<Scalar> q(coeffs_.size() - 1);
    Scalar carry;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        Scalar cur = coeffs_[k] + carry * a;
        if (k == 0)
            remainder = cur;
        else
            q[k - 1] = cur;
        carry = cur;
    }
    return Poly(std::move(q));
}

std::string Poly::str() const
{
    if (coeffs_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        if (coeffs_[k].isZero())
            continue;
        if (!first)
            os << " + ";
        first = false;
        os << coeffs_[k].str() << "*z^" << k;
    }
    return os.str();
}

// ---------------------------------------------------------------- PointSet

PointSet::PointSet(std::initializer_list<Point> pts) : PointSet(std::vector<Point>(pts)) {}

PointSet::PointSet(std::vector<Point> pts) : points_(std::move(pts))
{
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

PointSet PointSet::parse(const std::string& text)
{
    std::vector<Point> pts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty())
            continue;
        if (item == "inf" || item == "oo")
            pts.push_back(Point::inf());
        else
            pts.push_back(Point::at(Scalar(mpq_class(item))));
    }
    return PointSet(std::move(pts));
}

bool PointSet::hasInfinity() const { return !points_.empty() && points_.back().infinite; }

bool PointSet::contains(const Point& p) const { return std::binary_search(points_.begin(), points_.end(), p); }

std::vector<Scalar> PointSet::finitePoints() const
{
    std::vector<Scalar> out;
    for (const auto& p : points_)
        if (!p.infinite)
            out.push_back(p.value);
    return out;
}

bool PointSet::isSubsetOf(const PointSet& other) const
{
    return std::includes(other.points_.begin(), other.points_.end(), points_.begin(), points_.end());
}

PointSet PointSet::unionWith(const PointSet& other) const
{
    std::vector<Point> all = points_;
    all.insert(all.end(), other.points_.begin(), other.points_.end());
    return PointSet(std::move(all));
}

std::string PointSet::str() const
{
    std::string s = "{";
    for (std::size_t k = 0; k < points_.size(); ++k) {
        if (k)
            s += ",";
        s += points_[k].str();
    }
    return s + "}";
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const Scalar& c) : num_(Poly::constant(c)) {}

RatFunc::RatFunc(Poly numerator, std::map<Scalar, int> poles) : num_(std::move(numerator)), poles_(std::move(poles))
{
    normalize();
}

RatFunc RatFunc::monomial(const Scalar& c, int exponent)
{
    if (exponent >= 0)
        return RatFunc(Poly::monomial(c, exponent));
    return RatFunc(Poly::constant(c), {{Scalar(0), -exponent}});
}

RatFunc RatFunc::fromLaurent(const std::map<int, Scalar>& terms)
{
    if (terms.empty())
        return RatFunc();
    int low = std::min(0, terms.begin()->first);
    std::vector<Scalar> v(static_cast<std::size_t>(std::max(0, terms.rbegin()->first - low) + 1));
    for (const auto& [e, c] : terms)
        v[static_cast<std::size_t>(e - low)] += c;
    std::map<Scalar, int> poles;
    if (low < 0)
        poles[Scalar(0)] = -low;
    return RatFunc(Poly(std::move(v)), std::move(poles));
}

RatFunc RatFunc::polar(const Scalar& c, const Scalar& a, int e)
{
    if (e <= 0)
        return RatFunc(Poly::constant(c) * Poly::linearPower(a, -e));
    return RatFunc(Poly::constant(c), {{a, e}});
}

void RatFunc::normalize()
{
    if (num_.isZero()) {
        poles_.clear();
        return;
    }
    for (auto it = poles_.begin(); it != poles_.end();) {
        if (it->second < 0) {
            num_ = num_ * Poly::linearPower(it->first, -it->second);
            it->second = 0;
        }
        while (it->second > 0) {
            Scalar rem;
            Poly q = num_.divideLinear(it->first, rem);
            if (!rem.isZero())
                break;
            num_ = std::move(q);
            --it->second;
        }
        if (it->second == 0)
            it = poles_.erase(it);
        else
            ++it;
    }
}

Poly RatFunc::denominator() const
{
    Poly d = Poly::constant(1);
    for (const auto& [a, e] : poles_)
        d = d * Poly::linearPower(a, e);
    return d;
}

int RatFunc::poleOrder(const Scalar& a) const
{
    auto it = poles_.find(a);
    return it == poles_.end() ? 0 : it->second;
}

int RatFunc::degreeAtInfinity() const
{
    if (isZero())
        return kMinusInfinity;
    int d = num_.degree();
    for (const auto& pe : poles_)
        d -= pe.second;
    return d;
}

bool RatFunc::isLaurent() const
{
    return poles_.empty() || (poles_.size() == 1 && poles_.begin()->first.isZero());
}

std::map<int, Scalar> RatFunc::laurentTerms() const
{
    if (!isLaurent())
        throw Error(ErrorKind::InvalidArgument, "not a Laurent polynomial: " + str());
    int shift = poleOrder(Scalar(0));
    std::map<int, Scalar> out;
    const auto& c = num_.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k)
        if (!c[k].isZero())
            out[static_cast<int>(k) - shift] = c[k];
    return out;
}

RatFunc RatFunc::operator-() const
{
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o)
{
    if (o.isZero())
        return *this;
    if (isZero())
        return *this = o;
    std::map<Scalar, int> common = poles_;
    for (const auto& [a, e] : o.poles_)
        common[a] = std::max(common[a], e);
    Poly lhs = num_;
    Poly rhs = o.num_;
    for (const auto& [a, e] : common) {
        int ea = poleOrder(a);
        int eb = o.poleOrder(a);
        if (e > ea)
            lhs = lhs * Poly::linearPower(a, e - ea);
        if (e > eb)
            rhs = rhs * Poly::linearPower(a, e - eb);
    }
    num_ = lhs + rhs;
    poles_ = std::move(common);
    normalize();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o)
{
    if (isZero() || o.isZero()) {
        *this = RatFunc();
        return *this;
    }
    num_ = num_ * o.num_;
    for (const auto& [a, e] : o.poles_)
        poles_[a] += e;
    normalize();
    return *this;
}

RatFunc RatFunc::derivative() const
{
    if (isZero())
        return RatFunc();
    if (poles_.empty())
        return RatFunc(num_.derivative());
    // (N'/D)' with D = prod (z-a)^e:  (N' * P - N * sum_a e_a P/(z-a)) / (D * P), P = prod (z-a).
    Poly p = Poly::constant(1);
    for (const auto& pe : poles_)
        p = p * Poly::linearPower(pe.first, 1);
    Poly sum;
    for (const auto& [a, e] : poles_) {
        Poly rest = Poly::constant(Scalar(static_cast<long>(e)));
        for (const auto& pe : poles_)
            if (!(pe.first == a))
                rest = rest * Poly::linearPower(pe.first, 1);
        sum = sum + rest;
    }
    std::map<Scalar, int> poles = poles_;
    for (auto& pe : poles)
        pe.second += 1;
    return RatFunc(num_.derivative() * p - num_ * sum, std::move(poles));
}

RatFunc RatFunc::principalPart(const Scalar& a) const
{
    int e = poleOrder(a);
    if (e == 0)
        return RatFunc();
    // f = N / ((z-a)^e Q); expand N/Q in t = z - a to order e-1.
    Poly q = Poly::constant(1);
    for (const auto& [b, eb] : poles_)
        if (!(b == a))
            q = q * Poly::linearPower(b, eb);
    Poly nt = num_.shifted(a);
    Poly qt = q.shifted(a);
    std::vector<Scalar> series(static_cast<std::size_t>(e));
    Scalar q0inv = qt.coeff(0).inverse();
    for (int k = 0; k < e; ++k) {
        Scalar acc = nt.coeff(k);
        for (int j = 1; j <= k; ++j)
            acc -= qt.coeff(j) * series[static_cast<std::size_t>(k - j)];
        series[static_cast<std::size_t>(k)] = acc * q0inv;
    }
    // sum_k c_k t^{k-e} = (sum_k c_k (z-a)^k) / (z-a)^e
    Poly numer;
    for (int k = 0; k < e; ++k)
        numer = numer + series[static_cast<std::size_t>(k)] * Poly::linearPower(a, k);
    return RatFunc(numer, {{a, e}});
}

Poly RatFunc::polynomialPart() const
{
    RatFunc rest = *this;
    for (const auto& pe : poles_)
        rest -= principalPart(pe.first);
    if (!rest.isPolynomial())
        throw Error(ErrorKind::InvalidArgument, "partial fraction residue is not polynomial");
    return rest.numerator();
}

std::string RatFunc::str() const
{
    if (isZero())
        return "0";
    if (isLaurent()) {
        auto terms = laurentTerms();
        std::ostringstream os;
        bool first = true;
        for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
            if (!first)
                os << " + ";
            first = false;
            os << it->second.str() << "*z^" << it->first;
        }
        return os.str();
    }
    std::string den;
    for (const auto& [a, e] : poles_) {
        if (!den.empty())
            den += "*";
        den += "(z-" + a.str() + ")^" + std::to_string(e);
    }
    return "(" + num_.str() + ")/(" + den + ")";
}

// ---------------------------------------------------------------- RatSection

bool RatSection::isValid(const RatFunc& f, int twist, const PointSet& domain)
{
    for (const auto& pe : f.poles())
        if (!domain.containsFinite(pe.first))
            return false;
    if (!domain.hasInfinity() && f.degreeAtInfinity() > twist)
        return false;
    return true;
}

RatSection::RatSection(RatFunc f, int twist, PointSet domain) : f_(std::move(f)), twist_(twist), domain_(std::move(domain))
{
    if (!isValid(f_, twist_, domain_))
        throw Error(ErrorKind::InvalidSection,
                    f_.str() + " is not a section of O(" + std::to_string(twist_) + ") off " + domain_.str());
}

RatSection RatSection::add(const RatSection& g) const
{
    if (twist_ != g.twist_)
        throw Error(ErrorKind::TwistMismatch, std::to_string(twist_) + " vs " + std::to_string(g.twist_));
    if (domain_ != g.domain_)
        throw Error(ErrorKind::DomainMismatch, domain_.str() + " vs " + g.domain_.str());
    return RatSection(f_ + g.f_, twist_, domain_);
}

RatSection RatSection::mul(const RatSection& g) const
{
    if (domain_ != g.domain_)
        throw Error(ErrorKind::DomainMismatch, domain_.str() + " vs " + g.domain_.str());
    return RatSection(f_ * g.f_, twist_ + g.twist_, domain_);
}

RatSection RatSection::restrict(const PointSet& largerS) const
{
    if (!domain_.isSubsetOf(largerS))
        throw Error(ErrorKind::NotARefinement, domain_.str() + " not contained in " + largerS.str());
    return RatSection(f_, twist_, largerS);
}

namespace {

int topExponent(int twist, const PointSet& S, const Window& window)
{
    int finite = static_cast<int>(S.finitePoints().size());
    int base = S.hasInfinity() ? window.hi : twist;
    return base + (-window.lo) * finite;
}

Poly windowDenominator(const PointSet& S, const Window& window)
{
    Poly n = Poly::constant(1);
    for (const auto& a : S.finitePoints())
        n = n * Poly::linearPower(a, -window.lo);
    return n;
}

}  // namespace

std::size_t sectionSpaceDimension(int twist, const PointSet& S, const Window& window)
{
    int top = topExponent(twist, S, window);
    return top < 0 ? 0 : static_cast<std::size_t>(top + 1);
}

std::vector<RatSection> basisOfSections(int twist, const PointSet& S, const Window& window)
{
    std::vector<RatSection> out;
    int top = topExponent(twist, S, window);
    std::map<Scalar, int> poles;
    for (const auto& a : S.finitePoints())
        poles[a] = -window.lo;
    for (int i = 0; i <= top; ++i)
        out.emplace_back(RatFunc(Poly::monomial(1, i), poles), twist, S);
    return out;
}

std::vector<Scalar> sectionCoordinates(const RatFunc& f, int twist, const PointSet& S, const Window& window)
{
    std::size_t dim = sectionSpaceDimension(twist, S, window);
    std::vector<Scalar> coords(dim);
    if (f.isZero())
        return coords;
    RatFunc scaled = f * RatFunc(windowDenominator(S, window));
    if (!scaled.isPolynomial() || scaled.numerator().degree() >= static_cast<int>(dim))
        throw Error(ErrorKind::WindowTooSmall, f.str() + " exceeds the truncation window");
    const auto& c = scaled.numerator().coeffs();
    for (std::size_t k = 0; k < c.size(); ++k)
        coords[k] = c[k];
    return coords;
}

}  // namespace supercoh
