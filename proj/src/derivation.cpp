#include "supercoh/derivation.hpp"

#include <algorithm>

#include "supercoh/error.hpp"

namespace supercoh {

int DerKey::twist(const BundleSpec& spec) const
{
    return isVectorField() ? index.twist(spec) + 2 : index.twist(spec) - spec.twist(kind);
}

std::string DerKey::str() const
{
    std::string s = index.empty() ? "" : "xi[" + index.str() + "]·";
    return s + (isVectorField() ? "d/dz" : "d/dxi[" + std::to_string(kind) + "]");
}

std::vector<DerKey> channelsOfDegree(const BundleSpec& spec, int k)
{
    std::vector<DerKey> out;
    for (MultiIndex I : subsetsOfSize(spec.m(), 2 * k))
        out.push_back(DerKey::vectorField(I));
    for (MultiIndex J : subsetsOfSize(spec.m(), 2 * k + 1))
        for (int t = 1; t <= spec.m(); ++t)
            out.push_back(DerKey::contraction(J, t));
    return out;
}

// ---------------------------------------------------------------- GradedDerivation

GradedDerivation GradedDerivation::term(BundleSpec spec, PointSet domain, DerKey key, const RatFunc& f)
{
    GradedDerivation d(std::move(spec), std::move(domain));
    d.addTerm(key, f);
    return d;
}

RatFunc GradedDerivation::coeff(const DerKey& key) const
{
    auto it = terms_.find(key);
    return it == terms_.end() ? RatFunc() : it->second;
}

void GradedDerivation::addTerm(const DerKey& key, const RatFunc& f)
{
    if (f.isZero())
        return;
    if (!key.isEven())
        throw Error(ErrorKind::NotADerivation, "odd channel " + key.str());
    if ((key.index.bits() >> spec_.m()) || key.kind < 0 || key.kind > spec_.m())
        throw Error(ErrorKind::InvalidArgument, "channel beyond odd rank: " + key.str());
    auto [it, inserted] = terms_.emplace(key, f);
    if (!inserted) {
        it->second += f;
        if (it->second.isZero())
            terms_.erase(it);
    }
}

void GradedDerivation::checkCompatible(const GradedDerivation& o) const
{
    if (spec_ != o.spec_)
        throw Error(ErrorKind::SpecMismatch, spec_.str() + " vs " + o.spec_.str());
    if (domain_ != o.domain_)
        throw Error(ErrorKind::DomainMismatch, domain_.str() + " vs " + o.domain_.str());
}

GradedDerivation GradedDerivation::operator-() const
{
    GradedDerivation r = *this;
    for (auto& t : r.terms_)
        t.second = -t.second;
    return r;
}

GradedDerivation& GradedDerivation::operator+=(const GradedDerivation& o)
{
    checkCompatible(o);
    for (const auto& [k, f] : o.terms_)
        addTerm(k, f);
    return *this;
}

GradedDerivation& GradedDerivation::operator-=(const GradedDerivation& o) { return *this += -o; }

GradedDerivation GradedDerivation::scaled(const Scalar& c) const
{
    GradedDerivation r(spec_, domain_);
    for (const auto& [k, f] : terms_)
        r.addTerm(k, f * RatFunc(c));
    return r;
}

bool operator==(const GradedDerivation& a, const GradedDerivation& b)
{
    return a.spec_ == b.spec_ && a.domain_ == b.domain_ && a.terms_ == b.terms_;
}

GradedDerivation GradedDerivation::restrict(const PointSet& largerS) const
{
    if (!domain_.isSubsetOf(largerS))
        throw Error(ErrorKind::NotARefinement, domain_.str() + " not contained in " + largerS.str());
    return withDomain(largerS);
}

GradedDerivation GradedDerivation::withDomain(const PointSet& S) const
{
    GradedDerivation r = *this;
    r.domain_ = S;
    return r;
}

int GradedDerivation::lowestDegree() const
{
    if (terms_.empty())
        return -1;
    return terms_.begin()->first.gradeShift() / 2;
}

std::string GradedDerivation::str() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    for (const auto& [k, f] : terms_) {
        if (!s.empty())
            s += " + ";
        s += "(" + f.str() + ")·" + k.str();
    }
    return s;
}

GradedDerivation degreePart(const GradedDerivation& D, int k)
{
    GradedDerivation r(D.spec(), D.domain());
    for (const auto& [key, f] : D.terms())
        if (key.gradeShift() == 2 * k)
            r.addTerm(key, f);
    return r;
}

SuperSection apply(const GradedDerivation& D, const SuperSection& a)
{
    if (D.spec() != a.spec())
        throw Error(ErrorKind::SpecMismatch, D.spec().str() + " vs " + a.spec().str());
    if (D.domain() != a.domain())
        throw Error(ErrorKind::DomainMismatch, D.domain().str() + " vs " + a.domain().str());
    SuperSection r(a.spec(), a.domain());
    for (const auto& [key, f] : D.terms())
        for (const auto& [K, g] : a.terms()) {
            if (key.isVectorField()) {
                int s = wedgeSign(key.index, K);
                if (s != 0)
                    r.addTerm(key.index.unite(K), RatFunc(Scalar(s)) * f * g.derivative());
                continue;
            }
            if (!K.contains(key.kind))
                continue;
            MultiIndex rest = K.without(key.kind);
            int s = leftSign(K, key.kind) * wedgeSign(key.index, rest);
            if (s != 0)
                r.addTerm(key.index.unite(rest), RatFunc(Scalar(s)) * f * g);
        }
    return r;
}

// ---------------------------------------------------------------- LinearEndo

std::string EndoKey::str() const
{
    std::string s = index.empty() ? "" : "xi[" + index.str() + "]";
    if (order > 0)
        s += (s.empty() ? "" : "·") + std::string("d/dz") + (order > 1 ? "^" + std::to_string(order) : "");
    for (int t : contractions.members())
        s += (s.empty() ? "" : "·") + std::string("d/dxi[") + std::to_string(t) + "]";
    return s.empty() ? "1" : s;
}

LinearEndo LinearEndo::identity(BundleSpec spec, PointSet domain)
{
    LinearEndo e(std::move(spec), std::move(domain));
    e.addTerm(EndoKey{}, RatFunc(Scalar(1)));
    return e;
}

LinearEndo LinearEndo::fromDerivation(const GradedDerivation& D)
{
    LinearEndo e(D.spec(), D.domain());
    for (const auto& [key, f] : D.terms()) {
        if (key.isVectorField())
            e.addTerm(EndoKey{key.index, 1, MultiIndex()}, f);
        else
            e.addTerm(EndoKey{key.index, 0, MultiIndex::single(key.kind)}, f);
    }
    return e;
}

void LinearEndo::addTerm(const EndoKey& key, const RatFunc& f)
{
    if (f.isZero())
        return;
    auto [it, inserted] = terms_.emplace(key, f);
    if (!inserted) {
        it->second += f;
        if (it->second.isZero())
            terms_.erase(it);
    }
}

LinearEndo LinearEndo::operator-() const
{
    LinearEndo r = *this;
    for (auto& t : r.terms_)
        t.second = -t.second;
    return r;
}

LinearEndo& LinearEndo::operator+=(const LinearEndo& o)
{
    if (spec_ != o.spec_)
        throw Error(ErrorKind::SpecMismatch, spec_.str() + " vs " + o.spec_.str());
    if (domain_ != o.domain_)
        throw Error(ErrorKind::DomainMismatch, domain_.str() + " vs " + o.domain_.str());
    for (const auto& [k, f] : o.terms_)
        addTerm(k, f);
    return *this;
}

LinearEndo& LinearEndo::operator-=(const LinearEndo& o) { return *this += -o; }

LinearEndo LinearEndo::scaled(const Scalar& c) const
{
    LinearEndo r(spec_, domain_);
    for (const auto& [k, f] : terms_)
        r.addTerm(k, f * RatFunc(c));
    return r;
}

bool operator==(const LinearEndo& a, const LinearEndo& b)
{
    return a.spec_ == b.spec_ && a.domain_ == b.domain_ && a.terms_ == b.terms_;
}

LinearEndo LinearEndo::gradePart(int d) const
{
    LinearEndo r(spec_, domain_);
    for (const auto& [k, f] : terms_)
        if (k.gradeShift() == d)
            r.addTerm(k, f);
    return r;
}

LinearEndo LinearEndo::restrict(const PointSet& largerS) const
{
    if (!domain_.isSubsetOf(largerS))
        throw Error(ErrorKind::NotARefinement, domain_.str() + " not contained in " + largerS.str());
    LinearEndo r = *this;
    r.domain_ = largerS;
    return r;
}

GradedDerivation LinearEndo::toDerivation() const
{
    GradedDerivation D(spec_, domain_);
    for (const auto& [k, f] : terms_) {
        if (k.order == 1 && k.contractions.empty())
            D.addTerm(DerKey::vectorField(k.index), f);
        else if (k.order == 0 && k.contractions.size() == 1)
            D.addTerm(DerKey::contraction(k.index, k.contractions.members().front()), f);
        else
            throw Error(ErrorKind::NotADerivation, "term " + k.str() + " is not first order");
    }
    return D;
}

std::string LinearEndo::str() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    for (const auto& [k, f] : terms_) {
        if (!s.empty())
            s += " + ";
        s += "(" + f.str() + ")·" + k.str();
    }
    return s;
}

SuperSection apply(const LinearEndo& A, const SuperSection& a)
{
    if (A.spec() != a.spec())
        throw Error(ErrorKind::SpecMismatch, A.spec().str() + " vs " + a.spec().str());
    if (A.domain() != a.domain())
        throw Error(ErrorKind::DomainMismatch, A.domain().str() + " vs " + a.domain().str());
    SuperSection r(a.spec(), a.domain());
    for (const auto& [key, f] : A.terms())
        for (const auto& [K0, g0] : a.terms()) {
            MultiIndex K = K0;
            int s = 1;
            auto ts = key.contractions.members();
            bool dead = false;
            for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
                if (!K.contains(*it)) {
                    dead = true;
                    break;
                }
                s *= leftSign(K, *it);
                K = K.without(*it);
            }
            if (dead)
                continue;
            s *= wedgeSign(key.index, K);
            if (s == 0)
                continue;
            RatFunc g = g0;
            for (int k = 0; k < key.order; ++k)
                g = g.derivative();
            r.addTerm(key.index.unite(K), RatFunc(Scalar(s)) * f * g);
        }
    return r;
}

namespace {

struct Partial {
    RatFunc coeff;
    MultiIndex xi;
    int order;
    MultiIndex contractions;
};

Scalar binomial(int n, int k)
{
    Scalar b(1);
    for (int i = 1; i <= k; ++i)
        b = b * Scalar(n - k + i) / Scalar(i);
    return b;
}

}  // namespace

LinearEndo compose(const LinearEndo& A, const LinearEndo& B)
{
    if (A.spec() != B.spec())
        throw Error(ErrorKind::SpecMismatch, A.spec().str() + " vs " + B.spec().str());
    if (A.domain() != B.domain())
        throw Error(ErrorKind::DomainMismatch, A.domain().str() + " vs " + B.domain().str());
    LinearEndo r(A.spec(), A.domain());
    for (const auto& [ka, f] : A.terms())
        for (const auto& [kb, g] : B.terms()) {
            std::vector<Partial> parts{{g, kb.index, kb.order, kb.contractions}};
            auto ts = ka.contractions.members();
            for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
                int t = *it;
                std::vector<Partial> next;
                for (const auto& p : parts) {
                    if (p.xi.contains(t))
                        next.push_back({p.coeff * RatFunc(Scalar(leftSign(p.xi, t))), p.xi.without(t), p.order,
                                        p.contractions});
                    if (!p.contractions.contains(t)) {
                        int s = (p.xi.size() % 2 ? -1 : 1) * leftSign(p.contractions.with(t), t);
                        next.push_back({p.coeff * RatFunc(Scalar(s)), p.xi, p.order, p.contractions.with(t)});
                    }
                }
                parts = std::move(next);
            }
            for (const auto& p : parts) {
                int s = wedgeSign(ka.index, p.xi);
                if (s == 0)
                    continue;
                RatFunc c = p.coeff;
                for (int q = 0; q <= ka.order; ++q) {
                    // d^a (c X) = sum_q C(a,q) c^{(q)} d^{a-q} X
                    r.addTerm(EndoKey{ka.index.unite(p.xi), ka.order - q + p.order, p.contractions},
                              RatFunc(binomial(ka.order, q) * Scalar(s)) * f * c);
                    c = c.derivative();
                }
            }
        }
    return r;
}

LinearEndo compose(const GradedDerivation& A, const GradedDerivation& B)
{
    return compose(LinearEndo::fromDerivation(A), LinearEndo::fromDerivation(B));
}

GradedDerivation bracket(const GradedDerivation& A, const GradedDerivation& B)
{
    LinearEndo a = LinearEndo::fromDerivation(A), b = LinearEndo::fromDerivation(B);
    return (compose(a, b) - compose(b, a)).toDerivation();
}

GradedDerivation fromGeneratorValues(const BundleSpec& spec, const PointSet& domain, const SuperSection& zImage,
                                     const std::vector<SuperSection>& xiImages)
{
    GradedDerivation D(spec, domain);
    for (const auto& [J, c] : zImage.terms())
        D.addTerm(DerKey::vectorField(J), c);
    for (int t = 1; t <= spec.m(); ++t)
        for (const auto& [J, c] : xiImages.at(static_cast<std::size_t>(t - 1)).terms())
            D.addTerm(DerKey::contraction(J, t), c);
    return D;
}

GradedDerivation conjugate(const BundleAut& phi, const GradedDerivation& D)
{
    if (phi.spec() != D.spec())
        throw Error(ErrorKind::SpecMismatch, phi.spec().str() + " vs " + D.spec().str());
    const BundleSpec& spec = D.spec();
    const PointSet& S = D.domain();
    BundleAut inv = phi.inverse();
    SuperSection z = SuperSection::scalar(spec, S, RatFunc::monomial(1, 1));
    SuperSection zImage = phi.apply(apply(D, z));
    std::vector<SuperSection> xi;
    for (int i = 1; i <= spec.m(); ++i)
        xi.push_back(phi.apply(apply(D, inv.applyMonomial(MultiIndex::single(i), S))));
    return fromGeneratorValues(spec, S, zImage, xi);
}

// ---------------------------------------------------------------- frames

std::map<DerKey, RatFunc> frameCoefficients(const GradedDerivation& D, const Scalar& a)
{
    std::map<DerKey, RatFunc> out = D.terms();
    const BundleSpec& spec = D.spec();
    RatFunc inv = RatFunc::polar(1, a, 1);
    for (const auto& [key, f] : D.terms()) {
        if (!key.isVectorField())
            continue;
        for (int t = 1; t <= spec.m(); ++t) {
            if (key.index.contains(t) || spec.twist(t) == 0)
                continue;
            MultiIndex J = key.index.with(t);
            RatFunc corr = RatFunc(Scalar(spec.twist(t) * rightSign(J, t))) * inv * f;
            RatFunc& slot = out[DerKey::contraction(J, t)];
            slot += corr;
            if (slot.isZero())
                out.erase(DerKey::contraction(J, t));
        }
    }
    return out;
}

GradedDerivation fromFrameCoefficients(const BundleSpec& spec, const PointSet& domain,
                                       const std::map<DerKey, RatFunc>& coeffs, const Scalar& a)
{
    GradedDerivation D(spec, domain);
    RatFunc inv = RatFunc::polar(1, a, 1);
    for (const auto& [key, f] : coeffs) {
        D.addTerm(key, f);
        if (!key.isVectorField())
            continue;
        for (int t = 1; t <= spec.m(); ++t) {
            if (key.index.contains(t) || spec.twist(t) == 0)
                continue;
            MultiIndex J = key.index.with(t);
            D.addTerm(DerKey::contraction(J, t), -(RatFunc(Scalar(spec.twist(t) * rightSign(J, t))) * inv * f));
        }
    }
    return D;
}

bool isRegular(const GradedDerivation& D)
{
    const PointSet& S = D.domain();
    for (const auto& [key, f] : D.terms())
        for (const auto& pe : f.poles())
            if (!S.containsFinite(pe.first))
                return false;
    if (S.hasInfinity())
        return true;
    // degree at infinity in the frame d/dz - z^{-1} E
    for (const auto& [key, f] : frameCoefficients(D, Scalar(0)))
        if (f.degreeAtInfinity() > key.twist(D.spec()))
            return false;
    return true;
}

}  // namespace supercoh

namespace supercoh {

std::vector<GradedDerivation> sectionBasis(const BundleSpec& spec, const PointSet& S, int k, const Window& window)
{
    if (S.empty())
        throw Error(ErrorKind::UnsupportedCover, "chart bases need a removed point");
    std::vector<GradedDerivation> out;
    bool ksiFrame = S.hasInfinity();
    Scalar a = ksiFrame ? Scalar() : S.finitePoints().front();
    for (const DerKey& key : channelsOfDegree(spec, k))
        for (const RatSection& b : basisOfSections(key.twist(spec), S, window)) {
            if (ksiFrame)
                out.push_back(GradedDerivation::term(spec, S, key, b.func()));
            else
                out.push_back(fromFrameCoefficients(spec, S, {{key, b.func()}}, a));
        }
    return out;
}

}  // namespace supercoh
