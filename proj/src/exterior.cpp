#include "supercoh/exterior.hpp"

#include <algorithm>
#include <bit>

#include "supercoh/error.hpp"

namespace supercoh {

BundleSpec::BundleSpec(std::vector<int> twists) : twists_(std::move(twists))
{
    if (!std::is_sorted(twists_.begin(), twists_.end()))
        throw Error(ErrorKind::InvalidArgument, "twists must be ascending");
    if (twists_.size() > 16)
        throw Error(ErrorKind::InvalidArgument, "odd rank too large");
}

std::string BundleSpec::str() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < twists_.size(); ++i)
        s += (i ? "," : "") + std::to_string(twists_[i]);
    return s + ")";
}

MultiIndex::MultiIndex(std::initializer_list<int> members)
{
    for (int i : members) {
        if (i < 1 || i > 32)
            throw Error(ErrorKind::InvalidArgument, "index out of range");
        bits_ |= 1U << (i - 1);
    }
}

int MultiIndex::size() const { return std::popcount(bits_); }

std::vector<int> MultiIndex::members() const
{
    std::vector<int> out;
    for (int i = 1; i <= 32; ++i)
        if (contains(i))
            out.push_back(i);
    return out;
}

int MultiIndex::twist(const BundleSpec& spec) const
{
    int t = 0;
    for (int i : members())
        t += spec.twist(i);
    return t;
}

bool operator<(MultiIndex a, MultiIndex b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return a.members() < b.members();
}

std::string MultiIndex::str() const
{
    std::string s;
    for (int i : members())
        s += (s.empty() ? "" : ",") + std::to_string(i);
    return s;
}

int wedgeSign(MultiIndex I, MultiIndex J)
{
    if (!I.disjoint(J))
        return 0;
    int inversions = 0;
    for (int j : J.members())
        inversions += std::popcount(I.bits() >> j);
    return inversions % 2 ? -1 : 1;
}

int rightSign(MultiIndex I, int i) { return std::popcount(I.bits() >> i) % 2 ? -1 : 1; }

int leftSign(MultiIndex I, int i) { return std::popcount(I.bits() & ((1U << (i - 1)) - 1U)) % 2 ? -1 : 1; }

SuperSection SuperSection::scalar(BundleSpec spec, PointSet domain, const RatFunc& f)
{
    return monomial(std::move(spec), std::move(domain), MultiIndex(), f);
}

SuperSection SuperSection::monomial(BundleSpec spec, PointSet domain, MultiIndex I, const RatFunc& f)
{
    SuperSection s(std::move(spec), std::move(domain));
    s.addTerm(I, f);
    return s;
}

RatFunc SuperSection::coeff(MultiIndex I) const
{
    auto it = terms_.find(I);
    return it == terms_.end() ? RatFunc() : it->second;
}

void SuperSection::addTerm(MultiIndex I, const RatFunc& f)
{
    if (f.isZero())
        return;
    if (I.bits() >> spec_.m())
        throw Error(ErrorKind::InvalidArgument, "index beyond odd rank");
    auto [it, inserted] = terms_.emplace(I, f);
    if (!inserted) {
        it->second += f;
        if (it->second.isZero())
            terms_.erase(it);
    }
}

bool SuperSection::isValid() const
{
    for (const auto& [I, f] : terms_)
        if (!RatSection::isValid(f, I.twist(spec_), domain_))
            return false;
    return true;
}

void SuperSection::validate() const
{
    for (const auto& [I, f] : terms_)
        RatSection(f, I.twist(spec_), domain_);
}

void SuperSection::checkCompatible(const SuperSection& o) const
{
    if (spec_ != o.spec_)
        throw Error(ErrorKind::SpecMismatch, spec_.str() + " vs " + o.spec_.str());
    if (domain_ != o.domain_)
        throw Error(ErrorKind::DomainMismatch, domain_.str() + " vs " + o.domain_.str());
}

SuperSection SuperSection::operator-() const
{
    SuperSection r = *this;
    for (auto& t : r.terms_)
        t.second = -t.second;
    return r;
}

SuperSection& SuperSection::operator+=(const SuperSection& o)
{
    checkCompatible(o);
    for (const auto& [I, f] : o.terms_)
        addTerm(I, f);
    return *this;
}

SuperSection& SuperSection::operator-=(const SuperSection& o) { return *this += -o; }

SuperSection SuperSection::scaled(const RatFunc& f) const
{
    SuperSection r(spec_, domain_);
    for (const auto& [I, g] : terms_)
        r.addTerm(I, g * f);
    return r;
}

bool operator==(const SuperSection& a, const SuperSection& b)
{
    return a.spec_ == b.spec_ && a.domain_ == b.domain_ && a.terms_ == b.terms_;
}

SuperSection SuperSection::restrict(const PointSet& largerS) const
{
    if (!domain_.isSubsetOf(largerS))
        throw Error(ErrorKind::NotARefinement, domain_.str() + " not contained in " + largerS.str());
    SuperSection r = *this;
    r.domain_ = largerS;
    return r;
}

std::string SuperSection::str() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    for (const auto& [I, f] : terms_) {
        if (!s.empty())
            s += " + ";
        s += "(" + f.str() + ")";
        if (!I.empty())
            s += "·xi[" + I.str() + "]";
    }
    return s;
}

SuperSection wedge(const SuperSection& a, const SuperSection& b)
{
    if (a.spec() != b.spec())
        throw Error(ErrorKind::SpecMismatch, a.spec().str() + " vs " + b.spec().str());
    if (a.domain() != b.domain())
        throw Error(ErrorKind::DomainMismatch, a.domain().str() + " vs " + b.domain().str());
    SuperSection r(a.spec(), a.domain());
    for (const auto& [I, f] : a.terms())
        for (const auto& [J, g] : b.terms()) {
            int s = wedgeSign(I, J);
            if (s != 0)
                r.addTerm(I.unite(J), RatFunc(Scalar(s)) * f * g);
        }
    return r;
}

SuperSection gradePart(const SuperSection& a, int j)
{
    SuperSection r(a.spec(), a.domain());
    for (const auto& [I, f] : a.terms())
        if (I.size() == j)
            r.addTerm(I, f);
    return r;
}

std::vector<MultiIndex> subsetsOfSize(int m, int size)
{
    std::vector<MultiIndex> out;
    for (std::uint32_t b = 0; b < (1U << m); ++b)
        if (std::popcount(b) == size)
            out.emplace_back(b);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace supercoh
