#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "supercoh/derivation.hpp"
#include "supercoh/error.hpp"

namespace supercoh {

// Cover of P^1 by the opens P^1 \ S_i.
class Cover {
public:
    Cover() = default;
    explicit Cover(std::vector<PointSet> charts);
    // S_0 = {inf}, S_1 = {0}
    static Cover twoChart();
    // S_0 = {inf}, S_1 = {0}, S_2 = {1}
    static Cover threeChart();
    // "2" or "3"
    static Cover parse(const std::string& text);

    int size() const { return static_cast<int>(charts_.size()); }
    const PointSet& chart(int i) const { return charts_.at(static_cast<std::size_t>(i)); }
    // Removed set of the intersection of the listed charts.
    PointSet overlap(const std::vector<int>& simplex) const;
    bool isTwoChart() const { return *this == twoChart(); }
    bool isThreeChart() const { return *this == threeChart(); }

    friend bool operator==(const Cover& a, const Cover& b) { return a.charts_ == b.charts_; }
    friend bool operator!=(const Cover& a, const Cover& b) { return !(a == b); }
    std::string str() const;

private:
    std::vector<PointSet> charts_;
};

using Simplex = std::vector<int>;

// Increasing tuples of length level + 1.
std::vector<Simplex> simplices(const Cover& cover, int level);

// Alternating Cech cochain; absent entries are zero.
template <class T>
class CechCochain {
public:
    CechCochain() = default;
    CechCochain(int level, Cover cover, BundleSpec spec) : level_(level), cover_(std::move(cover)), spec_(std::move(spec))
    {
        if (level < 0 || level > 2)
            throw Error(ErrorKind::LevelOutOfRange, "level " + std::to_string(level));
    }

    int level() const { return level_; }
    const Cover& cover() const { return cover_; }
    const BundleSpec& spec() const { return spec_; }
    const std::map<Simplex, T>& entries() const { return entries_; }

    T at(const Simplex& s) const
    {
        auto it = entries_.find(s);
        return it == entries_.end() ? T(spec_, cover_.overlap(s)) : it->second;
    }

    void set(const Simplex& s, const T& value)
    {
        if (static_cast<int>(s.size()) != level_ + 1)
            throw Error(ErrorKind::LevelOutOfRange, "simplex length does not match level");
        if (value.spec() != spec_)
            throw Error(ErrorKind::SpecMismatch, value.spec().str() + " vs " + spec_.str());
        if (value.domain() != cover_.overlap(s))
            throw Error(ErrorKind::DomainMismatch, value.domain().str() + " vs " + cover_.overlap(s).str());
        if (value.isZero())
            entries_.erase(s);
        else
            entries_[s] = value;
    }

    bool isZero() const { return entries_.empty(); }

    CechCochain& operator+=(const CechCochain& o)
    {
        check(o);
        for (const auto& [s, v] : o.entries_) {
            T sum = at(s);
            sum += v;
            set(s, sum);
        }
        return *this;
    }
    CechCochain operator-() const
    {
        CechCochain r = *this;
        for (auto& e : r.entries_)
            e.second = -e.second;
        return r;
    }
    CechCochain& operator-=(const CechCochain& o) { return *this += -o; }
    friend CechCochain operator+(CechCochain a, const CechCochain& b) { return a += b; }
    friend CechCochain operator-(CechCochain a, const CechCochain& b) { return a -= b; }
    friend bool operator==(const CechCochain& a, const CechCochain& b)
    {
        return a.level_ == b.level_ && a.cover_ == b.cover_ && a.spec_ == b.spec_ && a.entries_ == b.entries_;
    }

private:
    void check(const CechCochain& o) const
    {
        if (o.spec_ != spec_)
            throw Error(ErrorKind::SpecMismatch, o.spec_.str() + " vs " + spec_.str());
        if (o.cover_ != cover_ || o.level_ != level_)
            throw Error(ErrorKind::DomainMismatch, "cochains live on different covers or levels");
    }

    int level_ = 0;
    Cover cover_;
    BundleSpec spec_;
    std::map<Simplex, T> entries_;
};

using DerCochain = CechCochain<GradedDerivation>;
using EndoCochain = CechCochain<LinearEndo>;

// (dv)_ij = v_i - v_j,  (du)_ijk = u_jk - u_ik + u_ij
DerCochain coboundary(const DerCochain& c);
EndoCochain coboundary(const EndoCochain& c);
bool isCocycle(const DerCochain& c);
// Every entry is a regular section over its open set.
bool isRegular(const DerCochain& c);
// Entrywise degree part.
DerCochain degreePart(const DerCochain& c, int k);
// Level-0 cochain from chart values / level-1 cochain with the single entry (0,1).
DerCochain level0(const Cover& cover, const std::vector<GradedDerivation>& values);
DerCochain singleEntry(const Cover& cover, const GradedDerivation& u01);

// Restriction of a cocycle to the charts {0, 1} (the two-chart cover).
DerCochain toTwoChart(const DerCochain& c);

struct H1Split {
    DerCochain canonical;
    DerCochain v;
};
// c = canonical + dv with canonical supported on monomials z^j, twist + 1 <= j <= -1,
// of every channel in the d/dz frame. Two-chart cover only.
H1Split canonicalH1(const DerCochain& c);

// (channel, exponent) pairs of canonical representatives in Der_2k, in the
// order used for coordinates.
struct CanonicalMonomial {
    DerKey key;
    int exponent;
};
std::vector<CanonicalMonomial> canonicalMonomials(const BundleSpec& spec, int k);
std::vector<Scalar> canonicalCoordinates(const GradedDerivation& chi, int k);
GradedDerivation fromCanonicalCoordinates(const BundleSpec& spec, int k, const std::vector<Scalar>& coords);

// sum over channels of max(0, -twist - 1)
std::size_t splittingH1Dimension(const BundleSpec& spec, int k);
std::vector<int> channelTwists(const BundleSpec& spec, int k);

// dim H^1 of the direct sum of O(k) over the listed twists, by exact rank of
// the truncated Cech complex. Throws WindowTooSmall if widening by 4 changes
// the answer.
std::size_t h1DimensionOracle(const std::vector<int>& twists, const Cover& cover, const Window& window);
std::size_t h0DimensionOracle(const std::vector<int>& twists, const Cover& cover, const Window& window);

struct CohomologyDims {
    std::size_t h0 = 0;
    std::size_t h1 = 0;
};
// Smallest symmetric-ish window covering every channel twist of Der_2k with margin 2.
Window adequateWindow(const BundleSpec& spec, int k);

// H^0 and H^1 of the derivation sheaf Der_2k itself on the two-chart cover.
CohomologyDims derCohomologyOracle(const BundleSpec& spec, int k, const Window& window);

Scalar randomSmallScalar(std::mt19937_64& rng);
// Canonical representative with about one in `sparsity` coordinates nonzero.
GradedDerivation randomCanonical(std::mt19937_64& rng, const BundleSpec& spec, int k, int sparsity = 3);
// Random regular level-0 cochain of Der_2k: sparse combination of chart bases.
DerCochain randomLevel0(std::mt19937_64& rng, const BundleSpec& spec, const Cover& cover, int k, const Window& window,
                        int density = 3);
// Three-chart cocycle cohomologous (after toTwoChart) to the two-chart class chi.
DerCochain liftToThreeChart(const GradedDerivation& chi01);
// Level-1 w with dw = c for a level-2 cochain on the three-chart cover
// (partial fractions at 0 and 1).
DerCochain solveSecondCoboundary(const DerCochain& c);

}  // namespace supercoh
