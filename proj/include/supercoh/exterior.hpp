#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "supercoh/ratfunc.hpp"

namespace supercoh {

// E = O(l_1) + ... + O(l_m), twists ascending.
class BundleSpec {
public:
    BundleSpec() = default;
    explicit BundleSpec(std::vector<int> twists);

    int m() const { return static_cast<int>(twists_.size()); }
    // 1-based
    int twist(int i) const { return twists_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<int>& twists() const { return twists_; }

    friend bool operator==(const BundleSpec& a, const BundleSpec& b) { return a.twists_ == b.twists_; }
    friend bool operator!=(const BundleSpec& a, const BundleSpec& b) { return !(a == b); }

    std::string str() const;

private:
    std::vector<int> twists_;
};

// Subset of {1..m} stored as a bitmask, bit i-1 for index i.
class MultiIndex {
public:
    constexpr MultiIndex() = default;
    constexpr explicit MultiIndex(std::uint32_t bits) : bits_(bits) {}
    MultiIndex(std::initializer_list<int> members);
    static MultiIndex single(int i) { return MultiIndex(1U << (i - 1)); }
    static MultiIndex full(int m) { return MultiIndex((1U << m) - 1U); }

    std::uint32_t bits() const { return bits_; }
    int size() const;
    bool empty() const { return bits_ == 0; }
    bool contains(int i) const { return (bits_ >> (i - 1)) & 1U; }
    bool disjoint(MultiIndex o) const { return (bits_ & o.bits_) == 0; }
    bool subsetOf(MultiIndex o) const { return (bits_ & ~o.bits_) == 0; }
    std::vector<int> members() const;

    MultiIndex with(int i) const { return MultiIndex(bits_ | (1U << (i - 1))); }
    MultiIndex without(int i) const { return MultiIndex(bits_ & ~(1U << (i - 1))); }
    MultiIndex unite(MultiIndex o) const { return MultiIndex(bits_ | o.bits_); }
    MultiIndex minus(MultiIndex o) const { return MultiIndex(bits_ & ~o.bits_); }

    // l_I
    int twist(const BundleSpec& spec) const;

    friend bool operator==(MultiIndex a, MultiIndex b) { return a.bits_ == b.bits_; }
    friend bool operator!=(MultiIndex a, MultiIndex b) { return a.bits_ != b.bits_; }
    // graded-lex: by size, then by member list
    friend bool operator<(MultiIndex a, MultiIndex b);

    // "1,2"
    std::string str() const;

private:
    std::uint32_t bits_ = 0;
};

// Koszul sign of xi_I ^ xi_J -> xi_{I u J}; 0 if they overlap.
int wedgeSign(MultiIndex I, MultiIndex J);
// sign of xi_I = sigma * xi_{I\i} ^ xi_i (moving xi_i to the right end): (-1)^{#{k in I : k > i}}
int rightSign(MultiIndex I, int i);
// sign of xi_I = sigma * xi_i ^ xi_{I\i}: (-1)^{#{k in I : k < i}}
int leftSign(MultiIndex I, int i);

// Section of the exterior algebra over P^1 \ S.
class SuperSection {
public:
    SuperSection() = default;
    SuperSection(BundleSpec spec, PointSet domain) : spec_(std::move(spec)), domain_(std::move(domain)) {}

    static SuperSection scalar(BundleSpec spec, PointSet domain, const RatFunc& f);
    static SuperSection monomial(BundleSpec spec, PointSet domain, MultiIndex I, const RatFunc& f);

    const BundleSpec& spec() const { return spec_; }
    const PointSet& domain() const { return domain_; }
    const std::map<MultiIndex, RatFunc>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    RatFunc coeff(MultiIndex I) const;

    // Accumulates into the term at I; zero results are dropped. Validity is
    // not checked here.
    void addTerm(MultiIndex I, const RatFunc& f);
    // Throws InvalidSection if some term is not a section of O(l_I) over the domain.
    void validate() const;
    bool isValid() const;

    SuperSection operator-() const;
    SuperSection& operator+=(const SuperSection& o);
    SuperSection& operator-=(const SuperSection& o);
    friend SuperSection operator+(SuperSection a, const SuperSection& b) { return a += b; }
    friend SuperSection operator-(SuperSection a, const SuperSection& b) { return a -= b; }
    SuperSection scaled(const RatFunc& f) const;
    friend bool operator==(const SuperSection& a, const SuperSection& b);

    SuperSection restrict(const PointSet& largerS) const;

    std::string str() const;

private:
    void checkCompatible(const SuperSection& o) const;
    BundleSpec spec_;
    PointSet domain_;
    std::map<MultiIndex, RatFunc> terms_;
};

SuperSection wedge(const SuperSection& a, const SuperSection& b);
SuperSection gradePart(const SuperSection& a, int j);

// All subsets of {1..m} of the given size, ascending.
std::vector<MultiIndex> subsetsOfSize(int m, int size);

}  // namespace supercoh
