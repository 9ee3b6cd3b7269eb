#pragma once

#include <map>
#include <string>
#include <vector>

#include "supercoh/bundle.hpp"
#include "supercoh/exterior.hpp"

namespace supercoh {

// Channel of a derivation term: xi_I d/dz (kind 0) or xi_I d/dxi_t (kind t).
struct DerKey {
    MultiIndex index;
    int kind = 0;

    static DerKey vectorField(MultiIndex I) { return DerKey{I, 0}; }
    static DerKey contraction(MultiIndex I, int t) { return DerKey{I, t}; }
    bool isVectorField() const { return kind == 0; }

    // l_I + 2 or l_I - l_t
    int twist(const BundleSpec& spec) const;
    // grade raising degree: |I| for d/dz, |I| - 1 for d/dxi_t
    int gradeShift() const { return isVectorField() ? index.size() : index.size() - 1; }
    bool isEven() const { return gradeShift() % 2 == 0; }

    friend bool operator==(const DerKey& a, const DerKey& b) { return a.index == b.index && a.kind == b.kind; }
    friend bool operator<(const DerKey& a, const DerKey& b)
    {
        if (a.gradeShift() != b.gradeShift())
            return a.gradeShift() < b.gradeShift();
        if (a.kind != b.kind)
            return a.kind < b.kind;
        return a.index < b.index;
    }
    std::string str() const;
};

// All even channels of Der_2k for the spec (k >= 0).
std::vector<DerKey> channelsOfDegree(const BundleSpec& spec, int k);

// Even derivation of the exterior algebra over P^1 \ S, stored in the frame
// (d/dz, d/dxi_t) of the z-trivialization.
class GradedDerivation {
public:
    GradedDerivation() = default;
    GradedDerivation(BundleSpec spec, PointSet domain) : spec_(std::move(spec)), domain_(std::move(domain)) {}

    static GradedDerivation term(BundleSpec spec, PointSet domain, DerKey key, const RatFunc& f);

    const BundleSpec& spec() const { return spec_; }
    const PointSet& domain() const { return domain_; }
    const std::map<DerKey, RatFunc>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    RatFunc coeff(const DerKey& key) const;

    // Throws NotADerivation for odd channels.
    void addTerm(const DerKey& key, const RatFunc& f);

    GradedDerivation operator-() const;
    GradedDerivation& operator+=(const GradedDerivation& o);
    GradedDerivation& operator-=(const GradedDerivation& o);
    friend GradedDerivation operator+(GradedDerivation a, const GradedDerivation& b) { return a += b; }
    friend GradedDerivation operator-(GradedDerivation a, const GradedDerivation& b) { return a -= b; }
    GradedDerivation scaled(const Scalar& c) const;
    friend bool operator==(const GradedDerivation& a, const GradedDerivation& b);
    friend bool operator!=(const GradedDerivation& a, const GradedDerivation& b) { return !(a == b); }

    GradedDerivation restrict(const PointSet& largerS) const;
    // Same terms regarded on another open set; no checks.
    GradedDerivation withDomain(const PointSet& S) const;

    // Lowest k with a nonzero Der_2k part; -1 for zero.
    int lowestDegree() const;

    std::string str() const;

private:
    void checkCompatible(const GradedDerivation& o) const;
    BundleSpec spec_;
    PointSet domain_;
    std::map<DerKey, RatFunc> terms_;
};

GradedDerivation degreePart(const GradedDerivation& D, int k);

SuperSection apply(const GradedDerivation& D, const SuperSection& a);

// Key of a normal-ordered endomorphism term f xi_I (d/dz)^order d/dxi_{t1} ... d/dxi_{tr},
// T = {t1 < ... < tr}, d/dxi_{t1} leftmost.
struct EndoKey {
    MultiIndex index;
    int order = 0;
    MultiIndex contractions;

    int gradeShift() const { return index.size() - contractions.size(); }

    friend bool operator==(const EndoKey& a, const EndoKey& b)
    {
        return a.index == b.index && a.order == b.order && a.contractions == b.contractions;
    }
    friend bool operator<(const EndoKey& a, const EndoKey& b)
    {
        if (a.index != b.index)
            return a.index < b.index;
        if (a.order != b.order)
            return a.order < b.order;
        return a.contractions < b.contractions;
    }
    std::string str() const;
};

// Differential operator on the exterior algebra in normal form.
class LinearEndo {
public:
    LinearEndo() = default;
    LinearEndo(BundleSpec spec, PointSet domain) : spec_(std::move(spec)), domain_(std::move(domain)) {}

    static LinearEndo identity(BundleSpec spec, PointSet domain);
    static LinearEndo fromDerivation(const GradedDerivation& D);

    const BundleSpec& spec() const { return spec_; }
    const PointSet& domain() const { return domain_; }
    const std::map<EndoKey, RatFunc>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    void addTerm(const EndoKey& key, const RatFunc& f);

    LinearEndo operator-() const;
    LinearEndo& operator+=(const LinearEndo& o);
    LinearEndo& operator-=(const LinearEndo& o);
    friend LinearEndo operator+(LinearEndo a, const LinearEndo& b) { return a += b; }
    friend LinearEndo operator-(LinearEndo a, const LinearEndo& b) { return a -= b; }
    LinearEndo scaled(const Scalar& c) const;
    friend bool operator==(const LinearEndo& a, const LinearEndo& b);

    // Part raising the exterior grade by exactly d.
    LinearEndo gradePart(int d) const;
    LinearEndo restrict(const PointSet& largerS) const;
    // Throws NotADerivation unless every term is first order without a
    // multiplication part.
    GradedDerivation toDerivation() const;

    std::string str() const;

private:
    BundleSpec spec_;
    PointSet domain_;
    std::map<EndoKey, RatFunc> terms_;
};

SuperSection apply(const LinearEndo& A, const SuperSection& a);
// a -> A(B(a))
LinearEndo compose(const LinearEndo& A, const LinearEndo& B);
LinearEndo compose(const GradedDerivation& A, const GradedDerivation& B);
// A o B - B o A rewritten as a derivation.
GradedDerivation bracket(const GradedDerivation& A, const GradedDerivation& B);

// The derivation with D(z) = zImage and D(xi_t) = xiImages[t-1].
GradedDerivation fromGeneratorValues(const BundleSpec& spec, const PointSet& domain, const SuperSection& zImage,
                                     const std::vector<SuperSection>& xiImages);

// phi o D o phi^{-1}
GradedDerivation conjugate(const BundleAut& phi, const GradedDerivation& D);

// Regularity of D as a section of the derivation sheaf over P^1 \ S. At
// infinity the frame d/dz - z^{-1} E (E the Euler field sum l_i xi_i d/dxi_i)
// is the regular one, so contraction coefficients pick up a correction from
// the d/dz channel one grade lower.
bool isRegular(const GradedDerivation& D);

// Coefficients in the frame d/dz - (z-a)^{-1} E, d/dxi_t.
std::map<DerKey, RatFunc> frameCoefficients(const GradedDerivation& D, const Scalar& a);
GradedDerivation fromFrameCoefficients(const BundleSpec& spec, const PointSet& domain,
                                       const std::map<DerKey, RatFunc>& coeffs, const Scalar& a);

}  // namespace supercoh

namespace supercoh {

// Basis of the window-truncated sections of Der_2k over P^1 \ S (S nonempty).
// When infinity is kept, the frame d/dz - (z-a)^{-1} E at a finite a in S
// carries the per-channel bases.
std::vector<GradedDerivation> sectionBasis(const BundleSpec& spec, const PointSet& S, int k, const Window& window);

}  // namespace supercoh
