#pragma once

#include <vector>

#include "supercoh/exterior.hpp"

namespace supercoh {

// Global automorphism of E acting on the odd generators:
// phi(xi_j) = sum_i A_ij(z) xi_i with deg A_ij <= l_i - l_j (zero when negative).
// Blocks of equal twist are constant matrices (the A(E) part); the entries
// between distinct twists form the unipotent N(E) part.
class BundleAut {
public:
    BundleAut() = default;
    // Throws InvalidArgument on degree bound violations or singular blocks.
    BundleAut(BundleSpec spec, std::vector<std::vector<Poly>> matrix);

    static BundleAut identity(const BundleSpec& spec);
    static BundleAut diagonal(const BundleSpec& spec, const std::vector<Scalar>& lambda);
    // Constant matrix; entries between distinct twists must vanish unless allowed.
    static BundleAut constant(const BundleSpec& spec, const std::vector<std::vector<Scalar>>& a);

    const BundleSpec& spec() const { return spec_; }
    // 1-based
    const Poly& entry(int i, int j) const { return a_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]; }

    // Algebra automorphism of the exterior algebra (fixes z).
    SuperSection apply(const SuperSection& s) const;
    // phi(xi_I) on the given domain.
    SuperSection applyMonomial(MultiIndex I, const PointSet& domain) const;

    BundleAut inverse() const;
    // (this * o)(x) = this(o(x))
    BundleAut compose(const BundleAut& o) const;

    friend bool operator==(const BundleAut& a, const BundleAut& b) { return a.spec_ == b.spec_ && a.a_ == b.a_; }

private:
    BundleSpec spec_;
    std::vector<std::vector<Poly>> a_;
};

}  // namespace supercoh
