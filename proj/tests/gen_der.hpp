#pragma once

#include "gen.hpp"
#include "supercoh/derivation.hpp"

namespace testgen {

// Sparse combination of chart basis elements: a regular section of Der_2k.
inline supercoh::GradedDerivation regularDerivation(std::mt19937_64& rng, const supercoh::BundleSpec& spec,
                                                    const supercoh::PointSet& S, int k, const supercoh::Window& w,
                                                    int density = 4)
{
    supercoh::GradedDerivation D(spec, S);
    auto basis = supercoh::sectionBasis(spec, S, k, w);
    if (basis.empty())
        return D;
    for (int n = 0; n < density; ++n) {
        const auto& b = basis[rng() % basis.size()];
        D += b.scaled(smallScalar(rng));
    }
    return D;
}

// Unconstrained even derivation with coefficients having poles at the given points.
inline supercoh::GradedDerivation anyDerivation(std::mt19937_64& rng, const supercoh::BundleSpec& spec,
                                                const supercoh::PointSet& S, int maxShift, int density = 5)
{
    supercoh::GradedDerivation D(spec, S);
    std::vector<supercoh::DerKey> keys;
    for (int k = 0; 2 * k <= maxShift; ++k)
        for (const auto& key : supercoh::channelsOfDegree(spec, k))
            keys.push_back(key);
    for (int n = 0; n < density; ++n)
        D.addTerm(keys[rng() % keys.size()], smallRat(rng, S.finitePoints(), 2, 2));
    return D;
}

inline supercoh::SuperSection anySection(std::mt19937_64& rng, const supercoh::BundleSpec& spec,
                                         const supercoh::PointSet& S)
{
    supercoh::SuperSection s(spec, S);
    for (std::uint32_t b = 0; b < (1U << spec.m()); ++b)
        if (rng() % 3 == 0)
            s.addTerm(supercoh::MultiIndex(b), smallRat(rng, S.finitePoints(), 2, 1));
    return s;
}

inline supercoh::BundleAut randomAut(std::mt19937_64& rng, const supercoh::BundleSpec& spec)
{
    int m = spec.m();
    for (;;) {
        std::vector<std::vector<supercoh::Poly>> a(static_cast<std::size_t>(m), std::vector<supercoh::Poly>(static_cast<std::size_t>(m)));
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= m; ++j) {
                int bound = spec.twist(i) - spec.twist(j);
                if (bound >= 0)
                    a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = smallPoly(rng, bound);
            }
        try {
            return supercoh::BundleAut(spec, a);
        } catch (const std::exception&) {
        }
    }
}

}  // namespace testgen
