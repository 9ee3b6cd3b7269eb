#pragma once

#include "gen_der.hpp"
#include "supercoh/supergroup.hpp"

namespace testgen {

inline supercoh::GradedDerivation randomChi(std::mt19937_64& rng, const supercoh::BundleSpec& spec, int k,
                                            int sparsity = 3)
{
    std::vector<supercoh::Scalar> c(supercoh::canonicalMonomials(spec, k).size());
    for (auto& x : c)
        if (rng() % sparsity == 0)
            x = smallScalar(rng);
    return supercoh::fromCanonicalCoordinates(spec, k, c);
}

// exp(chi2 + chi4) moved by a random level-0 cochain, two charts
inline supercoh::GroupCochain randomTwoChartCocycle(std::mt19937_64& rng, const supercoh::BundleSpec& spec)
{
    using namespace supercoh;
    Cover two = Cover::twoChart();
    GroupCochain alpha{singleEntry(two, randomChi(rng, spec, 1) + randomChi(rng, spec, 2))};
    Window w{-3, 3};
    GroupCochain v{randomLevel0(rng, spec, two, 1, w) + randomLevel0(rng, spec, two, 2, w)};
    return groupCompose(alpha, v);
}

// exp(u2 + u4) on three charts with u4 solving du4 = -c_{u2}
inline supercoh::GroupCochain randomThreeChartCocycle(std::mt19937_64& rng, const supercoh::BundleSpec& spec)
{
    using namespace supercoh;
    Cover three = Cover::threeChart();
    Window w{-3, 3};
    DerCochain u2 = liftToThreeChart(randomChi(rng, spec, 1)) + coboundary(randomLevel0(rng, spec, three, 1, w));
    DerCochain u4 = -solveSecondCoboundary(correctionAsDerivation(correctionC(u2)));
    u4 += liftToThreeChart(randomChi(rng, spec, 2));
    return GroupCochain{u2 + u4};
}

// constant block-diagonal element of A(E) with Gaussian-rational entries
inline std::vector<std::vector<supercoh::Scalar>> randomBlockMatrix(std::mt19937_64& rng, const supercoh::BundleSpec& spec,
                                                                     bool unitary)
{
    using supercoh::Scalar;
    const Scalar units[] = {Scalar(1), Scalar(-1), Scalar::i(), -Scalar::i()};
    std::size_t m = static_cast<std::size_t>(spec.m());
    std::vector<std::vector<Scalar>> a(m, std::vector<Scalar>(m));
    for (std::size_t lo = 0; lo < m;) {
        std::size_t hi = lo;
        while (hi < m && spec.twists()[hi] == spec.twists()[lo])
            ++hi;
        if (unitary) {
            std::vector<std::size_t> perm;
            for (std::size_t i = lo; i < hi; ++i)
                perm.push_back(i);
            std::shuffle(perm.begin(), perm.end(), rng);
            for (std::size_t i = lo; i < hi; ++i)
                a[i][perm[i - lo]] = units[rng() % 4];
        } else {
            for (std::size_t i = lo; i < hi; ++i)
                for (std::size_t j = lo; j < hi; ++j)
                    a[i][j] = smallScalar(rng);
        }
        lo = hi;
    }
    return a;
}

inline supercoh::BundleAut randomBlockAut(std::mt19937_64& rng, const supercoh::BundleSpec& spec, bool unitary)
{
    for (;;) {
        try {
            return supercoh::BundleAut::constant(spec, randomBlockMatrix(rng, spec, unitary));
        } catch (const supercoh::Error&) {
        }
    }
}

}  // namespace testgen
