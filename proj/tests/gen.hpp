#pragma once

#include <random>

#include "supercoh/ratfunc.hpp"

namespace testgen {

using supercoh::Scalar;

inline Scalar smallScalar(std::mt19937_64& rng, bool complex = true)
{
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 3);
    Scalar s = Scalar::fraction(num(rng), den(rng));
    if (complex && rng() % 3 == 0)
        s += Scalar::fraction(0, 1, num(rng), den(rng));
    return s;
}

inline supercoh::Poly smallPoly(std::mt19937_64& rng, int maxDegree)
{
    std::uniform_int_distribution<int> deg(0, maxDegree);
    std::vector<Scalar> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c)
        x = smallScalar(rng);
    return supercoh::Poly(c);
}

// Random rational function with poles drawn from the finite points given.
inline supercoh::RatFunc smallRat(std::mt19937_64& rng, const std::vector<Scalar>& polePoints, int maxDegree,
                                  int maxPole)
{
    std::map<Scalar, int> poles;
    std::uniform_int_distribution<int> ord(0, maxPole);
    for (const auto& a : polePoints) {
        int e = ord(rng);
        if (e > 0)
            poles[a] = e;
    }
    return supercoh::RatFunc(smallPoly(rng, maxDegree), poles);
}

}  // namespace testgen
