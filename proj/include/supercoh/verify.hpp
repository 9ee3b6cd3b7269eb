#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "supercoh/supergroup.hpp"

namespace supercoh {

// Exact identity checks over seeded samples.
struct CheckResult {
    std::string name;
    int trials = 0;
    int failures = 0;
    std::string detail;

    bool passed() const { return failures == 0 && trials > 0; }
    nlohmann::json toJson() const;
};

// Sample generators shared by the CLI and the acceptance harness.
GradedDerivation randomDerivation(std::mt19937_64& rng, const BundleSpec& spec, const PointSet& S, int k, int density = 5);
std::vector<std::vector<Scalar>> randomBlockMatrix(std::mt19937_64& rng, const BundleSpec& spec, bool unitary);
// Constant block-diagonal element; with unipotent = true an N(E) part is added.
BundleAut randomBlockAut(std::mt19937_64& rng, const BundleSpec& spec, bool unitary, bool unipotent = false);
std::vector<std::vector<Scalar>> constantPart(const BundleAut& phi);
// Sorted twist vector in [lo, hi]^m satisfying the classification inequalities.
std::vector<int> randomAdmissibleTwists(std::mt19937_64& rng, int m, int lo, int hi);

CheckResult checkLineBundleH1(int kmin, int kmax);
CheckResult checkRank3Formula(int lo, int hi);
CheckResult checkExpLog(std::uint64_t seed, int count, const std::vector<BundleSpec>& specs);
CheckResult checkGroupLaw(std::uint64_t seed, int count, const std::vector<BundleSpec>& specs);
CheckResult checkCorrectionShift(std::uint64_t seed, int count, const BundleSpec& spec);
CheckResult checkCocycleCorrection(std::uint64_t seed, int count, const BundleSpec& spec);
CheckResult checkSigmaInvariance(std::uint64_t seed, int count, const BundleSpec& spec);
CheckResult checkEquivariance(std::uint64_t seed, int count, const BundleSpec& spec);
CheckResult checkReduction(std::uint64_t seed, int count, const BundleSpec& F, const BundleSpec& Fprime);
CheckResult checkElevenSplit(std::uint64_t seed, int count, const BundleSpec& F, const BundleSpec& Fprime);
CheckResult checkDetAction(std::uint64_t seed, int count, const std::vector<BundleSpec>& specs);
// Admissible vectors give H^0(Der_2) = 0; the violating vector must not.
CheckResult checkH0Gate(std::uint64_t seed, int count, const std::vector<int>& violating);

}  // namespace supercoh
