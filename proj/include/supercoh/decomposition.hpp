#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supercoh/supergroup.hpp"

namespace supercoh {

// E = F + F' with the F indices of E stored as a mask. E keeps ascending
// twists; ties between F and F' put the F entries first.
class SplitSpec {
public:
    SplitSpec(BundleSpec E, MultiIndex fIndices);
    static SplitSpec fromParts(const BundleSpec& F, const BundleSpec& Fprime);

    const BundleSpec& E() const { return e_; }
    const BundleSpec& F() const { return f_; }
    const BundleSpec& Fprime() const { return fp_; }
    MultiIndex fIndices() const { return fMask_; }
    MultiIndex fprimeIndices() const { return MultiIndex::full(e_.m()).minus(fMask_); }
    int rankF() const { return f_.m(); }
    int rankFprime() const { return fp_.m(); }

    // index of E for index i of F (1-based)
    int embedF(int i) const { return fPos_.at(static_cast<std::size_t>(i - 1)); }
    MultiIndex embedF(MultiIndex I) const;
    // F-index set of an E-index set inside F; nullopt if it meets F'.
    std::optional<MultiIndex> toF(MultiIndex I) const;
    DerKey embedF(const DerKey& key) const;

    std::string str() const;

private:
    BundleSpec e_, f_, fp_;
    MultiIndex fMask_;
    std::vector<int> fPos_;
};

// The cochain Lambda(pr_F) o alpha restricted to Lambda F, as logs on F.
// Works on levels 0 and 1; level-1 results are checked to be cocycles.
GroupCochain reduceToF(const GroupCochain& alpha, const SplitSpec& split);
GradedDerivation embedF(const GradedDerivation& d, const SplitSpec& split, const PointSet& domain);

// Blocks pr_S o alpha|_T for X = Lambda F, Y = Lambda F (x) F', Z = Lambda F (x) Lambda^2 F'.
struct ElevenSplit {
    EndoCochain alphaX, alphaY, alphaZ;
    EndoCochain u2XY, u4XY, u2XZ, u4XZ, u2YZ, u4YZ, u2YX, u2ZY;
    // (Z,X) block and any grade part outside the list above; zero in practice.
    EndoCochain residual;
    bool u2IsCocycle = false;
    bool groupCocycle = false;
    bool correctionIsCoboundary = false;

    EndoCochain reconstruct() const;
    // (name, component) in a fixed order
    std::vector<std::pair<std::string, const EndoCochain*>> components() const;
};

EndoCochain projector(const SplitSpec& split, const Cover& cover, char block);
EndoCochain asOperators(const GroupCochain& alpha);
ElevenSplit elevenSplit(const GroupCochain& alpha, const SplitSpec& split);

// Canonical coordinates of a class restricted to the channels of one slot.
struct ClassSlot {
    std::string name;
    std::vector<CanonicalMonomial> monomials;
    std::vector<Scalar> coords;
    bool isZero() const;
};

// slot of a channel for rank(F') = 1: alphaF, alphaL, uF, u2L, u4L
std::string lineBundleChannel(const DerKey& key, const SplitSpec& split);

struct LineBundleForm {
    ClassSlot alphaF, alphaL, uF, u2L, u4L;
    bool u2IsCocycle = false;
    bool correctionIsCoboundary = false;
    std::vector<const ClassSlot*> slots() const { return {&alphaF, &alphaL, &uF, &u2L, &u4L}; }
};

LineBundleForm lineBundleForm(const GroupCochain& alpha, const SplitSpec& split, const CompatibleD& D);

}  // namespace supercoh
