#pragma once

#include <vector>

#include "supercoh/cech.hpp"

namespace supercoh {

// An even algebra automorphism of the exterior algebra over P^1 \ S, given by
// its values on the generators z, xi_1, ..., xi_m.
class GeneratorImages {
public:
    GeneratorImages() = default;
    GeneratorImages(SuperSection z, std::vector<SuperSection> xi);
    static GeneratorImages identity(const BundleSpec& spec, const PointSet& domain);

    const BundleSpec& spec() const { return z_.spec(); }
    const PointSet& domain() const { return z_.domain(); }
    const SuperSection& z() const { return z_; }
    const std::vector<SuperSection>& xi() const { return xi_; }

    // f(z) xi_K -> f(g(z)) g(xi_k1) ... g(xi_kr); f(z + n) by Taylor expansion in the nilpotent n.
    SuperSection apply(const SuperSection& a) const;
    // (this o o)(x) = this(o(x))
    GeneratorImages compose(const GeneratorImages& o) const;

    friend bool operator==(const GeneratorImages& a, const GeneratorImages& b) { return a.z_ == b.z_ && a.xi_ == b.xi_; }

private:
    SuperSection z_;
    std::vector<SuperSection> xi_;
};

// exp(u) on generators. Throws HasDegreeZeroPart unless u lies in Der^(2).
GeneratorImages expDer(const GradedDerivation& u);
// exp(u) as a differential operator (finite series).
LinearEndo expEndo(const GradedDerivation& u);
// Inverse of expDer via the Mercator series on generator values. Throws NotInGE
// if g - Id does not raise the grade by at least two.
GradedDerivation logGroup(const GeneratorImages& g);

// Cochain of G_E, stored through logarithms; absent entries are the identity.
struct GroupCochain {
    DerCochain logs;

    static GroupCochain exp(const DerCochain& logs) { return GroupCochain{logs}; }
    GeneratorImages at(const Simplex& s) const { return expDer(logs.at(s)); }
};

// (exp(v_i) alpha_ij exp(-v_j))_ij
GroupCochain groupCompose(const GroupCochain& alpha, const GroupCochain& v);
// Group cocycle condition alpha_ij alpha_jk = alpha_ik, evaluated on generators.
bool isGroupCocycle(const GroupCochain& alpha);

// F(v, u)_ij = 1/2 ([v_i + v_j, u_ij] - [v_i, v_j])
DerCochain F(const DerCochain& v, const DerCochain& u);
// c_u = End_4 part of exp(u)_ij exp(u)_jk exp(u)_ik^{-1} - Id on triples.
EndoCochain correctionC(const DerCochain& u2);
// Derivation-valued form of c_u (throws NotADerivation if it is not one).
DerCochain correctionAsDerivation(const EndoCochain& c);
// c is in B^2(Der_4): exact solve on the three-chart cover (always true on P^1,
// checked constructively); on two charts c is empty.
bool correctionIsCoboundary(const EndoCochain& c);

// The strongly compatible map D on the two-chart cover: D(Id, 0, chi) = 0 on
// canonical representatives and D(Id, 0, chi + dv) = -F(v, chi).
class CompatibleD {
public:
    // Checks H^0(Der_2) = 0 (fast inequality test first, the H^0 oracle as
    // authority); throws GlobalDer2Nonzero otherwise.
    static CompatibleD build(const BundleSpec& spec, const Cover& cover = Cover::twoChart());

    const BundleSpec& spec() const { return spec_; }
    const Cover& cover() const { return cover_; }

    DerCochain atIdentity(const DerCochain& u2) const;
    // D(phi, v2, u2) = phi^{-1}.D(Id, 0, phi.u2)
    DerCochain operator()(const BundleAut& phi, const DerCochain& v2, const DerCochain& u2) const;

private:
    BundleSpec spec_;
    Cover cover_;
};

// Fast test of the classification inequalities on the sorted twists.
bool satisfiesHypotheses(const BundleSpec& spec);

struct SigmaResult {
    GradedDerivation chi2;  // canonical representative of [u2]
    GradedDerivation chi4;  // canonical representative of [D(Id,0,u2) + u4]
    std::vector<Scalar> der2;
    std::vector<Scalar> der4;
};
SigmaResult sigmaD(const GroupCochain& alpha, const CompatibleD& D);

// alpha moved by a level-0 cochain onto exp(chi2 + chi4) with canonical chi2, chi4:
// groupCompose(alpha, connector) == canonical.
struct NormalForm {
    GroupCochain canonical;
    GroupCochain connector;
};
NormalForm normalForm(const GroupCochain& alpha, const CompatibleD& D);

// phi.D(Id,0,u2) - D(Id,0,phi.u2) is a coboundary in Der_4.
bool equivarianceHolds(const CompatibleD& D, const BundleAut& phi, const DerCochain& u2);

// exp(chi2 + chi4) moved by a random level-0 cochain on two charts; on three
// charts exp(u2 + u4) with u2 a lifted class plus a coboundary and du4 = -c_{u2}.
GroupCochain randomGroupCocycle(std::mt19937_64& rng, const BundleSpec& spec, const Cover& cover);

// Entrywise phi . c
DerCochain conjugate(const BundleAut& phi, const DerCochain& c);

}  // namespace supercoh
