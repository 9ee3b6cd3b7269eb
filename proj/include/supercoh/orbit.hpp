#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "supercoh/linalg.hpp"
#include "supercoh/supergroup.hpp"

namespace supercoh {

// ---------------------------------------------------------------- exact layer

DerCochain actOnCochain(const BundleAut& phi, const DerCochain& c);

// Channels of H^1(Der_2k) named by "wedge2" (xi_ij d/dz), "wedge3dual"
// (xi_ijk d/dxi_t), "det" (Der_4 of rank 4: xi_1234 d/dz), "der2", "der4".
struct ChannelSummand {
    int k = 1;
    std::vector<DerKey> channels;
    std::string name;

    static ChannelSummand named(const BundleSpec& spec, const std::string& name);
};

// The matrix of phi on the canonical monomials of the summand: column n holds
// the coordinates of [phi . chi_n] restricted to the summand.
Matrix inducedMatrix(const BundleAut& phi, const BundleSpec& spec, const ChannelSummand& summand);
std::vector<CanonicalMonomial> summandMonomials(const BundleSpec& spec, const ChannelSummand& summand);

// Determinant of a constant square matrix (Bareiss-free Gaussian elimination).
Scalar determinant(const std::vector<std::vector<Scalar>>& a);
// r x r minors indexed by r-subsets in graded-lex order; entry (K, I) = det A[K, I]
std::vector<std::vector<Scalar>> minorMatrix(const std::vector<std::vector<Scalar>>& a, int r);

// ---------------------------------------------------------------- float layer

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class RepKind { Standard, Dual, Det, Wedge2, Wedge3 };

struct RepFactor {
    int group = 0;
    RepKind kind = RepKind::Standard;
};

// R(g) (x) Id_T acting on a (dim R) x tdim block; R is the Kronecker product
// of the factors.
struct Summand {
    std::vector<RepFactor> rep;
    int tdim = 1;
    std::string label;
};

struct OrbitPoint {
    std::vector<int> groupDims;  // U(k_1) x ... x U(k_r)
    std::vector<Summand> summands;
    CVector coords;

    std::string descriptor() const;
    int summandRows(std::size_t s) const;
    std::size_t summandOffset(std::size_t s) const;
    CMatrix block(std::size_t s) const;
    std::size_t dimension() const;
};

OrbitPoint makePoint(std::vector<int> groupDims, std::vector<Summand> summands);

CMatrix repMatrix(const std::vector<CMatrix>& g, const std::vector<int>& groupDims, const std::vector<RepFactor>& rep);
OrbitPoint act(const std::vector<CMatrix>& g, const OrbitPoint& x);

CMatrix haarUnitary(std::mt19937_64& rng, int k);
std::vector<CMatrix> haarElement(std::mt19937_64& rng, const std::vector<int>& groupDims);
CVector randomCoords(std::mt19937_64& rng, std::size_t n);

// M^dagger M of a summand whose action is a character times the standard or
// dual U(k) action; throws WrongActionKind otherwise.
CMatrix gramInvariant(const OrbitPoint& x, std::size_t summand);

// max over summands of ||G_x - G_y||_F / (||X||_2 + ||Y||_2), a lower bound
// on the orbit distance valid for every unitary action on rows.
double invariantGap(const OrbitPoint& x, const OrbitPoint& y);

struct OrbitSearch {
    double distance = 0;      // best ||g.x - y|| found: an upper bound
    double lowerBound = 0;    // invariantGap
    std::vector<CMatrix> g;   // best group element
    int restartsUsed = 0;
    std::vector<std::uint64_t> restartSeeds;
    bool exhausted = false;   // budget spent without reaching tol
};

OrbitSearch orbitDistance(const OrbitPoint& x, const OrbitPoint& y, int budget = 32, std::uint64_t seed = 1,
                          double tol = 1e-9);

// Orbit case of a rank-3 spec: U(k) factors on k x (n+1) blocks
struct OrbitFactor {
    int k;
    int n;
};
struct OrbitCase {
    std::string label;
    std::vector<OrbitFactor> factors;
    std::vector<int> pairs;  // index into (12, 13, 23) carried by each factor
};
OrbitCase orbitCase(const BundleSpec& spec);
// The factors as independent standard U(k) actions on k x (n+1) blocks.
OrbitPoint orbitCasePoint(const OrbitCase& c);

// O(l)^4: U(4) acting by wedge2, wedge3 (x) dual and det
OrbitPoint fourfoldPoint(int l);
// O(l)^2 + O(lp)^2: U(2) x U(2) acting by seven representations
OrbitPoint twoCouplesPoint(int l, int lp);

}  // namespace supercoh
