#include "supercoh/verify.hpp"

#include <algorithm>
#include <cstdlib>

#include "supercoh/classify.hpp"
#include "supercoh/decomposition.hpp"
#include "supercoh/orbit.hpp"

namespace supercoh {

namespace {

const Window kSampleWindow{-3, 3};

Poly randomPoly(std::mt19937_64& rng, int maxDegree)
{
    std::vector<Scalar> c(static_cast<std::size_t>(std::uniform_int_distribution<int>(0, maxDegree)(rng)) + 1);
    for (auto& x : c)
        x = randomSmallScalar(rng);
    return Poly(c);
}

// Regular level-1 cochain, not necessarily a cocycle.
DerCochain randomLevel1(std::mt19937_64& rng, const BundleSpec& spec, const Cover& cover, int k)
{
    DerCochain u(1, cover, spec);
    for (const Simplex& s : simplices(cover, 1)) {
        GradedDerivation e(spec, cover.overlap(s));
        auto basis = sectionBasis(spec, cover.overlap(s), k, kSampleWindow);
        for (int n = 0; n < 3 && !basis.empty(); ++n)
            e += basis[rng() % basis.size()].scaled(randomSmallScalar(rng));
        u.set(s, e);
    }
    return u;
}

DerCochain randomShift(std::mt19937_64& rng, const BundleSpec& spec, const Cover& cover)
{
    return randomLevel0(rng, spec, cover, 1, kSampleWindow) + randomLevel0(rng, spec, cover, 2, kSampleWindow);
}

void tally(CheckResult& r, bool ok)
{
    ++r.trials;
    if (!ok)
        ++r.failures;
}

}  // namespace

nlohmann::json CheckResult::toJson() const
{
    return {{"name", name}, {"trials", trials}, {"failures", failures}, {"passed", passed()}, {"detail", detail}};
}

GradedDerivation randomDerivation(std::mt19937_64& rng, const BundleSpec& spec, const PointSet& S, int k, int density)
{
    GradedDerivation D(spec, S);
    std::vector<DerKey> keys = channelsOfDegree(spec, k);
    if (keys.empty())
        return D;
    std::vector<Scalar> pts = S.finitePoints();
    for (int n = 0; n < density; ++n) {
        std::map<Scalar, int> poles;
        for (const Scalar& a : pts)
            if (int e = static_cast<int>(rng() % 3); e > 0)
                poles[a] = e;
        D.addTerm(keys[rng() % keys.size()], RatFunc(randomPoly(rng, 2), poles));
    }
    return D;
}

std::vector<std::vector<Scalar>> randomBlockMatrix(std::mt19937_64& rng, const BundleSpec& spec, bool unitary)
{
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
                    a[i][j] = randomSmallScalar(rng);
        }
        lo = hi;
    }
    return a;
}

BundleAut randomBlockAut(std::mt19937_64& rng, const BundleSpec& spec, bool unitary, bool unipotent)
{
    for (;;) {
        auto c = randomBlockMatrix(rng, spec, unitary);
        std::vector<std::vector<Poly>> a(c.size(), std::vector<Poly>(c.size()));
        for (int i = 1; i <= spec.m(); ++i)
            for (int j = 1; j <= spec.m(); ++j) {
                auto& e = a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
                int bound = spec.twist(i) - spec.twist(j);
                if (bound == 0)
                    e = Poly::constant(c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]);
                else if (bound > 0 && unipotent && rng() % 2 == 0)
                    e = randomPoly(rng, bound);
            }
        try {
            return BundleAut(spec, a);
        } catch (const Error&) {
        }
    }
}

std::vector<std::vector<Scalar>> constantPart(const BundleAut& phi)
{
    std::size_t m = static_cast<std::size_t>(phi.spec().m());
    std::vector<std::vector<Scalar>> a(m, std::vector<Scalar>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            a[i][j] = phi.entry(static_cast<int>(i) + 1, static_cast<int>(j) + 1).coeff(0);
    return a;
}

std::vector<int> randomAdmissibleTwists(std::mt19937_64& rng, int m, int lo, int hi)
{
    std::uniform_int_distribution<int> d(lo, hi);
    for (;;) {
        std::vector<int> l(static_cast<std::size_t>(m));
        for (int& x : l)
            x = d(rng);
        std::sort(l.begin(), l.end());
        if (satisfiesHypotheses(BundleSpec(l)))
            return l;
    }
}

CheckResult checkLineBundleH1(int kmin, int kmax)
{
    CheckResult r{"line bundle H1", 0, 0, ""};
    for (const Cover& cover : {Cover::twoChart(), Cover::threeChart()})
        for (int k = kmin; k <= kmax; ++k) {
            std::size_t expect = static_cast<std::size_t>(std::max(0, -k - 1));
            std::size_t got = h1DimensionOracle({k}, cover, Window::symmetric(std::abs(k) + 2));
            tally(r, got == expect);
            if (got != expect)
                r.detail += "k=" + std::to_string(k) + " cover " + cover.str() + "; ";
        }
    return r;
}

CheckResult checkRank3Formula(int lo, int hi)
{
    CheckResult r{"rank-3 formula vs oracle", 0, 0, ""};
    for (int a = lo; a <= hi; ++a)
        for (int b = a; b <= hi; ++b)
            for (int c = b; c <= hi; ++c) {
                BundleSpec spec({a, b, c});
                if (!satisfiesHypotheses(spec))
                    continue;
                long closed = 0;
                for (int twist : channelTwists(spec, 1))
                    closed += std::max(0, -twist - 1);
                ClassificationReport rep = classifyRank3({a, b, c});
                bool ok = rep.consistent && rep.totalOracle && *rep.totalOracle == closed && rep.totalFormula == closed;
                tally(r, ok);
                if (!ok)
                    r.detail += spec.str() + "; ";
            }
    return r;
}

CheckResult checkExpLog(std::uint64_t seed, int count, const std::vector<BundleSpec>& specs)
{
    CheckResult r{"exp/log roundtrip", 0, 0, ""};
    std::mt19937_64 rng(seed);
    PointSet S{Point::at(0), Point::inf()};
    for (int n = 0; n < count; ++n) {
        const BundleSpec& spec = specs[static_cast<std::size_t>(n) % specs.size()];
        GradedDerivation u = randomDerivation(rng, spec, S, 1) + randomDerivation(rng, spec, S, 2);
        tally(r, logGroup(expDer(u)) == u);
    }
    return r;
}

CheckResult checkGroupLaw(std::uint64_t seed, int count, const std::vector<BundleSpec>& specs)
{
    CheckResult r{"group law exponent formula", 0, 0, ""};
    std::mt19937_64 rng(seed);
    for (int n = 0; n < count; ++n) {
        const BundleSpec& spec = specs[static_cast<std::size_t>(n) % specs.size()];
        Cover cover = n % 2 == 0 ? Cover::twoChart() : Cover::threeChart();
        DerCochain u2 = randomLevel1(rng, spec, cover, 1), u4 = randomLevel1(rng, spec, cover, 2);
        DerCochain v2 = randomLevel0(rng, spec, cover, 1, kSampleWindow);
        DerCochain v4 = randomLevel0(rng, spec, cover, 2, kSampleWindow);
        DerCochain formula = u2 + coboundary(v2) + u4 + coboundary(v4) + F(v2, u2);
        bool ok = groupCompose(GroupCochain{u2 + u4}, GroupCochain{v2 + v4}).logs == formula;
        DerCochain v = v2 + v4, u = u2 + u4;
        for (const Simplex& s : simplices(cover, 1)) {
            PointSet Sij = cover.overlap(s);
            LinearEndo series = compose(expEndo(v.at({s[0]}).restrict(Sij)),
                                        compose(expEndo(u.at(s)), expEndo(-v.at({s[1]}).restrict(Sij))));
            ok = ok && series == expEndo(formula.at(s));
        }
        tally(r, ok);
    }
    return r;
}

CheckResult checkCorrectionShift(std::uint64_t seed, int count, const BundleSpec& spec)
{
    CheckResult r{"correction transformation law", 0, 0, ""};
    std::mt19937_64 rng(seed);
    Cover three = Cover::threeChart();
    for (int n = 0; n < count; ++n) {
        DerCochain u2 =
            liftToThreeChart(randomCanonical(rng, spec, 1)) + coboundary(randomLevel0(rng, spec, three, 1, kSampleWindow));
        DerCochain v2 = randomLevel0(rng, spec, three, 1, kSampleWindow);
        DerCochain lhs = correctionAsDerivation(correctionC(u2));
        DerCochain rhs = correctionAsDerivation(correctionC(u2 + coboundary(v2))) + coboundary(F(v2, u2));
        tally(r, lhs == rhs);
    }
    return r;
}

CheckResult checkCocycleCorrection(std::uint64_t seed, int count, const BundleSpec& spec)
{
    CheckResult r{"cocycle correction c = -du4", 0, 0, ""};
    std::mt19937_64 rng(seed);
    Cover three = Cover::threeChart();
    for (int n = 0; n < count; ++n) {
        GroupCochain alpha = randomGroupCocycle(rng, spec, three);
        DerCochain u2 = degreePart(alpha.logs, 1), u4 = degreePart(alpha.logs, 2);
        tally(r, isGroupCocycle(alpha) && correctionAsDerivation(correctionC(u2)) == -coboundary(u4));
    }
    return r;
}

CheckResult checkSigmaInvariance(std::uint64_t seed, int count, const BundleSpec& spec)
{
    CheckResult r{"sigma_D invariance", 0, 0, ""};
    std::mt19937_64 rng(seed);
    Cover two = Cover::twoChart();
    CompatibleD D = CompatibleD::build(spec);
    for (int n = 0; n < count; ++n) {
        GroupCochain alpha = randomGroupCocycle(rng, spec, two);
        SigmaResult before = sigmaD(alpha, D);
        SigmaResult after = sigmaD(groupCompose(alpha, GroupCochain{randomShift(rng, spec, two)}), D);
        tally(r, before.der2 == after.der2 && before.der4 == after.der4);
    }
    return r;
}

CheckResult checkEquivariance(std::uint64_t seed, int count, const BundleSpec& spec)
{
    CheckResult r{"strong compatibility equivariance", 0, 0, ""};
    std::mt19937_64 rng(seed);
    Cover two = Cover::twoChart();
    CompatibleD D = CompatibleD::build(spec);
    for (int n = 0; n < count; ++n) {
        BundleAut phi = randomBlockAut(rng, spec, true);
        DerCochain u2 =
            singleEntry(two, randomCanonical(rng, spec, 1)) + coboundary(randomLevel0(rng, spec, two, 1, kSampleWindow));
        tally(r, equivarianceHolds(D, phi, u2));
    }
    return r;
}

CheckResult checkReduction(std::uint64_t seed, int count, const BundleSpec& F, const BundleSpec& Fprime)
{
    CheckResult r{"reduction to F", 0, 0, ""};
    std::mt19937_64 rng(seed);
    SplitSpec split = SplitSpec::fromParts(F, Fprime);
    for (int n = 0; n < count; ++n) {
        Cover cover = n % 2 == 0 ? Cover::threeChart() : Cover::twoChart();
        GroupCochain alpha = randomGroupCocycle(rng, split.E(), cover);
        GroupCochain red = reduceToF(alpha, split);
        GroupCochain v{randomShift(rng, split.E(), cover)};
        bool compatible = reduceToF(groupCompose(alpha, v), split).logs == groupCompose(red, reduceToF(v, split)).logs;
        tally(r, isGroupCocycle(red) && compatible);
    }
    return r;
}

CheckResult checkElevenSplit(std::uint64_t seed, int count, const BundleSpec& F, const BundleSpec& Fprime)
{
    CheckResult r{"eleven-split reconstruction", 0, 0, ""};
    std::mt19937_64 rng(seed);
    SplitSpec split = SplitSpec::fromParts(F, Fprime);
    for (int n = 0; n < count; ++n) {
        Cover cover = n % 2 == 0 ? Cover::twoChart() : Cover::threeChart();
        GroupCochain alpha = randomGroupCocycle(rng, split.E(), cover);
        ElevenSplit s = elevenSplit(alpha, split);
        tally(r, s.reconstruct() == asOperators(alpha) && s.residual.isZero());
    }
    return r;
}

CheckResult checkDetAction(std::uint64_t seed, int count, const std::vector<BundleSpec>& specs)
{
    CheckResult r{"determinant action on Der_4", 0, 0, ""};
    std::mt19937_64 rng(seed);
    for (int n = 0; n < count; ++n) {
        const BundleSpec& spec = specs[static_cast<std::size_t>(n) % specs.size()];
        ChannelSummand det = ChannelSummand::named(spec, "det");
        BundleAut phi = randomBlockAut(rng, spec, n % 2 == 0, n % 3 == 0);
        Scalar d = determinant(constantPart(phi));
        Matrix M = inducedMatrix(phi, spec, det);
        bool ok = M.rows() == M.cols() && M.rows() == summandMonomials(spec, det).size();
        for (std::size_t i = 0; ok && i < M.rows(); ++i)
            for (std::size_t j = 0; ok && j < M.cols(); ++j)
                ok = M(i, j) == (i == j ? d : Scalar(0));
        tally(r, ok);
    }
    return r;
}

CheckResult checkH0Gate(std::uint64_t seed, int count, const std::vector<int>& violating)
{
    CheckResult r{"H0(Der_2) vanishing gate", 0, 0, ""};
    std::mt19937_64 rng(seed);
    for (int n = 0; n < count; ++n) {
        BundleSpec spec(randomAdmissibleTwists(rng, 3 + n % 2, -6, 1));
        std::size_t h0 = derCohomologyOracle(spec, 1, adequateWindow(spec, 1)).h0;
        tally(r, h0 == 0);
        if (h0 != 0)
            r.detail += spec.str() + "; ";
    }
    BundleSpec bad(violating);
    std::size_t h0 = derCohomologyOracle(bad, 1, adequateWindow(bad, 1)).h0;
    tally(r, !satisfiesHypotheses(bad) && h0 > 0);
    r.detail += "violating " + bad.str() + " h0=" + std::to_string(h0);
    return r;
}

}  // namespace supercoh
