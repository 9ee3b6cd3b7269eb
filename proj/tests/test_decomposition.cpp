#include "doctest.h"

#include "gen_group.hpp"
#include "supercoh/decomposition.hpp"

using namespace supercoh;

namespace {

int primeDegree(MultiIndex I, const SplitSpec& split) { return I.minus(split.fIndices()).size(); }

SuperSection blockFilter(const SuperSection& a, const SplitSpec& split, char block)
{
    int want = block == 'X' ? 0 : block == 'Y' ? 1 : 2;
    SuperSection out(a.spec(), a.domain());
    for (const auto& [I, f] : a.terms())
        if (primeDegree(I, split) == want)
            out.addTerm(I, f);
    return out;
}

// pr_S(alpha(pr_T a)) shifted by exactly d in the exterior grade
SuperSection oracle(const GeneratorImages& g, const SuperSection& a, const SplitSpec& split, char S, char T, int d)
{
    SuperSection out(a.spec(), a.domain());
    SuperSection src = blockFilter(a, split, T);
    for (int k = 0; k <= a.spec().m(); ++k)
        out += gradePart(blockFilter(g.apply(gradePart(src, k)), split, S), k + d);
    return out;
}

// u restricted to channels inside F, viewed on F
GradedDerivation fChannels(const GradedDerivation& u, const SplitSpec& split)
{
    GradedDerivation out(split.F(), u.domain());
    for (const auto& [key, f] : u.terms()) {
        auto I = split.toF(key.index);
        if (!I || (!key.isVectorField() && !split.fIndices().contains(key.kind)))
            continue;
        int t = key.isVectorField() ? 0 : split.toF(MultiIndex::single(key.kind))->members().front();
        out.addTerm(DerKey{*I, t}, f);
    }
    return out;
}

}  // namespace

TEST_CASE("split spec")
{
    SplitSpec s = SplitSpec::fromParts(BundleSpec({-3, -2, -2}), BundleSpec({-5}));
    CHECK(s.E() == BundleSpec({-5, -3, -2, -2}));
    CHECK(s.fIndices() == MultiIndex{2, 3, 4});
    CHECK(s.embedF(1) == 2);
    CHECK(s.toF(MultiIndex{2, 4}) == MultiIndex{1, 3});
    CHECK(!s.toF(MultiIndex{1, 2}).has_value());
    SplitSpec t = SplitSpec::fromParts(BundleSpec({-2}), BundleSpec({-2}));
    CHECK(t.fIndices() == MultiIndex{1});
    CHECK(t.Fprime() == BundleSpec({-2}));
}

TEST_CASE("reduceToF")
{
    std::mt19937_64 rng(31);
    Cover two = Cover::twoChart(), three = Cover::threeChart();
    SplitSpec split = SplitSpec::fromParts(BundleSpec({-3, -2, -2}), BundleSpec({-4}));
    const BundleSpec& E = split.E();

    CHECK(reduceToF(GroupCochain{DerCochain(1, two, E)}, split).logs.isZero());

    // F channels only: reduction is the same derivation
    GradedDerivation onF = testgen::randomChi(rng, split.F(), 1, 1);
    REQUIRE(!onF.isZero());
    GroupCochain pure{singleEntry(two, embedF(onF, split, two.overlap({0, 1})))};
    CHECK(reduceToF(pure, split).logs.at({0, 1}) == onF);

    for (int trial = 0; trial < 4; ++trial) {
        GroupCochain alpha = testgen::randomThreeChartCocycle(rng, E);
        REQUIRE(isGroupCocycle(alpha));
        GroupCochain red = reduceToF(alpha, split);
        CHECK(isGroupCocycle(red));
        for (const Simplex& s : simplices(three, 1))
            CHECK(red.logs.at(s) == fChannels(degreePart(alpha.logs.at(s), 1), split));

        // coboundaries go to coboundaries with the reduced connecting cochain
        Window w{-3, 3};
        GroupCochain v{randomLevel0(rng, E, three, 1, w) + randomLevel0(rng, E, three, 2, w)};
        CHECK(reduceToF(groupCompose(alpha, v), split).logs == groupCompose(red, reduceToF(v, split)).logs);
    }

    SplitSpec big = SplitSpec::fromParts(BundleSpec({-3, -3, -2, -2}), BundleSpec({-2}));
    try {
        reduceToF(GroupCochain{DerCochain(1, two, big.E())}, big);
        FAIL("expected RankTooHigh");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RankTooHigh);
    }
}

TEST_CASE("eleven-component split")
{
    std::mt19937_64 rng(97);
    Cover two = Cover::twoChart();
    SplitSpec split = SplitSpec::fromParts(BundleSpec({-2, -2, -2}), BundleSpec({-3}));
    const BundleSpec& E = split.E();

    ElevenSplit id = elevenSplit(GroupCochain{DerCochain(1, two, E)}, split);
    CHECK(id.alphaX == projector(split, two, 'X'));
    CHECK(id.alphaY == projector(split, two, 'Y'));
    CHECK(id.alphaZ.isZero());
    for (const auto& [name, c] : id.components())
        if (name.size() > 1)
            CHECK(c->isZero());

    // a single X -> Y channel xi_a xi_p d/dz
    int p = split.fprimeIndices().members().front();
    MultiIndex ap = MultiIndex::single(split.embedF(1)).with(p);
    GradedDerivation u = GradedDerivation::term(E, two.overlap({0, 1}), DerKey::vectorField(ap), RatFunc::monomial(1, -1));
    ElevenSplit single = elevenSplit(GroupCochain{singleEntry(two, u)}, split);
    CHECK(single.u2XY.at({0, 1}) == LinearEndo::fromDerivation(u));
    for (const auto& [name, c] : single.components())
        if (name.size() > 1 && name != "2,XY")
            CHECK(c->isZero());
    CHECK(single.alphaX == projector(split, two, 'X'));

    struct Case {
        BundleSpec F, Fp;
        bool three;
    };
    std::vector<Case> cases{{BundleSpec({-3, -2, -2}), BundleSpec({-3}), false},
                            {BundleSpec({-3, -2, -2}), BundleSpec({-5}), true},
                            {BundleSpec({-3, -2}), BundleSpec({-3, -2}), false},
                            {BundleSpec({-3, -3, -2}), BundleSpec({-2, -2}), false}};
    for (const Case& c : cases) {
        SplitSpec sp = SplitSpec::fromParts(c.F, c.Fp);
        GroupCochain alpha = c.three ? testgen::randomThreeChartCocycle(rng, sp.E())
                                     : testgen::randomTwoChartCocycle(rng, sp.E());
        ElevenSplit r = elevenSplit(alpha, sp);
        CHECK(r.reconstruct() == asOperators(alpha));
        CHECK(r.residual.isZero());
        CHECK(r.u2IsCocycle);
        CHECK(r.groupCocycle);
        CHECK(r.correctionIsCoboundary);

        const struct {
            const EndoCochain* comp;
            char S, T;
            int d;
        } table[] = {{&r.u2XY, 'Y', 'X', 2}, {&r.u4XY, 'Y', 'X', 4}, {&r.u2XZ, 'Z', 'X', 2}, {&r.u4XZ, 'Z', 'X', 4},
                     {&r.u2YZ, 'Z', 'Y', 2}, {&r.u4YZ, 'Z', 'Y', 4}, {&r.u2YX, 'X', 'Y', 2}, {&r.u2ZY, 'Y', 'Z', 2}};
        for (const Simplex& s : simplices(alpha.logs.cover(), 1)) {
            GeneratorImages g = alpha.at(s);
            PointSet dom = alpha.logs.cover().overlap(s);
            for (int probe = 0; probe < 3; ++probe) {
                SuperSection a = testgen::anySection(rng, sp.E(), dom);
                for (const auto& row : table)
                    CHECK(apply(row.comp->at(s), a) == oracle(g, a, sp, row.S, row.T, row.d));
                for (char T : {'X', 'Y', 'Z'}) {
                    const EndoCochain& at = T == 'X' ? r.alphaX : T == 'Y' ? r.alphaY : r.alphaZ;
                    SuperSection expect = oracle(g, a, sp, T, T, 0) + oracle(g, a, sp, T, T, 2) +
                                          oracle(g, a, sp, T, T, 4);
                    CHECK(apply(at.at(s), a) == expect);
                }
                CHECK(oracle(g, a, sp, 'X', 'Z', 2).isZero());
                CHECK(oracle(g, a, sp, 'X', 'Z', 4).isZero());
            }
        }
    }

    SplitSpec wide = SplitSpec::fromParts(BundleSpec({-2, -2}), BundleSpec({-2, -2, -2}));
    CHECK_THROWS_AS(elevenSplit(GroupCochain{DerCochain(1, two, wide.E())}, wide), Error);
}

TEST_CASE("line bundle form")
{
    std::mt19937_64 rng(2024);
    Cover two = Cover::twoChart();
    SplitSpec split = SplitSpec::fromParts(BundleSpec({-3, -2, -2}), BundleSpec({-5}));
    const BundleSpec& E = split.E();
    CompatibleD D = CompatibleD::build(E);

    LineBundleForm trivial = lineBundleForm(GroupCochain{DerCochain(1, two, E)}, split, D);
    for (const ClassSlot* s : trivial.slots())
        CHECK(s->isZero());

    // every canonical monomial lands in exactly its dictionary slot
    for (const auto& m : canonicalMonomials(E, 1)) {
        GradedDerivation chi = GradedDerivation::term(E, two.overlap({0, 1}), m.key, RatFunc::monomial(1, m.exponent));
        LineBundleForm f = lineBundleForm(GroupCochain{singleEntry(two, chi)}, split, D);
        int nonzero = 0;
        for (const ClassSlot* s : f.slots())
            if (!s->isZero()) {
                ++nonzero;
                CHECK(s->name == lineBundleChannel(m.key, split));
            }
        CHECK(nonzero == 1);
    }

    for (int trial = 0; trial < 4; ++trial) {
        GroupCochain alpha = testgen::randomTwoChartCocycle(rng, E);
        LineBundleForm f = lineBundleForm(alpha, split, D);
        CHECK(f.u2IsCocycle);
        CHECK(f.correctionIsCoboundary);

        // [alpha_F] against the reduction
        GroupCochain red = reduceToF(alpha, split);
        std::vector<Scalar> redCoords = canonicalCoordinates(canonicalH1(red.logs).canonical.at({0, 1}), 1);
        std::vector<CanonicalMonomial> redMons = canonicalMonomials(split.F(), 1);
        REQUIRE(redMons.size() == f.alphaF.monomials.size());
        for (std::size_t n = 0; n < redMons.size(); ++n) {
            auto it = std::find_if(f.alphaF.monomials.begin(), f.alphaF.monomials.end(), [&](const CanonicalMonomial& m) {
                return m.key == split.embedF(redMons[n].key) && m.exponent == redMons[n].exponent;
            });
            REQUIRE(it != f.alphaF.monomials.end());
            CHECK(f.alphaF.coords[static_cast<std::size_t>(it - f.alphaF.monomials.begin())] == redCoords[n]);
        }

        // [u_F] and [u_2,L] against the eleven-component blocks
        ElevenSplit r = elevenSplit(alpha, split);
        auto classOf = [&](const EndoCochain& block) {
            DerCochain d(1, two, E);
            d.set({0, 1}, block.at({0, 1}).toDerivation());
            return canonicalCoordinates(canonicalH1(d).canonical.at({0, 1}), 1);
        };
        std::vector<CanonicalMonomial> all = canonicalMonomials(E, 1);
        std::vector<Scalar> uF = classOf(r.u2YX), u2L = classOf(r.u2XY);
        std::size_t iF = 0, iL = 0;
        for (std::size_t n = 0; n < all.size(); ++n) {
            std::string slot = lineBundleChannel(all[n].key, split);
            if (slot == "uF")
                CHECK(f.uF.coords[iF++] == uF[n]);
            else if (slot == "u2L")
                CHECK(f.u2L.coords[iL++] == u2L[n]);
            else
                CHECK((uF[n].isZero() && u2L[n].isZero()));
        }

        // u_F is O_M-linear
        for (const Simplex& s : simplices(two, 1)) {
            SuperSection a = testgen::anySection(rng, E, two.overlap(s));
            RatFunc fn = RatFunc::monomial(Scalar(3), 2) + RatFunc::monomial(Scalar(1), -1);
            CHECK(apply(r.u2YX.at(s), a.scaled(fn)) == apply(r.u2YX.at(s), a).scaled(fn));
        }

        // round trip: the slots determine the class
        std::vector<Scalar> c2, c4;
        for (const auto& m : canonicalMonomials(E, 1))
            for (const ClassSlot* s : f.slots())
                for (std::size_t n = 0; n < s->monomials.size(); ++n)
                    if (s->monomials[n].key == m.key && s->monomials[n].exponent == m.exponent)
                        c2.push_back(s->coords[n]);
        for (std::size_t n = 0; n < f.u4L.coords.size(); ++n)
            c4.push_back(f.u4L.coords[n]);
        GroupCochain rebuilt{singleEntry(two, fromCanonicalCoordinates(E, 1, c2) + fromCanonicalCoordinates(E, 2, c4))};
        SigmaResult a = sigmaD(alpha, D), b = sigmaD(rebuilt, D);
        CHECK(a.der2 == b.der2);
        CHECK(a.der4 == b.der4);
    }

    SplitSpec rank2 = SplitSpec::fromParts(BundleSpec({-3, -2}), BundleSpec({-3, -2}));
    try {
        lineBundleForm(GroupCochain{DerCochain(1, two, rank2.E())}, rank2, D);
        FAIL("expected RankMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RankMismatch);
    }
}
