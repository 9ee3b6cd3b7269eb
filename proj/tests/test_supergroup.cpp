#include "doctest.h"

#include "gen_der.hpp"
#include "supercoh/supergroup.hpp"

using namespace supercoh;

namespace {

RatFunc z(int e, long c = 1) { return RatFunc::monomial(Scalar(c), e); }

const BundleSpec kSpec4({-3, -2, -2, -2});
const BundleSpec kSpec5({-3, -3, -2, -2, -2});

DerCochain randomCochain(std::mt19937_64& rng, const BundleSpec& spec, const Cover& cover, int level, int k,
                         const Window& w)
{
    DerCochain v = randomLevel0(rng, spec, cover, k, w);
    if (level == 0)
        return v;
    // a level-1 cochain that is regular but not necessarily a coboundary
    DerCochain u(1, cover, spec);
    for (const Simplex& s : simplices(cover, 1)) {
        GradedDerivation e(spec, cover.overlap(s));
        auto basis = sectionBasis(spec, cover.overlap(s), k, w);
        for (int n = 0; n < 3 && !basis.empty(); ++n)
            e += basis[rng() % basis.size()].scaled(testgen::smallScalar(rng));
        u.set(s, e);
    }
    return u;
}

// canonical chi in Der_2 with random coordinates
GradedDerivation randomChi(std::mt19937_64& rng, const BundleSpec& spec, int k)
{
    std::vector<Scalar> c(canonicalMonomials(spec, k).size());
    for (auto& x : c)
        if (rng() % 3 == 0)
            x = testgen::smallScalar(rng);
    return fromCanonicalCoordinates(spec, k, c);
}

}  // namespace

TEST_CASE("expDer examples")
{
    PointSet S{Point::at(0), Point::inf()};
    CHECK(expDer(GradedDerivation(kSpec4, S)) == GeneratorImages::identity(kSpec4, S));
    auto u = GradedDerivation::term(kSpec4, S, DerKey::vectorField(MultiIndex{1, 2}), z(-1));
    GeneratorImages g = expDer(u);
    CHECK(g.z() == SuperSection::scalar(kSpec4, S, z(1)) + SuperSection::monomial(kSpec4, S, MultiIndex{1, 2}, z(-1)));
    CHECK(g.xi()[0] == SuperSection::monomial(kSpec4, S, MultiIndex{1}, z(0)));

    PointSet S5{Point::at(0), Point::inf()};
    auto u2 = GradedDerivation::term(kSpec5, S5, DerKey::vectorField(MultiIndex{1, 2}), z(-1));
    auto u4 = GradedDerivation::term(kSpec5, S5, DerKey::contraction(MultiIndex{1, 2, 3, 4, 5}, 3), z(-2));
    GeneratorImages h = expDer(u2 + u4);
    CHECK(h.xi()[2] == SuperSection::monomial(kSpec5, S5, MultiIndex{3}, z(0)) +
                           SuperSection::monomial(kSpec5, S5, MultiIndex{1, 2, 3, 4, 5}, z(-2)));
    CHECK(h.xi()[0] == SuperSection::monomial(kSpec5, S5, MultiIndex{1}, z(0)));

    auto deg0 = GradedDerivation::term(kSpec4, S, DerKey::contraction(MultiIndex{1}, 2), z(0));
    CHECK_THROWS_AS(expDer(deg0), Error);
}

TEST_CASE("exp/log roundtrip")
{
    std::mt19937_64 rng(8080);
    PointSet S{Point::at(0), Point::inf()};
    for (const BundleSpec& spec : {kSpec4, kSpec5}) {
        CHECK(logGroup(GeneratorImages::identity(spec, S)).isZero());
        for (int trial = 0; trial < 10; ++trial) {
            GradedDerivation u = degreePart(testgen::anyDerivation(rng, spec, S, 4, 6), 1) +
                                 degreePart(testgen::anyDerivation(rng, spec, S, 4, 6), 2);
            CHECK(logGroup(expDer(u)) == u);
            // exp on generators agrees with the operator series
            SuperSection a = testgen::anySection(rng, spec, S);
            CHECK(expDer(u).apply(a) == apply(expEndo(u), a));
        }
    }
    GeneratorImages id = GeneratorImages::identity(kSpec4, S);
    std::vector<SuperSection> xi = id.xi();
    xi[0] = xi[0].scaled(RatFunc(Scalar(2)));
    CHECK_THROWS_AS(logGroup(GeneratorImages(id.z(), xi)), Error);
}

TEST_CASE("group composition and the exponent formula")
{
    std::mt19937_64 rng(123);
    for (const BundleSpec& spec : {kSpec4, kSpec5})
        for (const Cover& cover : {Cover::twoChart(), Cover::threeChart()}) {
            Window w{-3, 3};
            for (int trial = 0; trial < 3; ++trial) {
                DerCochain u2 = randomCochain(rng, spec, cover, 1, 1, w), u4 = randomCochain(rng, spec, cover, 1, 2, w);
                DerCochain v2 = randomCochain(rng, spec, cover, 0, 1, w), v4 = randomCochain(rng, spec, cover, 0, 2, w);
                GroupCochain alpha{u2 + u4}, v{v2 + v4};
                GroupCochain moved = groupCompose(alpha, v);
                CHECK(moved.logs == u2 + coboundary(v2) + u4 + coboundary(v4) + F(v2, u2));
                CHECK(groupCompose(moved, GroupCochain{-(v2 + v4)}).logs == alpha.logs);
                CHECK(groupCompose(alpha, GroupCochain{DerCochain(0, cover, spec)}).logs == alpha.logs);
            }
        }
}

TEST_CASE("correction c_u")
{
    std::mt19937_64 rng(4242);
    Cover two = Cover::twoChart(), three = Cover::threeChart();
    Window w{-3, 3};
    DerCochain u2two = randomCochain(rng, kSpec4, two, 1, 1, w);
    CHECK(correctionC(u2two).isZero());
    for (const BundleSpec& spec : {kSpec4, kSpec5}) {
        for (int trial = 0; trial < 3; ++trial) {
            DerCochain v2 = randomLevel0(rng, spec, three, 1, w);
            DerCochain zero(1, three, spec);
            // c_{dv} = -dF(v, 0)
            CHECK(correctionAsDerivation(correctionC(coboundary(v2))) == -coboundary(F(v2, zero)));

            // cocycle exp(u2 + u4): c_u = -du4
            DerCochain u2 = liftToThreeChart(randomChi(rng, spec, 1)) + coboundary(randomLevel0(rng, spec, three, 1, w));
            EndoCochain c = correctionC(u2);
            DerCochain cd = correctionAsDerivation(c);
            GradedDerivation a = u2.at({0, 1}).restrict(three.overlap({0, 1, 2}));
            GradedDerivation b = u2.at({1, 2}).restrict(three.overlap({0, 1, 2}));
            CHECK(cd.at({0, 1, 2}) == bracket(a, b).scaled(Scalar::fraction(1, 2)));
            CHECK(correctionIsCoboundary(c));
            DerCochain u4 = -solveSecondCoboundary(cd);
            CHECK(isRegular(u4));
            CHECK(isGroupCocycle(GroupCochain{u2 + u4}));
            CHECK(cd == -coboundary(u4));

            // c_u = c_{u + dv} + dF(v, u)
            DerCochain v = randomLevel0(rng, spec, three, 1, w);
            CHECK(cd == correctionAsDerivation(correctionC(u2 + coboundary(v))) + coboundary(F(v, u2)));
        }
    }
}

TEST_CASE("compatible D")
{
    std::mt19937_64 rng(55);
    Cover two = Cover::twoChart();
    CompatibleD D = CompatibleD::build(kSpec4);
    for (const auto& m : canonicalMonomials(kSpec4, 1)) {
        auto chi = GradedDerivation::term(kSpec4, two.overlap({0, 1}), m.key, RatFunc::monomial(1, m.exponent));
        CHECK(D.atIdentity(singleEntry(two, chi)).isZero());
    }
    DerCochain v = randomLevel0(rng, kSpec4, two, 1, Window{-4, 4});
    GradedDerivation expect = bracket(v.at({0}).restrict(two.overlap({0, 1})), v.at({1}).restrict(two.overlap({0, 1})))
                                  .scaled(Scalar::fraction(1, 2));
    CHECK(D.atIdentity(coboundary(v)) == singleEntry(two, expect));
    CHECK_THROWS_AS(CompatibleD::build(BundleSpec({0, 0, 0, 0})), Error);
    try {
        CompatibleD::build(BundleSpec({0, 0, 0, 0}));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GlobalDer2Nonzero);
    }

    BundleAut phi = testgen::randomAut(rng, kSpec4);
    DerCochain u2 = singleEntry(two, randomChi(rng, kSpec4, 1)) + coboundary(v);
    CHECK(conjugate(phi, D(phi, v, u2)) == D.atIdentity(conjugate(phi, u2)));
}

TEST_CASE("sigma_D")
{
    std::mt19937_64 rng(777);
    Cover two = Cover::twoChart();
    for (const BundleSpec& spec : {kSpec4, kSpec5}) {
        CompatibleD D = CompatibleD::build(spec);
        SigmaResult id = sigmaD(GroupCochain{DerCochain(1, two, spec)}, D);
        CHECK(id.chi2.isZero());
        CHECK(id.chi4.isZero());
        GradedDerivation chi = randomChi(rng, spec, 1);
        SigmaResult s = sigmaD(GroupCochain{singleEntry(two, chi)}, D);
        CHECK(s.chi2 == chi);
        CHECK(s.chi4.isZero());
        Window w{-3, 3};
        for (int trial = 0; trial < 4; ++trial) {
            GroupCochain alpha{singleEntry(two, randomChi(rng, spec, 1) + randomChi(rng, spec, 2)) +
                               coboundary(randomLevel0(rng, spec, two, 1, w)) +
                               coboundary(randomLevel0(rng, spec, two, 2, w))};
            SigmaResult before = sigmaD(alpha, D);
            GroupCochain v{randomLevel0(rng, spec, two, 1, w) + randomLevel0(rng, spec, two, 2, w)};
            SigmaResult after = sigmaD(groupCompose(alpha, v), D);
            CHECK(before.der2 == after.der2);
            CHECK(before.der4 == after.der4);
            NormalForm nf = normalForm(alpha, D);
            CHECK(groupCompose(alpha, nf.connector).logs == nf.canonical.logs);
            CHECK(nf.canonical.logs.at({0, 1}) == before.chi2 + before.chi4);
        }
    }
}

TEST_CASE("equivariance over signed permutations")
{
    std::mt19937_64 rng(91);
    Cover two = Cover::twoChart();
    CompatibleD D = CompatibleD::build(kSpec4);
    const Scalar units[] = {Scalar(1), Scalar(-1), Scalar::i(), -Scalar::i()};
    int failures = 0, total = 0;
    for (int trial = 0; trial < 12; ++trial) {
        // permute the equal-twist block {2,3,4}
        std::vector<int> perm{1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::vector<Scalar>> a(4, std::vector<Scalar>(4));
        a[0][0] = units[rng() % 4];
        for (int r = 0; r < 3; ++r)
            a[static_cast<std::size_t>(r + 1)][static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])] =
                units[rng() % 4];
        BundleAut phi = BundleAut::constant(kSpec4, a);
        DerCochain u2 = singleEntry(two, randomChi(rng, kSpec4, 1)) +
                        coboundary(randomLevel0(rng, kSpec4, two, 1, Window{-3, 3}));
        ++total;
        if (!equivarianceHolds(D, phi, u2))
            ++failures;
    }
    MESSAGE("equivariance failures: " << failures << " / " << total);
    CHECK(failures == 0);
}
