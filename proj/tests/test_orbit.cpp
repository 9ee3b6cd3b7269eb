#include "doctest.h"

#include "gen_group.hpp"
#include "supercoh/orbit.hpp"

using namespace supercoh;

namespace {

std::vector<std::vector<Scalar>> constantMatrix(const BundleAut& phi)
{
    int m = phi.spec().m();
    std::vector<std::vector<Scalar>> a(static_cast<std::size_t>(m), std::vector<Scalar>(static_cast<std::size_t>(m)));
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = phi.entry(i, j).coeff(0);
    return a;
}

Matrix scalarTimesIdentity(const Scalar& c, std::size_t n)
{
    Matrix M(n, n);
    for (std::size_t i = 0; i < n; ++i)
        M(i, i) = c;
    return M;
}

// M_A (x) Id_T when every channel has T monomials
Matrix tensorIdentity(const std::vector<std::vector<Scalar>>& a, std::size_t T)
{
    Matrix M(a.size() * T, a.size() * T);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            for (std::size_t t = 0; t < T; ++t)
                M(i * T + t, j * T + t) = a[i][j];
    return M;
}

}  // namespace

TEST_CASE("action on cochains against generator conjugation")
{
    std::mt19937_64 rng(606);
    BundleSpec spec({-3, -2, -2});
    Cover two = Cover::twoChart();
    DerCochain c = singleEntry(two, testgen::randomChi(rng, spec, 1, 1));
    CHECK(actOnCochain(BundleAut::identity(spec), c) == c);
    for (int trial = 0; trial < 5; ++trial) {
        BundleAut phi = testgen::randomAut(rng, spec);
        BundleAut inv = phi.inverse();
        DerCochain moved = actOnCochain(phi, c);
        for (int probe = 0; probe < 3; ++probe) {
            SuperSection a = testgen::anySection(rng, spec, two.overlap({0, 1}));
            CHECK(apply(moved.at({0, 1}), a) == phi.apply(apply(c.at({0, 1}), inv.apply(a))));
        }
    }
    CHECK_THROWS_AS(actOnCochain(BundleAut::identity(BundleSpec({-3, -3, -3})), c), Error);
}

TEST_CASE("induced matrices")
{
    std::mt19937_64 rng(707);
    BundleSpec four({-2, -2, -2, -2});
    for (const char* name : {"wedge2", "wedge3dual", "det", "der2"}) {
        ChannelSummand s = ChannelSummand::named(four, name);
        Matrix M = inducedMatrix(BundleAut::identity(four), four, s);
        CHECK(M == Matrix::identity(M.rows()));
    }
    CHECK_THROWS_AS(ChannelSummand::named(four, "wedge5"), Error);

    std::vector<Scalar> lambda{Scalar(2), Scalar(3), Scalar::fraction(1, 2, 1, 1), Scalar(-1)};
    BundleAut diag = BundleAut::diagonal(four, lambda);
    ChannelSummand w2 = ChannelSummand::named(four, "wedge2");
    Matrix M = inducedMatrix(diag, four, w2);
    std::vector<CanonicalMonomial> mons = summandMonomials(four, w2);
    for (std::size_t n = 0; n < mons.size(); ++n) {
        std::vector<int> ij = mons[n].key.index.members();
        CHECK(M(n, n) == lambda[static_cast<std::size_t>(ij[0] - 1)] * lambda[static_cast<std::size_t>(ij[1] - 1)]);
    }
    ChannelSummand det = ChannelSummand::named(four, "det");
    CHECK(inducedMatrix(diag, four, det) == scalarTimesIdentity(lambda[0] * lambda[1] * lambda[2] * lambda[3], 5));

    // U(3) on the wedge-square channel is the minor matrix
    BundleSpec three({-2, -2, -2});
    ChannelSummand w3 = ChannelSummand::named(three, "wedge2");
    for (int trial = 0; trial < 8; ++trial) {
        BundleAut phi = testgen::randomBlockAut(rng, three, true);
        CHECK(inducedMatrix(phi, three, w3) == tensorIdentity(minorMatrix(constantMatrix(phi), 2), 1));
    }

    // determinant action on Der_4, including mixed twists
    for (const BundleSpec& spec : {four, BundleSpec({-3, -3, -2, -2}), BundleSpec({-4, -3, -3, -3})}) {
        ChannelSummand d = ChannelSummand::named(spec, "det");
        for (int trial = 0; trial < 4; ++trial) {
            BundleAut phi = testgen::randomBlockAut(rng, spec, trial % 2 == 0);
            Matrix expect = scalarTimesIdentity(determinant(constantMatrix(phi)), summandMonomials(spec, d).size());
            CHECK(inducedMatrix(phi, spec, d) == expect);
        }
    }

    // homomorphism, including N(E) parts
    BundleSpec mixed({-3, -2, -2});
    ChannelSummand all = ChannelSummand::named(mixed, "der2");
    for (int trial = 0; trial < 3; ++trial) {
        BundleAut phi = testgen::randomAut(rng, mixed), psi = testgen::randomAut(rng, mixed);
        CHECK(inducedMatrix(phi.compose(psi), mixed, all) ==
              inducedMatrix(phi, mixed, all) * inducedMatrix(psi, mixed, all));
    }
}

TEST_CASE("minors and determinants")
{
    std::vector<std::vector<Scalar>> a{{Scalar(1), Scalar(2)}, {Scalar(3), Scalar(4)}};
    CHECK(determinant(a) == Scalar(-2));
    std::vector<std::vector<Scalar>> p{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    CHECK(determinant(p) == Scalar(1));
    // pairs 12, 13, 23
    auto M = minorMatrix(p, 2);
    CHECK(M[0][2] == Scalar(1));
    CHECK(M[1][0] == Scalar(-1));
    CHECK(M[2][1] == Scalar(-1));
    CHECK(M[0][1] == Scalar(0));
}

TEST_CASE("gram invariant")
{
    std::mt19937_64 rng(808);
    OrbitPoint x = orbitCasePoint(orbitCase(BundleSpec({-2, -2, -2})));
    CHECK(gramInvariant(x, 0).isZero());

    OrbitPoint line = makePoint({1}, {Summand{{{0, RepKind::Standard}}, 4, ""}});
    line.coords = randomCoords(rng, 4);
    CMatrix v = line.block(0);
    CHECK((gramInvariant(line, 0) - v.adjoint() * v).norm() < 1e-12);
    OrbitPoint turned = act({CMatrix::Constant(1, 1, std::polar(1.0, 0.7))}, line);
    CHECK((gramInvariant(turned, 0) - gramInvariant(line, 0)).norm() < 1e-12);

    x.coords = randomCoords(rng, x.dimension());
    for (int trial = 0; trial < 20; ++trial) {
        OrbitPoint y = act(haarElement(rng, x.groupDims), x);
        CHECK((gramInvariant(y, 0) - gramInvariant(x, 0)).norm() < 1e-9);
    }
    OrbitPoint f = fourfoldPoint(-2);
    CHECK(f.dimension() == 59);
    CHECK_THROWS_AS(gramInvariant(f, 0), Error);
    CHECK(twoCouplesPoint(-3, -2).dimension() == 83);
}

TEST_CASE("haar samples are unitary")
{
    std::mt19937_64 rng(1);
    for (int k = 1; k <= 4; ++k) {
        CMatrix U = haarUnitary(rng, k);
        CHECK((U.adjoint() * U - CMatrix::Identity(k, k)).norm() < 1e-12);
    }
    // the representations are homomorphisms
    OrbitPoint p = twoCouplesPoint(-3, -2);
    p.coords = randomCoords(rng, p.dimension());
    auto g = haarElement(rng, p.groupDims), h = haarElement(rng, p.groupDims);
    std::vector<CMatrix> gh{g[0] * h[0], g[1] * h[1]};
    CHECK((act(gh, p).coords - act(g, act(h, p)).coords).norm() < 1e-10);
}

TEST_CASE("orbit distance")
{
    std::mt19937_64 rng(909);
    OrbitPoint x = fourfoldPoint(-2);
    x.coords = randomCoords(rng, x.dimension());
    OrbitSearch self = orbitDistance(x, x);
    CHECK(self.distance < 1e-9);
    CHECK(!self.exhausted);

    int found = 0;
    const int planted = 10;
    for (int trial = 0; trial < planted; ++trial) {
        OrbitPoint y = act(haarElement(rng, x.groupDims), x);
        OrbitSearch r = orbitDistance(x, y, 32, static_cast<std::uint64_t>(trial));
        if (r.distance <= 1e-6)
            ++found;
        CHECK(r.lowerBound < 1e-9);
        CHECK((act(r.g, x).coords - y.coords).norm() == doctest::Approx(r.distance).epsilon(1e-6));
    }
    CHECK(found >= planted - 1);

    // (-2,-2,-2): members iff Gram matrices agree
    OrbitPoint v = orbitCasePoint(orbitCase(BundleSpec({-2, -2, -2})));
    v.coords = randomCoords(rng, v.dimension());
    OrbitPoint member = act(haarElement(rng, v.groupDims), v);
    OrbitPoint stranger = v;
    stranger.coords = randomCoords(rng, v.dimension());
    OrbitSearch yes = orbitDistance(v, member, 32, 5);
    OrbitSearch no = orbitDistance(v, stranger, 8, 5);
    CHECK(yes.distance <= 1e-6);
    CHECK(no.lowerBound > 1e-3);
    CHECK(no.distance >= no.lowerBound);
    CHECK(no.exhausted);
}

TEST_CASE("orbit cases")
{
    OrbitCase a = orbitCase(BundleSpec({-2, -2, -2}));
    CHECK(a.label == "l1=l2=l3");
    REQUIRE(a.factors.size() == 1);
    CHECK(a.factors[0].k == 3);
    CHECK(a.factors[0].n == 3);
    CHECK(orbitCasePoint(a).dimension() == 12);

    OrbitCase b = orbitCase(BundleSpec({-3, -2, -2}));
    CHECK(b.label == "l1<l2=l3");
    REQUIRE(b.factors.size() == 2);
    CHECK((b.factors[0].k == 2 && b.factors[0].n == 5));
    CHECK((b.factors[1].k == 1 && b.factors[1].n == 3));
    CHECK(orbitCasePoint(b).dimension() == 16);

    OrbitCase c = orbitCase(BundleSpec({-4, -3, -2}));
    CHECK(c.label == "l1<l2<l3");
    CHECK(c.factors.size() == 3);
    for (const auto& f : c.factors)
        CHECK(f.k == 1);
    CHECK(orbitCase(BundleSpec({-3, -3, -2})).label == "l1=l2<l3");

    try {
        orbitCase(BundleSpec({0, 0, 0}));
        FAIL("expected HypothesisViolated");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::HypothesisViolated);
    }
}
