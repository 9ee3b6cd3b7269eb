#include "doctest.h"

#include "gen.hpp"
#include "supercoh/error.hpp"
#include "supercoh/ratfunc.hpp"

using namespace supercoh;

namespace {

RatFunc z(int e, long c = 1) { return RatFunc::monomial(Scalar(c), e); }

PointSet S(std::initializer_list<Point> p) { return PointSet(p); }

ErrorKind kindOf(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("scalar arithmetic and rendering")
{
    Scalar a = Scalar::fraction(1, 2, 3, 1);
    CHECK(a.str() == "(1/2+3 i)");
    CHECK(Scalar::fraction(-1, 2).str() == "-1/2");
    CHECK((Scalar::i() * Scalar(-2)).str() == "(-2 i)");
    CHECK(Scalar::fraction(4, 6).str() == "2/3");
    CHECK(a * a.inverse() == Scalar(1));
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
    CHECK(kindOf([] { (void)Scalar().inverse(); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("add examples")
{
    PointSet inf{Point::inf()};
    PointSet zeroInf{Point::at(0), Point::inf()};
    RatSection f(z(2), 3, inf), g(z(1), 3, inf);
    CHECK(f.add(g).func() == z(2) + z(1));
    CHECK(f.add(g).str() == "1*z^2 + 1*z^1");

    RatSection h(z(-1), -2, zeroInf), hn(z(-1, -1), -2, zeroInf);
    CHECK(h.add(hn).isZero());

    RatSection h2(z(-2), -2, zeroInf);
    RatFunc expect(Poly(std::vector<Scalar>{1, 1}), {{Scalar(0), 2}});
    CHECK(h.add(h2).func() == expect);
    CHECK(h.add(h2).str() == "1*z^-1 + 1*z^-2");

    CHECK(kindOf([&] { (void)f.add(RatSection(z(1), 2, inf)); }) == ErrorKind::TwistMismatch);
    CHECK(kindOf([&] { (void)f.add(RatSection(z(1), 3, zeroInf)); }) == ErrorKind::DomainMismatch);
}

TEST_CASE("mul examples")
{
    PointSet empty;
    RatSection a(z(1), 1, empty);
    RatSection sq = a.mul(a);
    CHECK(sq.func() == z(2));
    CHECK(sq.twist() == 2);

    PointSet zeroSet{Point::at(0)};
    RatSection inv(z(-1), -1, zeroSet);
    RatSection inv2 = inv.mul(inv);
    CHECK(inv2.func() == z(-2));
    CHECK(inv2.twist() == -2);

    PointSet m1{Point::at(-1), Point::inf()};
    RatSection p(RatFunc(Poly(std::vector<Scalar>{1, 1})), 1, m1);
    RatSection q(RatFunc::polar(1, -1, 1), -1, m1);
    RatSection one = p.mul(q);
    CHECK(one.func() == RatFunc(Scalar(1)));
    CHECK(one.twist() == 0);
    CHECK(one.func().poles().empty());
}

TEST_CASE("restrict examples")
{
    PointSet inf{Point::inf()};
    PointSet zeroInf{Point::at(0), Point::inf()};
    PointSet zeroOneInf{Point::at(0), Point::at(1), Point::inf()};
    RatSection f(z(1), 1, inf);
    CHECK(f.restrict(zeroInf).func() == z(1));
    CHECK(f.restrict(zeroInf).domain() == zeroInf);
    RatSection g(z(-1), -2, zeroInf);
    CHECK(g.restrict(zeroOneInf).func() == z(-1));
    CHECK(kindOf([&] { (void)g.restrict(PointSet{Point::at(1), Point::inf()}); }) == ErrorKind::NotARefinement);
}

TEST_CASE("section validity")
{
    CHECK(kindOf([] { RatSection(z(3), 2, PointSet()); }) == ErrorKind::InvalidSection);
    CHECK(kindOf([] { RatSection(z(-1), 5, PointSet{Point::inf()}); }) == ErrorKind::InvalidSection);
    // 1/z has degree -1 at infinity: a section of O(-1) off {0}
    CHECK(RatSection::isValid(z(-1), -1, PointSet{Point::at(0)}));
    CHECK(!RatSection::isValid(z(-1), -2, PointSet{Point::at(0)}));
}

TEST_CASE("basisOfSections")
{
    auto b = basisOfSections(2, PointSet(), Window{});
    REQUIRE(b.size() == 3);
    CHECK(b[0].func() == z(0));
    CHECK(b[1].func() == z(1));
    CHECK(b[2].func() == z(2));
    CHECK(basisOfSections(-1, PointSet(), Window{}).empty());

    auto w = basisOfSections(-3, PointSet{Point::at(0), Point::inf()}, Window{-5, 5});
    REQUIRE(w.size() == 11);
    for (int j = -5; j <= 5; ++j)
        CHECK(w[static_cast<std::size_t>(j + 5)].func() == z(j));

    for (int k = -6; k <= 6; ++k)
        CHECK(basisOfSections(k, PointSet(), Window{}).size() == static_cast<std::size_t>(std::max(0, k + 1)));

    // off {0}: z^j with -lo <= j <= k
    CHECK(basisOfSections(-2, PointSet{Point::at(0)}, Window{-4, 4}).size() == 3);
}

TEST_CASE("sectionCoordinates round trip")
{
    PointSet s{Point::at(0), Point::at(1)};
    Window w{-3, 3};
    auto basis = basisOfSections(1, s, w);
    RatFunc f = RatFunc::polar(2, 1, 2) + z(-3) + z(1);
    auto c = sectionCoordinates(f, 1, s, w);
    RatFunc back;
    for (std::size_t i = 0; i < c.size(); ++i)
        back += RatFunc(c[i]) * basis[i].func();
    CHECK(back == f);
    CHECK(kindOf([&] { (void)sectionCoordinates(z(-4), 1, s, w); }) == ErrorKind::WindowTooSmall);
}

TEST_CASE("partial fractions and derivative")
{
    RatFunc f = RatFunc::polar(3, 0, 2) + RatFunc::polar(Scalar::i(), 1, 1) + z(2) + z(0, 5);
    CHECK(f.principalPart(0) == RatFunc::polar(3, 0, 2));
    CHECK(f.principalPart(1) == RatFunc::polar(Scalar::i(), 1, 1));
    CHECK(f.polynomialPart() == Poly(std::vector<Scalar>{5, 0, 1}));
    CHECK(f.derivative() == RatFunc::polar(-6, 0, 3) + RatFunc::polar(-Scalar::i(), 1, 2) + z(1, 2));
    CHECK(f.degreeAtInfinity() == 2);
    CHECK(RatFunc::polar(1, 1, 3).degreeAtInfinity() == -3);
}

TEST_CASE("ring axioms on seeded random functions")
{
    std::mt19937_64 rng(20261015);
    std::vector<Scalar> pts{Scalar(0), Scalar(1), Scalar::fraction(-1, 2, 1, 1)};
    for (int trial = 0; trial < 100; ++trial) {
        RatFunc a = testgen::smallRat(rng, pts, 3, 2);
        RatFunc b = testgen::smallRat(rng, pts, 3, 2);
        RatFunc c = testgen::smallRat(rng, pts, 3, 2);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a - a).isZero());
        CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
        RatFunc pp;
        for (const auto& pe : a.poles())
            pp += a.principalPart(pe.first);
        CHECK(pp + RatFunc(a.polynomialPart()) == a);
    }
}

TEST_CASE("restrict is a ring homomorphism")
{
    std::mt19937_64 rng(7);
    PointSet small{Point::at(0), Point::inf()};
    PointSet large{Point::at(0), Point::at(1), Point::inf()};
    for (int trial = 0; trial < 50; ++trial) {
        RatSection f(testgen::smallRat(rng, {Scalar(0)}, 3, 2), 1, small);
        RatSection g(testgen::smallRat(rng, {Scalar(0)}, 3, 2), 2, small);
        CHECK(f.mul(g).restrict(large) == f.restrict(large).mul(g.restrict(large)));
        CHECK(f.mul(g).restrict(large).twist() == 3);
    }
}
