#include "supercoh/supergroup.hpp"

namespace supercoh {

// ---------------------------------------------------------------- generator images

GeneratorImages::GeneratorImages(SuperSection z, std::vector<SuperSection> xi) : z_(std::move(z)), xi_(std::move(xi))
{
    if (static_cast<int>(xi_.size()) != z_.spec().m())
        throw Error(ErrorKind::SpecMismatch, "one image per odd generator expected");
}

GeneratorImages GeneratorImages::identity(const BundleSpec& spec, const PointSet& domain)
{
    std::vector<SuperSection> xi;
    for (int t = 1; t <= spec.m(); ++t)
        xi.push_back(SuperSection::monomial(spec, domain, MultiIndex::single(t), RatFunc(Scalar(1))));
    return GeneratorImages(SuperSection::monomial(spec, domain, MultiIndex(), RatFunc::monomial(1, 1)), std::move(xi));
}

SuperSection GeneratorImages::apply(const SuperSection& a) const
{
    const BundleSpec& spec = z_.spec();
    const PointSet& S = z_.domain();
    if (a.spec() != spec)
        throw Error(ErrorKind::SpecMismatch, a.spec().str() + " vs " + spec.str());
    if (a.domain() != S)
        throw Error(ErrorKind::DomainMismatch, a.domain().str() + " vs " + S.str());
    SuperSection nil = z_ - SuperSection::scalar(spec, S, RatFunc::monomial(1, 1));
    SuperSection r(spec, S);
    for (const auto& [K, f] : a.terms()) {
        // f(z + n) = sum f^{(k)} n^k / k!
        SuperSection fz(spec, S), power = SuperSection::scalar(spec, S, RatFunc(Scalar(1)));
        RatFunc deriv = f;
        Scalar fact(1);
        for (int k = 0; !power.isZero(); ++k) {
            if (k > 0)
                fact *= Scalar(k);
            fz += power.scaled(deriv * RatFunc(fact.inverse()));
            power = wedge(power, nil);
            deriv = deriv.derivative();
        }
        for (int k : K.members())
            fz = wedge(fz, xi_[static_cast<std::size_t>(k - 1)]);
        r += fz;
    }
    return r;
}

GeneratorImages GeneratorImages::compose(const GeneratorImages& o) const
{
    std::vector<SuperSection> xi;
    for (const auto& x : o.xi_)
        xi.push_back(apply(x));
    return GeneratorImages(apply(o.z_), std::move(xi));
}

GeneratorImages expDer(const GradedDerivation& u)
{
    if (u.lowestDegree() == 0)
        throw Error(ErrorKind::HasDegreeZeroPart, "exponential needs a derivation in Der^(2)");
    GeneratorImages id = GeneratorImages::identity(u.spec(), u.domain());
    auto series = [&](const SuperSection& x) {
        SuperSection sum = x, term = x;
        for (int n = 1;; ++n) {
            term = apply(u, term).scaled(RatFunc(Scalar::fraction(1, n)));
            if (term.isZero())
                return sum;
            sum += term;
        }
    };
    std::vector<SuperSection> xi;
    for (const auto& x : id.xi())
        xi.push_back(series(x));
    return GeneratorImages(series(id.z()), std::move(xi));
}

LinearEndo expEndo(const GradedDerivation& u)
{
    if (u.lowestDegree() == 0)
        throw Error(ErrorKind::HasDegreeZeroPart, "exponential needs a derivation in Der^(2)");
    LinearEndo U = LinearEndo::fromDerivation(u);
    LinearEndo sum = LinearEndo::identity(u.spec(), u.domain()), term = sum;
    for (int n = 1;; ++n) {
        term = compose(U, term).scaled(Scalar::fraction(1, n));
        if (term.isZero())
            return sum;
        sum += term;
    }
}

namespace {

// every component of a lies in grades of the given parity at least minGrade
bool gradedAtLeast(const SuperSection& a, int minGrade)
{
    for (const auto& [K, f] : a.terms())
        if (K.size() < minGrade || (K.size() - minGrade) % 2 != 0)
            return false;
    return true;
}

}  // namespace

GradedDerivation logGroup(const GeneratorImages& g)
{
    const BundleSpec& spec = g.spec();
    const PointSet& S = g.domain();
    GeneratorImages id = GeneratorImages::identity(spec, S);
    if (!gradedAtLeast(g.z() - id.z(), 2))
        throw Error(ErrorKind::NotInGE, "image of z has a component of grade below two or of odd grade");
    for (int t = 0; t < spec.m(); ++t)
        if (!gradedAtLeast(g.xi()[static_cast<std::size_t>(t)] - id.xi()[static_cast<std::size_t>(t)], 3))
            throw Error(ErrorKind::NotInGE, "image of xi_" + std::to_string(t + 1) + " is not xi plus grade >= 3 terms");
    auto mercator = [&](const SuperSection& x) {
        SuperSection sum(spec, S), power = x;
        for (int r = 1;; ++r) {
            power = g.apply(power) - power;
            if (power.isZero())
                return sum;
            sum += power.scaled(RatFunc(Scalar::fraction(r % 2 ? 1 : -1, r)));
        }
    };
    std::vector<SuperSection> xi;
    for (const auto& x : id.xi())
        xi.push_back(mercator(x));
    GradedDerivation D = fromGeneratorValues(spec, S, mercator(id.z()), xi);
    if (D.lowestDegree() == 0)
        throw Error(ErrorKind::NotInGE, "logarithm has a degree-zero part");
    return D;
}

// ---------------------------------------------------------------- cochains

GroupCochain groupCompose(const GroupCochain& alpha, const GroupCochain& v)
{
    const DerCochain& a = alpha.logs;
    const DerCochain& w = v.logs;
    if (a.spec() != w.spec())
        throw Error(ErrorKind::SpecMismatch, a.spec().str() + " vs " + w.spec().str());
    if (a.cover() != w.cover() || a.level() != 1 || w.level() != 0)
        throw Error(ErrorKind::LevelOutOfRange, "groupCompose needs a level-1 and a level-0 cochain on one cover");
    DerCochain out(1, a.cover(), a.spec());
    for (const Simplex& s : simplices(a.cover(), 1)) {
        PointSet S = a.cover().overlap(s);
        GeneratorImages left = expDer(w.at({s[0]}).restrict(S));
        GeneratorImages mid = expDer(a.at(s));
        GeneratorImages right = expDer(-w.at({s[1]}).restrict(S));
        out.set(s, logGroup(left.compose(mid.compose(right))));
    }
    return GroupCochain{out};
}

bool isGroupCocycle(const GroupCochain& alpha)
{
    const DerCochain& a = alpha.logs;
    for (const Simplex& s : simplices(a.cover(), 2)) {
        PointSet S = a.cover().overlap(s);
        GeneratorImages ij = expDer(a.at({s[0], s[1]}).restrict(S));
        GeneratorImages jk = expDer(a.at({s[1], s[2]}).restrict(S));
        GeneratorImages ik = expDer(a.at({s[0], s[2]}).restrict(S));
        if (!(ij.compose(jk) == ik))
            return false;
    }
    return true;
}

DerCochain F(const DerCochain& v, const DerCochain& u)
{
    if (v.level() != 0 || u.level() != 1 || v.cover() != u.cover())
        throw Error(ErrorKind::LevelOutOfRange, "F needs a level-0 and a level-1 cochain on one cover");
    DerCochain out(1, u.cover(), u.spec());
    for (const Simplex& s : simplices(u.cover(), 1)) {
        PointSet S = u.cover().overlap(s);
        GradedDerivation vi = v.at({s[0]}).restrict(S), vj = v.at({s[1]}).restrict(S);
        GradedDerivation val = (bracket(vi + vj, u.at(s)) - bracket(vi, vj)).scaled(Scalar::fraction(1, 2));
        out.set(s, val);
    }
    return out;
}

EndoCochain correctionC(const DerCochain& u2)
{
    if (!isCocycle(u2))
        throw Error(ErrorKind::NotACocycle, "c_u needs a cocycle");
    EndoCochain out(2, u2.cover(), u2.spec());
    for (const Simplex& s : simplices(u2.cover(), 2)) {
        PointSet S = u2.cover().overlap(s);
        LinearEndo ij = expEndo(u2.at({s[0], s[1]}).restrict(S));
        LinearEndo jk = expEndo(u2.at({s[1], s[2]}).restrict(S));
        LinearEndo ikInv = expEndo(-u2.at({s[0], s[2]}).restrict(S));
        LinearEndo prod = compose(ij, compose(jk, ikInv)) - LinearEndo::identity(u2.spec(), S);
        out.set(s, prod.gradePart(4));
    }
    return out;
}

DerCochain correctionAsDerivation(const EndoCochain& c)
{
    DerCochain out(c.level(), c.cover(), c.spec());
    for (const auto& [s, e] : c.entries())
        out.set(s, e.toDerivation());
    return out;
}

bool correctionIsCoboundary(const EndoCochain& c)
{
    if (c.isZero())
        return true;
    DerCochain d = correctionAsDerivation(c);
    DerCochain w = solveSecondCoboundary(d);
    return coboundary(w) == d && isRegular(w);
}

DerCochain conjugate(const BundleAut& phi, const DerCochain& c)
{
    DerCochain out(c.level(), c.cover(), c.spec());
    for (const auto& [s, D] : c.entries())
        out.set(s, conjugate(phi, D));
    return out;
}

// ---------------------------------------------------------------- D and sigma

bool satisfiesHypotheses(const BundleSpec& spec)
{
    const auto& l = spec.twists();
    int m = spec.m();
    if (m < 3)
        return false;
    return l[m - 2] + l[m - 1] < -2 && l[m - 3] + l[m - 2] + l[m - 1] - l[0] < 0;
}

CompatibleD CompatibleD::build(const BundleSpec& spec, const Cover& cover)
{
    if (!cover.isTwoChart())
        throw Error(ErrorKind::UnsupportedCover, "D is built on the two-chart cover");
    if (spec.m() > 5)
        throw Error(ErrorKind::InvalidArgument, "odd rank above 5");
    if (!satisfiesHypotheses(spec) && derCohomologyOracle(spec, 1, adequateWindow(spec, 1)).h0 != 0)
        throw Error(ErrorKind::GlobalDer2Nonzero, "H^0(Der_2) is nonzero for " + spec.str());
    CompatibleD d;
    d.spec_ = spec;
    d.cover_ = cover;
    return d;
}

DerCochain CompatibleD::atIdentity(const DerCochain& u2) const
{
    if (u2.spec() != spec_)
        throw Error(ErrorKind::SpecMismatch, u2.spec().str() + " vs " + spec_.str());
    DerCochain u = toTwoChart(u2);
    if (!(degreePart(u, 1) == u))
        throw Error(ErrorKind::InvalidArgument, "D takes a Der_2 cochain");
    H1Split split = canonicalH1(u);
    return -F(split.v, split.canonical);
}

DerCochain CompatibleD::operator()(const BundleAut& phi, const DerCochain& /*v2*/, const DerCochain& u2) const
{
    return conjugate(phi.inverse(), atIdentity(conjugate(phi, u2)));
}

SigmaResult sigmaD(const GroupCochain& alpha, const CompatibleD& D)
{
    DerCochain logs = toTwoChart(alpha.logs);
    if (logs.spec() != D.spec())
        throw Error(ErrorKind::SpecMismatch, logs.spec().str() + " vs " + D.spec().str());
    GradedDerivation log = logs.at({0, 1});
    if (log.lowestDegree() == 0)
        throw Error(ErrorKind::HasDegreeZeroPart, "cocycle is not in G_E");
    Cover two = Cover::twoChart();
    DerCochain u2 = singleEntry(two, degreePart(log, 1));
    DerCochain u4 = singleEntry(two, degreePart(log, 2));
    SigmaResult r;
    r.chi2 = canonicalH1(u2).canonical.at({0, 1});
    r.chi4 = canonicalH1(D.atIdentity(u2) + u4).canonical.at({0, 1});
    r.der2 = canonicalCoordinates(r.chi2, 1);
    r.der4 = canonicalCoordinates(r.chi4, 2);
    return r;
}

NormalForm normalForm(const GroupCochain& alpha, const CompatibleD& D)
{
    DerCochain logs = toTwoChart(alpha.logs);
    if (logs.spec() != D.spec())
        throw Error(ErrorKind::SpecMismatch, logs.spec().str() + " vs " + D.spec().str());
    Cover two = Cover::twoChart();
    GroupCochain a{logs};
    H1Split s2 = canonicalH1(degreePart(logs, 1));
    GroupCochain first = groupCompose(a, GroupCochain{-s2.v});
    H1Split s4 = canonicalH1(degreePart(first.logs, 2));
    GroupCochain second = groupCompose(first, GroupCochain{-s4.v});
    // exp(c_i) = exp(-w_i) exp(-v_i)
    std::vector<GradedDerivation> c;
    for (int i = 0; i < 2; ++i) {
        GeneratorImages g = expDer(-s4.v.at({i})).compose(expDer(-s2.v.at({i})));
        c.push_back(logGroup(g));
    }
    return NormalForm{second, GroupCochain{level0(two, c)}};
}

bool equivarianceHolds(const CompatibleD& D, const BundleAut& phi, const DerCochain& u2)
{
    DerCochain diff = conjugate(phi, D.atIdentity(u2)) - D.atIdentity(conjugate(phi, u2));
    return canonicalH1(diff).canonical.isZero();
}

GroupCochain randomGroupCocycle(std::mt19937_64& rng, const BundleSpec& spec, const Cover& cover)
{
    Window w{-3, 3};
    if (cover.isTwoChart()) {
        GroupCochain alpha{singleEntry(cover, randomCanonical(rng, spec, 1) + randomCanonical(rng, spec, 2))};
        GroupCochain v{randomLevel0(rng, spec, cover, 1, w) + randomLevel0(rng, spec, cover, 2, w)};
        return groupCompose(alpha, v);
    }
    if (!cover.isThreeChart())
        throw Error(ErrorKind::UnsupportedCover, cover.str());
    DerCochain u2 = liftToThreeChart(randomCanonical(rng, spec, 1)) + coboundary(randomLevel0(rng, spec, cover, 1, w));
    DerCochain u4 = -solveSecondCoboundary(correctionAsDerivation(correctionC(u2)));
    u4 += liftToThreeChart(randomCanonical(rng, spec, 2));
    return GroupCochain{u2 + u4};
}

}  // namespace supercoh
