#include "supercoh/cech.hpp"

#include <algorithm>
#include <functional>

#include "supercoh/linalg.hpp"

namespace supercoh {

// ---------------------------------------------------------------- Cover

Cover::Cover(std::vector<PointSet> charts) : charts_(std::move(charts))
{
    if (charts_.empty())
        throw Error(ErrorKind::UnsupportedCover, "empty cover");
    for (const Point& p : charts_.front().points()) {
        bool everywhere = std::all_of(charts_.begin(), charts_.end(), [&](const PointSet& s) { return s.contains(p); });
        if (everywhere)
            throw Error(ErrorKind::UnsupportedCover, "charts do not cover " + p.str());
    }
}

Cover Cover::twoChart() { return Cover({PointSet{Point::inf()}, PointSet{Point::at(0)}}); }

Cover Cover::threeChart() { return Cover({PointSet{Point::inf()}, PointSet{Point::at(0)}, PointSet{Point::at(1)}}); }

Cover Cover::parse(const std::string& text)
{
    if (text == "2" || text == "two")
        return twoChart();
    if (text == "3" || text == "three")
        return threeChart();
    throw Error(ErrorKind::UnsupportedCover, "unknown cover '" + text + "'");
}

PointSet Cover::overlap(const std::vector<int>& simplex) const
{
    PointSet s;
    for (int i : simplex)
        s = s.unionWith(chart(i));
    return s;
}

std::string Cover::str() const
{
    if (isTwoChart())
        return "two-chart";
    if (isThreeChart())
        return "three-chart";
    std::string s;
    for (const auto& c : charts_)
        s += (s.empty() ? "" : ";") + c.str();
    return s;
}

std::vector<Simplex> simplices(const Cover& cover, int level)
{
    std::vector<Simplex> out;
    int n = cover.size();
    std::function<void(Simplex&, int)> rec = [&](Simplex& cur, int from) {
        if (static_cast<int>(cur.size()) == level + 1) {
            out.push_back(cur);
            return;
        }
        for (int i = from; i < n; ++i) {
            cur.push_back(i);
            rec(cur, i + 1);
            cur.pop_back();
        }
    };
    Simplex cur;
    rec(cur, 0);
    return out;
}

// ---------------------------------------------------------------- coboundary

namespace {

template <class T>
CechCochain<T> coboundaryImpl(const CechCochain<T>& c)
{
    const Cover& cover = c.cover();
    if (c.level() >= 2)
        throw Error(ErrorKind::LevelOutOfRange, "no coboundary out of level 2");
    CechCochain<T> r(c.level() + 1, cover, c.spec());
    for (const Simplex& s : simplices(cover, c.level() + 1)) {
        PointSet S = cover.overlap(s);
        T acc(c.spec(), S);
        if (c.level() == 0) {
            acc += c.at({s[0]}).restrict(S);
            acc -= c.at({s[1]}).restrict(S);
        } else {
            acc += c.at({s[1], s[2]}).restrict(S);
            acc -= c.at({s[0], s[2]}).restrict(S);
            acc += c.at({s[0], s[1]}).restrict(S);
        }
        r.set(s, acc);
    }
    return r;
}


}  // namespace

DerCochain coboundary(const DerCochain& c) { return coboundaryImpl(c); }

EndoCochain coboundary(const EndoCochain& c) { return coboundaryImpl(c); }

bool isCocycle(const DerCochain& c)
{
    if (c.level() != 1)
        throw Error(ErrorKind::LevelOutOfRange, "cocycle test needs a level-1 cochain");
    return coboundary(c).isZero();
}

bool isRegular(const DerCochain& c)
{
    return std::all_of(c.entries().begin(), c.entries().end(), [](const auto& e) { return isRegular(e.second); });
}

DerCochain degreePart(const DerCochain& c, int k)
{
    DerCochain r(c.level(), c.cover(), c.spec());
    for (const auto& [s, D] : c.entries())
        r.set(s, degreePart(D, k));
    return r;
}

DerCochain level0(const Cover& cover, const std::vector<GradedDerivation>& values)
{
    if (static_cast<int>(values.size()) != cover.size() || values.empty())
        throw Error(ErrorKind::InvalidArgument, "one value per chart expected");
    DerCochain r(0, cover, values.front().spec());
    for (int i = 0; i < cover.size(); ++i)
        r.set({i}, values[static_cast<std::size_t>(i)]);
    return r;
}

DerCochain singleEntry(const Cover& cover, const GradedDerivation& u01)
{
    DerCochain r(1, cover, u01.spec());
    r.set({0, 1}, u01);
    return r;
}

DerCochain toTwoChart(const DerCochain& c)
{
    if (c.cover().isTwoChart())
        return c;
    if (c.level() != 1 || c.cover().size() < 2)
        throw Error(ErrorKind::UnsupportedCover, "restriction to the two-chart subcover needs a level-1 cochain");
    Cover two = Cover::twoChart();
    if (c.cover().chart(0) != two.chart(0) || c.cover().chart(1) != two.chart(1))
        throw Error(ErrorKind::UnsupportedCover, "cover does not contain the standard charts");
    return singleEntry(two, c.at({0, 1}));
}

// ---------------------------------------------------------------- canonical H1

H1Split canonicalH1(const DerCochain& c)
{
    if (!c.cover().isTwoChart())
        throw Error(ErrorKind::UnsupportedCover, "canonical representatives use the two-chart cover");
    if (c.level() != 1)
        throw Error(ErrorKind::LevelOutOfRange, "canonicalH1 needs a level-1 cochain");
    if (!isCocycle(c))
        throw Error(ErrorKind::NotACocycle, "input is not a cocycle");
    const BundleSpec& spec = c.spec();
    const Cover& cover = c.cover();
    GradedDerivation u = c.at({0, 1});

    std::map<DerKey, std::map<int, Scalar>> rest;
    for (const auto& [key, f] : u.terms())
        rest[key] = f.laurentTerms();

    GradedDerivation v0(spec, cover.chart(0));
    std::map<DerKey, RatFunc> v1frame;
    GradedDerivation chi(spec, cover.overlap({0, 1}));

    auto place = [&](const DerKey& key, int j, const Scalar& a) {
        int tau = key.twist(spec);
        if (j >= 0) {
            v0.addTerm(key, RatFunc::monomial(a, j));
            return false;
        }
        if (j <= tau) {
            v1frame[key] += RatFunc::monomial(-a, j);
            return true;
        }
        chi.addTerm(key, RatFunc::monomial(a, j));
        return false;
    };

    // d/dz channels first: absorbing into chart 1 feeds the contraction channels
    for (const auto& [key, terms] : std::map<DerKey, std::map<int, Scalar>>(rest)) {
        if (!key.isVectorField())
            continue;
        for (const auto& [j, a] : terms) {
            if (!place(key, j, a))
                continue;
            for (int t = 1; t <= spec.m(); ++t) {
                if (key.index.contains(t) || spec.twist(t) == 0)
                    continue;
                MultiIndex J = key.index.with(t);
                Scalar& slot = rest[DerKey::contraction(J, t)][j - 1];
                slot += a * Scalar(spec.twist(t) * rightSign(J, t));
            }
        }
    }
    for (const auto& [key, terms] : rest) {
        if (key.isVectorField())
            continue;
        for (const auto& [j, a] : terms)
            if (!a.isZero())
                place(key, j, a);
    }
    for (auto it = v1frame.begin(); it != v1frame.end();)
        it = it->second.isZero() ? v1frame.erase(it) : std::next(it);
    GradedDerivation v1 = fromFrameCoefficients(spec, cover.chart(1), v1frame, Scalar(0));

    H1Split out{singleEntry(cover, chi), level0(cover, {v0, v1})};
    if (out.canonical + coboundary(out.v) != c)
        throw Error(ErrorKind::NotACocycle, "canonical splitting failed to reproduce the input");
    return out;
}

std::vector<CanonicalMonomial> canonicalMonomials(const BundleSpec& spec, int k)
{
    std::vector<CanonicalMonomial> out;
    for (const DerKey& key : channelsOfDegree(spec, k))
        for (int j = key.twist(spec) + 1; j <= -1; ++j)
            out.push_back({key, j});
    return out;
}

std::vector<Scalar> canonicalCoordinates(const GradedDerivation& chi, int k)
{
    auto monos = canonicalMonomials(chi.spec(), k);
    std::vector<Scalar> out;
    out.reserve(monos.size());
    std::map<DerKey, std::map<int, Scalar>> cache;
    for (const auto& [key, f] : chi.terms())
        cache[key] = f.laurentTerms();
    for (const auto& m : monos) {
        auto it = cache.find(m.key);
        Scalar v;
        if (it != cache.end()) {
            auto jt = it->second.find(m.exponent);
            if (jt != it->second.end())
                v = jt->second;
        }
        out.push_back(v);
    }
    return out;
}

GradedDerivation fromCanonicalCoordinates(const BundleSpec& spec, int k, const std::vector<Scalar>& coords)
{
    auto monos = canonicalMonomials(spec, k);
    if (coords.size() != monos.size())
        throw Error(ErrorKind::InvalidArgument, "coordinate vector has wrong length");
    GradedDerivation chi(spec, Cover::twoChart().overlap({0, 1}));
    for (std::size_t i = 0; i < monos.size(); ++i)
        chi.addTerm(monos[i].key, RatFunc::monomial(coords[i], monos[i].exponent));
    return chi;
}

std::vector<int> channelTwists(const BundleSpec& spec, int k)
{
    std::vector<int> out;
    for (const DerKey& key : channelsOfDegree(spec, k))
        out.push_back(key.twist(spec));
    return out;
}

std::size_t splittingH1Dimension(const BundleSpec& spec, int k)
{
    std::size_t n = 0;
    for (int t : channelTwists(spec, k))
        n += static_cast<std::size_t>(std::max(0, -t - 1));
    return n;
}

// ---------------------------------------------------------------- dimension oracles

namespace {

CohomologyDims lineBundleDims(int k, const Cover& cover, const Window& w)
{
    int n = cover.size();
    std::vector<std::vector<RatSection>> c0;
    std::vector<std::size_t> c0off{0};
    for (int i = 0; i < n; ++i) {
        c0.push_back(basisOfSections(k, cover.chart(i), w));
        c0off.push_back(c0off.back() + c0.back().size());
    }
    auto pairs = simplices(cover, 1);
    std::vector<std::size_t> c1off{0};
    for (const auto& s : pairs)
        c1off.push_back(c1off.back() + sectionSpaceDimension(k, cover.overlap(s), w));

    Matrix d0(c1off.back(), c0off.back());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        PointSet S = cover.overlap(pairs[p]);
        for (int side = 0; side < 2; ++side) {
            int i = pairs[p][static_cast<std::size_t>(side)];
            Scalar sign(side == 0 ? 1 : -1);
            for (std::size_t b = 0; b < c0[static_cast<std::size_t>(i)].size(); ++b) {
                auto coords = sectionCoordinates(c0[static_cast<std::size_t>(i)][b].func(), k, S, w);
                for (std::size_t r = 0; r < coords.size(); ++r)
                    if (!coords[r].isZero())
                        d0(c1off[p] + r, c0off[static_cast<std::size_t>(i)] + b) = sign * coords[r];
            }
        }
    }
    std::size_t r0 = d0.rank();
    CohomologyDims out;
    out.h0 = c0off.back() - r0;
    if (n == 2) {
        out.h1 = c1off.back() - r0;
        return out;
    }
    // level-1 to level-2: (du)_ijk = u_jk - u_ik + u_ij
    auto triples = simplices(cover, 2);
    std::vector<std::size_t> c2off{0};
    for (const auto& s : triples)
        c2off.push_back(c2off.back() + sectionSpaceDimension(k, cover.overlap(s), w));
    Matrix d1(c2off.back(), c1off.back());
    for (std::size_t q = 0; q < triples.size(); ++q) {
        const Simplex& s = triples[q];
        PointSet S = cover.overlap(s);
        std::vector<std::pair<Simplex, int>> faces{{{s[1], s[2]}, 1}, {{s[0], s[2]}, -1}, {{s[0], s[1]}, 1}};
        for (const auto& [face, sign] : faces) {
            std::size_t p = static_cast<std::size_t>(std::find(pairs.begin(), pairs.end(), face) - pairs.begin());
            auto basis = basisOfSections(k, cover.overlap(face), w);
            for (std::size_t b = 0; b < basis.size(); ++b) {
                auto coords = sectionCoordinates(basis[b].func(), k, S, w);
                for (std::size_t r = 0; r < coords.size(); ++r)
                    if (!coords[r].isZero())
                        d1(c2off[q] + r, c1off[p] + b) += Scalar(sign) * coords[r];
            }
        }
    }
    out.h1 = (c1off.back() - d1.rank()) - r0;
    return out;
}

CohomologyDims stableLineBundleDims(int k, const Cover& cover, const Window& w)
{
    CohomologyDims a = lineBundleDims(k, cover, w);
    CohomologyDims b = lineBundleDims(k, cover, w.widened(4));
    if (a.h0 != b.h0 || a.h1 != b.h1)
        throw Error(ErrorKind::WindowTooSmall, "cohomology of O(" + std::to_string(k) + ") changes when the window grows");
    return a;
}

}  // namespace

std::size_t h1DimensionOracle(const std::vector<int>& twists, const Cover& cover, const Window& window)
{
    if (cover.size() < 2 || cover.size() > 3)
        throw Error(ErrorKind::UnsupportedCover, "dimension oracle supports two or three charts");
    std::map<int, std::size_t> cache;
    std::size_t total = 0;
    for (int k : twists) {
        auto it = cache.find(k);
        if (it == cache.end())
            it = cache.emplace(k, stableLineBundleDims(k, cover, window).h1).first;
        total += it->second;
    }
    return total;
}

std::size_t h0DimensionOracle(const std::vector<int>& twists, const Cover& cover, const Window& window)
{
    if (cover.size() < 2 || cover.size() > 3)
        throw Error(ErrorKind::UnsupportedCover, "dimension oracle supports two or three charts");
    std::size_t total = 0;
    for (int k : twists)
        total += stableLineBundleDims(k, cover, window).h0;
    return total;
}

namespace {

CohomologyDims derDims(const BundleSpec& spec, int k, const Window& w)
{
    Cover cover = Cover::twoChart();
    PointSet S01 = cover.overlap({0, 1});
    auto keys = channelsOfDegree(spec, k);
    // coordinates on the overlap: d/dz channels z^lo..z^hi, contraction channels z^{lo-1}..z^hi
    std::map<DerKey, std::pair<int, std::size_t>> slot;
    std::size_t dim1 = 0;
    for (const DerKey& key : keys) {
        int lo = key.isVectorField() ? w.lo : w.lo - 1;
        slot[key] = {lo, dim1};
        dim1 += static_cast<std::size_t>(w.hi - lo + 1);
    }
    std::vector<GradedDerivation> c0;
    for (int i = 0; i < 2; ++i)
        for (const auto& b : sectionBasis(spec, cover.chart(i), k, w))
            c0.push_back(b.restrict(S01).scaled(Scalar(i == 0 ? 1 : -1)));
    // chart 1 also reaches z^{lo-1} in contraction channels
    for (const DerKey& key : keys)
        if (!key.isVectorField() && w.lo - 1 <= key.twist(spec))
            c0.push_back(GradedDerivation::term(spec, S01, key, RatFunc::monomial(-1, w.lo - 1)));
    Matrix d0(dim1, c0.size());
    for (std::size_t col = 0; col < c0.size(); ++col)
        for (const auto& [key, f] : c0[col].terms())
            for (const auto& [j, a] : f.laurentTerms()) {
                auto [lo, off] = slot.at(key);
                if (j < lo || j > w.hi)
                    throw Error(ErrorKind::WindowTooSmall, "chart section leaves the overlap window");
                d0(off + static_cast<std::size_t>(j - lo), col) += a;
            }
    std::size_t r = d0.rank();
    return CohomologyDims{c0.size() - r, dim1 - r};
}

}  // namespace

Window adequateWindow(const BundleSpec& spec, int k)
{
    auto tw = channelTwists(spec, k);
    int lo = std::min(-2, *std::min_element(tw.begin(), tw.end()) - 2);
    int hi = std::max(2, *std::max_element(tw.begin(), tw.end()) + 2);
    return Window{lo, hi};
}

CohomologyDims derCohomologyOracle(const BundleSpec& spec, int k, const Window& window)
{
    CohomologyDims a = derDims(spec, k, window);
    CohomologyDims b = derDims(spec, k, window.widened(4));
    if (a.h0 != b.h0 || a.h1 != b.h1)
        throw Error(ErrorKind::WindowTooSmall, "derivation cohomology changes when the window grows");
    return a;
}

// ---------------------------------------------------------------- generators

Scalar randomSmallScalar(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> num(-3, 3), den(1, 3);
    Scalar s = Scalar::fraction(num(rng), den(rng));
    if (rng() % 4 == 0)
        s += Scalar::fraction(0, 1, num(rng), den(rng));
    if (s.isZero())
        s = Scalar(1);
    return s;
}

GradedDerivation randomCanonical(std::mt19937_64& rng, const BundleSpec& spec, int k, int sparsity)
{
    std::vector<Scalar> c(canonicalMonomials(spec, k).size());
    for (auto& x : c)
        if (rng() % static_cast<unsigned>(sparsity) == 0)
            x = randomSmallScalar(rng);
    return fromCanonicalCoordinates(spec, k, c);
}

DerCochain randomLevel0(std::mt19937_64& rng, const BundleSpec& spec, const Cover& cover, int k, const Window& window,
                        int density)
{
    std::vector<GradedDerivation> values;
    for (int i = 0; i < cover.size(); ++i) {
        GradedDerivation v(spec, cover.chart(i));
        auto basis = sectionBasis(spec, cover.chart(i), k, window);
        for (int n = 0; n < density && !basis.empty(); ++n)
            v += basis[rng() % basis.size()].scaled(randomSmallScalar(rng));
        values.push_back(v);
    }
    return level0(cover, values);
}

DerCochain liftToThreeChart(const GradedDerivation& chi01)
{
    Cover three = Cover::threeChart();
    const BundleSpec& spec = chi01.spec();
    if (chi01.domain() != three.overlap({0, 1}))
        throw Error(ErrorKind::DomainMismatch, "expected a section over the (0,1) overlap");
    GradedDerivation u02(spec, three.overlap({0, 2}));
    for (const auto& [key, f] : chi01.terms()) {
        int bound = key.isVectorField() ? key.index.twist(spec) : key.twist(spec);
        for (const auto& [j, a] : f.laurentTerms()) {
            if (j >= 0) {
                u02.addTerm(key, RatFunc::monomial(a, j));
                continue;
            }
            // z^{-n} = s^n (1+s)^{-n}, s = (z-1)^{-1}, truncated past the regularity bound
            int n = -j;
            int order = std::max(n, -bound - 1);
            Scalar binom(1);
            for (int r = 0; n + r <= order; ++r) {
                Scalar coeff = (r % 2 ? Scalar(-1) : Scalar(1)) * binom;
                u02.addTerm(key, RatFunc::polar(a * coeff, Scalar(1), n + r));
                binom = binom * Scalar(n + r) / Scalar(r + 1);
            }
        }
    }
    DerCochain u(1, three, spec);
    u.set({0, 1}, chi01);
    u.set({0, 2}, u02);
    PointSet S12 = three.overlap({1, 2});
    u.set({1, 2}, u02.restrict(three.overlap({0, 1, 2})).withDomain(S12) - chi01.withDomain(S12));
    return u;
}

DerCochain solveSecondCoboundary(const DerCochain& c)
{
    if (!c.cover().isThreeChart() || c.level() != 2)
        throw Error(ErrorKind::UnsupportedCover, "second coboundary solve needs a level-2 three-chart cochain");
    const Cover& cover = c.cover();
    GradedDerivation w01(c.spec(), cover.overlap({0, 1})), w02(c.spec(), cover.overlap({0, 2}));
    GradedDerivation top = c.at({0, 1, 2});
    for (const auto& [key, f] : top.terms()) {
        w01.addTerm(key, f.principalPart(Scalar(0)) + RatFunc(f.polynomialPart()));
        w02.addTerm(key, -f.principalPart(Scalar(1)));
    }
    DerCochain w(1, cover, c.spec());
    w.set({0, 1}, w01);
    w.set({0, 2}, w02);
    return w;
}

}  // namespace supercoh
