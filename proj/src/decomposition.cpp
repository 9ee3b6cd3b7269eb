#include "supercoh/decomposition.hpp"

#include <algorithm>

namespace supercoh {

// ---------------------------------------------------------------- SplitSpec

SplitSpec::SplitSpec(BundleSpec E, MultiIndex fIndices) : e_(std::move(E)), fMask_(fIndices)
{
    if (!fMask_.subsetOf(MultiIndex::full(e_.m())))
        throw Error(ErrorKind::InvalidArgument, "F indices outside E");
    std::vector<int> f, fp;
    for (int i = 1; i <= e_.m(); ++i) {
        if (fMask_.contains(i)) {
            f.push_back(e_.twist(i));
            fPos_.push_back(i);
        } else {
            fp.push_back(e_.twist(i));
        }
    }
    f_ = BundleSpec(f);
    fp_ = BundleSpec(fp);
}

SplitSpec SplitSpec::fromParts(const BundleSpec& F, const BundleSpec& Fprime)
{
    std::vector<int> e;
    MultiIndex mask;
    std::size_t a = 0, b = 0;
    const auto& f = F.twists();
    const auto& fp = Fprime.twists();
    while (a < f.size() || b < fp.size()) {
        if (b == fp.size() || (a < f.size() && f[a] <= fp[b])) {
            e.push_back(f[a++]);
            mask = mask.with(static_cast<int>(e.size()));
        } else {
            e.push_back(fp[b++]);
        }
    }
    return SplitSpec(BundleSpec(e), mask);
}

MultiIndex SplitSpec::embedF(MultiIndex I) const
{
    MultiIndex out;
    for (int i : I.members())
        out = out.with(embedF(i));
    return out;
}

std::optional<MultiIndex> SplitSpec::toF(MultiIndex I) const
{
    if (!I.subsetOf(fMask_))
        return std::nullopt;
    MultiIndex out;
    for (std::size_t k = 0; k < fPos_.size(); ++k)
        if (I.contains(fPos_[k]))
            out = out.with(static_cast<int>(k) + 1);
    return out;
}

DerKey SplitSpec::embedF(const DerKey& key) const
{
    return DerKey{embedF(key.index), key.isVectorField() ? 0 : embedF(key.kind)};
}

std::string SplitSpec::str() const { return f_.str() + " + " + fp_.str(); }

// ---------------------------------------------------------------- reduction

namespace {

SuperSection projectToF(const SuperSection& a, const SplitSpec& split)
{
    SuperSection out(split.F(), a.domain());
    for (const auto& [I, f] : a.terms())
        if (auto J = split.toF(I))
            out.addTerm(*J, f);
    return out;
}

GradedDerivation reduceElement(const GradedDerivation& log, const SplitSpec& split)
{
    GeneratorImages g = expDer(log);
    std::vector<SuperSection> xi;
    for (int i = 1; i <= split.rankF(); ++i)
        xi.push_back(projectToF(g.xi()[static_cast<std::size_t>(split.embedF(i) - 1)], split));
    return logGroup(GeneratorImages(projectToF(g.z(), split), xi));
}

}  // namespace

GroupCochain reduceToF(const GroupCochain& alpha, const SplitSpec& split)
{
    if (split.rankF() >= 4)
        throw Error(ErrorKind::RankTooHigh, "rank(F) = " + std::to_string(split.rankF()));
    if (alpha.logs.spec() != split.E())
        throw Error(ErrorKind::SpecMismatch, alpha.logs.spec().str() + " vs " + split.E().str());
    const Cover& cover = alpha.logs.cover();
    DerCochain out(alpha.logs.level(), cover, split.F());
    for (const Simplex& s : simplices(cover, alpha.logs.level()))
        out.set(s, reduceElement(alpha.logs.at(s), split));
    GroupCochain result{out};
    if (out.level() == 1 && !isGroupCocycle(result))
        throw Error(ErrorKind::NotACocycle, "reduced cochain is not a cocycle");
    return result;
}

GradedDerivation embedF(const GradedDerivation& d, const SplitSpec& split, const PointSet& domain)
{
    if (d.spec() != split.F())
        throw Error(ErrorKind::SpecMismatch, d.spec().str() + " vs " + split.F().str());
    GradedDerivation out(split.E(), domain);
    for (const auto& [key, f] : d.terms())
        out.addTerm(split.embedF(key), f);
    return out;
}

// ---------------------------------------------------------------- eleven blocks

namespace {

template <class Fn>
EndoCochain mapEntries(const EndoCochain& a, Fn fn)
{
    EndoCochain out(a.level(), a.cover(), a.spec());
    for (const Simplex& s : simplices(a.cover(), a.level()))
        out.set(s, fn(a.at(s), s));
    return out;
}

EndoCochain gradeOf(const EndoCochain& a, int d)
{
    return mapEntries(a, [d](const LinearEndo& e, const Simplex&) { return e.gradePart(d); });
}

LinearEndo projectorAt(const SplitSpec& split, const PointSet& domain, char block)
{
    const BundleSpec& E = split.E();
    std::vector<int> primes = split.fprimeIndices().members();
    int want = block == 'X' ? 0 : block == 'Y' ? 1 : 2;
    // sum over subsets K of F' with |K| = want of prod_{p in K} Q_p prod_{p not in K} (1 - Q_p)
    LinearEndo total(E, domain);
    for (std::uint32_t mask = 0; mask < (1U << primes.size()); ++mask) {
        if (MultiIndex(mask).size() != want)
            continue;
        LinearEndo prod = LinearEndo::identity(E, domain);
        for (std::size_t k = 0; k < primes.size(); ++k) {
            LinearEndo q(E, domain);
            q.addTerm(EndoKey{MultiIndex::single(primes[k]), 0, MultiIndex::single(primes[k])}, RatFunc(Scalar(1)));
            LinearEndo factor = (mask >> k) & 1U ? q : LinearEndo::identity(E, domain) - q;
            prod = compose(prod, factor);
        }
        total += prod;
    }
    return total;
}

int blockIndex(char c) { return c == 'X' ? 0 : c == 'Y' ? 1 : 2; }

}  // namespace

EndoCochain projector(const SplitSpec& split, const Cover& cover, char block)
{
    EndoCochain out(1, cover, split.E());
    for (const Simplex& s : simplices(cover, 1))
        out.set(s, projectorAt(split, cover.overlap(s), block));
    return out;
}

EndoCochain asOperators(const GroupCochain& alpha)
{
    const DerCochain& logs = alpha.logs;
    EndoCochain out(logs.level(), logs.cover(), logs.spec());
    for (const Simplex& s : simplices(logs.cover(), logs.level()))
        out.set(s, expEndo(logs.at(s)));
    return out;
}

EndoCochain ElevenSplit::reconstruct() const
{
    EndoCochain sum = alphaX;
    for (const auto& [name, c] : components())
        if (c != &alphaX)
            sum += *c;
    return sum;
}

std::vector<std::pair<std::string, const EndoCochain*>> ElevenSplit::components() const
{
    return {{"X", &alphaX},    {"Y", &alphaY},    {"Z", &alphaZ},    {"2,XY", &u2XY}, {"4,XY", &u4XY}, {"2,XZ", &u2XZ},
            {"4,XZ", &u4XZ},   {"2,YZ", &u2YZ},   {"4,YZ", &u4YZ},   {"2,YX", &u2YX}, {"2,ZY", &u2ZY}};
}

ElevenSplit elevenSplit(const GroupCochain& alpha, const SplitSpec& split)
{
    if (split.rankF() > 3 || split.rankFprime() > 2)
        throw Error(ErrorKind::RankTooHigh, "ranks " + split.str());
    if (alpha.logs.spec() != split.E())
        throw Error(ErrorKind::SpecMismatch, alpha.logs.spec().str() + " vs " + split.E().str());
    if (alpha.logs.level() != 1)
        throw Error(ErrorKind::LevelOutOfRange, "elevenSplit needs a level-1 cochain");
    const Cover& cover = alpha.logs.cover();
    EndoCochain a = asOperators(alpha);
    const char names[] = {'X', 'Y', 'Z'};
    EndoCochain P[3];
    for (char b : names)
        P[blockIndex(b)] = projector(split, cover, b);

    auto block = [&](char target, char source) {
        EndoCochain out(1, cover, split.E());
        for (const Simplex& s : simplices(cover, 1))
            out.set(s, compose(P[blockIndex(target)].at(s), compose(a.at(s), P[blockIndex(source)].at(s))));
        return out;
    };

    ElevenSplit r;
    r.residual = EndoCochain(1, cover, split.E());
    r.alphaX = block('X', 'X');
    r.alphaY = block('Y', 'Y');
    r.alphaZ = block('Z', 'Z');
    auto take = [&](const EndoCochain& b, EndoCochain& two, EndoCochain* four) {
        two = gradeOf(b, 2);
        EndoCochain rest = b - two;
        if (four) {
            *four = gradeOf(b, 4);
            rest -= *four;
        }
        r.residual += rest;
    };
    take(block('Y', 'X'), r.u2XY, &r.u4XY);
    take(block('Z', 'X'), r.u2XZ, &r.u4XZ);
    take(block('Z', 'Y'), r.u2YZ, &r.u4YZ);
    take(block('X', 'Y'), r.u2YX, nullptr);
    take(block('Y', 'Z'), r.u2ZY, nullptr);
    r.residual += block('X', 'Z');

    // reassembled logarithm: u2 is the grade-2 part, u4 = (grade 4) - u2^2/2
    EndoCochain two = gradeOf(r.alphaX + r.alphaY + r.alphaZ, 2) + r.u2XY + r.u2XZ + r.u2YZ + r.u2YX + r.u2ZY;
    EndoCochain fourEndo = gradeOf(r.alphaX + r.alphaY + r.alphaZ, 4) + r.u4XY + r.u4XZ + r.u4YZ;
    try {
        DerCochain u2(1, cover, split.E()), u4(1, cover, split.E());
        for (const Simplex& s : simplices(cover, 1)) {
            LinearEndo t = two.at(s);
            u2.set(s, t.toDerivation());
            u4.set(s, (fourEndo.at(s) - compose(t, t).gradePart(4).scaled(Scalar::fraction(1, 2))).toDerivation());
        }
        r.u2IsCocycle = isCocycle(u2);
        r.groupCocycle = isGroupCocycle(GroupCochain{u2 + u4});
        r.correctionIsCoboundary = supercoh::correctionIsCoboundary(correctionC(u2));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotADerivation)
            throw;
    }
    return r;
}

// ---------------------------------------------------------------- rank(F') = 1

bool ClassSlot::isZero() const
{
    return std::all_of(coords.begin(), coords.end(), [](const Scalar& c) { return c.isZero(); });
}

std::string lineBundleChannel(const DerKey& key, const SplitSpec& split)
{
    if (split.rankFprime() != 1)
        throw Error(ErrorKind::RankMismatch, "rank(F') = " + std::to_string(split.rankFprime()));
    int p = split.fprimeIndices().members().front();
    if (key.gradeShift() == 4)
        return "u4L";
    if (key.gradeShift() != 2)
        throw Error(ErrorKind::ChannelUnknown, key.str());
    bool hitsL = key.index.contains(p);
    if (key.isVectorField() || key.kind != p)
        return hitsL ? "u2L" : "alphaF";
    return hitsL ? "alphaL" : "uF";
}

LineBundleForm lineBundleForm(const GroupCochain& alpha, const SplitSpec& split, const CompatibleD& D)
{
    if (split.rankFprime() != 1)
        throw Error(ErrorKind::RankMismatch, "rank(F') = " + std::to_string(split.rankFprime()));
    if (split.rankF() > 3)
        throw Error(ErrorKind::RankTooHigh, "rank(F) = " + std::to_string(split.rankF()));
    if (D.spec() != split.E() || alpha.logs.spec() != split.E())
        throw Error(ErrorKind::SpecMismatch, "D, alpha and the split must share E");
    SigmaResult sigma = sigmaD(alpha, D);

    LineBundleForm out;
    out.alphaF.name = "alphaF";
    out.alphaL.name = "alphaL";
    out.uF.name = "uF";
    out.u2L.name = "u2L";
    out.u4L.name = "u4L";
    auto slotOf = [&](const std::string& name) -> ClassSlot& {
        for (ClassSlot* s : {&out.alphaF, &out.alphaL, &out.uF, &out.u2L})
            if (s->name == name)
                return *s;
        return out.u4L;
    };
    auto fill = [&](int k, const std::vector<Scalar>& coords) {
        std::vector<CanonicalMonomial> mons = canonicalMonomials(split.E(), k);
        for (std::size_t n = 0; n < mons.size(); ++n) {
            ClassSlot& slot = slotOf(lineBundleChannel(mons[n].key, split));
            slot.monomials.push_back(mons[n]);
            slot.coords.push_back(coords[n]);
        }
    };
    fill(1, sigma.der2);
    fill(2, sigma.der4);

    out.u2IsCocycle = isCocycle(degreePart(alpha.logs, 1));
    out.correctionIsCoboundary = supercoh::correctionIsCoboundary(correctionC(degreePart(alpha.logs, 1)));
    return out;
}

}  // namespace supercoh
