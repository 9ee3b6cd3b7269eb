#include "supercoh/classify.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "supercoh/cech.hpp"
#include "supercoh/decomposition.hpp"
#include "supercoh/orbit.hpp"

namespace supercoh {

namespace {

long clampDim(int bound) { return std::max(0, bound + 1); }

long lineOracle(int twist)
{
    int w = std::abs(twist) + 4;
    return static_cast<long>(h1DimensionOracle({twist}, Cover::twoChart(), Window{-w, w}));
}

std::vector<DerKey> allChannels(const BundleSpec& spec)
{
    std::vector<DerKey> out = channelsOfDegree(spec, 1);
    for (const DerKey& k : channelsOfDegree(spec, 2))
        out.push_back(k);
    return out;
}

int degreeOf(const DerKey& key) { return key.gradeShift() / 2; }

struct Builder {
    ClassificationReport& report;
    std::vector<DerKey> channels;
    std::set<std::size_t> used;

    explicit Builder(ClassificationReport& r) : report(r), channels(allChannels(r.spec)) {}

    template <class Pred>
    ChannelRow& row(const std::string& block, const std::string& name, int bound, int multiplicity, Pred pred)
    {
        ChannelRow r;
        r.block = block;
        r.name = name;
        r.bound = bound;
        r.multiplicity = multiplicity;
        r.formula = multiplicity * clampDim(bound);
        for (std::size_t n = 0; n < channels.size(); ++n)
            if (pred(channels[n])) {
                if (!used.insert(n).second)
                    report.notes.push_back("channel " + channels[n].str() + " assigned twice");
                r.keys.push_back(channels[n]);
                r.oracle += lineOracle(channels[n].twist(report.spec));
            }
        if (static_cast<int>(r.keys.size()) != multiplicity) {
            report.consistent = false;
            report.notes.push_back("row " + name + ": " + std::to_string(r.keys.size()) + " channels, expected " +
                                   std::to_string(multiplicity));
        }
        report.channels.push_back(r);
        return report.channels.back();
    }

    void finishCoverage()
    {
        if (used.size() != channels.size()) {
            report.consistent = false;
            report.notes.push_back(std::to_string(channels.size() - used.size()) + " channels not assigned to a row");
        }
    }
};

std::string pairName(const std::string& c, int i, int j) { return c + "_" + std::to_string(i) + std::to_string(j); }

void addBlock(ClassificationReport& r, const std::string& name, const std::string& action)
{
    long dim = 0;
    for (const ChannelRow& row : r.channels)
        if (row.block == name)
            dim += row.formula;
    r.blocks.push_back(BlockSummary{name, action, dim});
}

// checks, H^0 and the total oracle; returns whether the tables apply
bool prepare(ClassificationReport& r, std::vector<HypothesisCheck> extra)
{
    r.checks = classificationHypotheses(r.spec);
    for (auto& c : extra)
        r.checks.push_back(std::move(c));
    CohomologyDims two = derCohomologyOracle(r.spec, 1, adequateWindow(r.spec, 1));
    long total = static_cast<long>(two.h1);
    if (!channelsOfDegree(r.spec, 2).empty())
        total += static_cast<long>(derCohomologyOracle(r.spec, 2, adequateWindow(r.spec, 2)).h1);
    r.h0Der2 = static_cast<long>(two.h0);
    r.totalOracle = total;
    r.checks.push_back(HypothesisCheck{"H0(Der_2) = 0", "direct coboundary computation", two.h0 == 0});
    r.hypothesesHold = std::all_of(r.checks.begin(), r.checks.end(), [](const HypothesisCheck& c) { return c.holds; });
    if (!r.hypothesesHold)
        r.notes.push_back("hypotheses violated: partial report");
    return r.hypothesesHold;
}

void finalize(ClassificationReport& r)
{
    r.totalFormula = 0;
    for (const ChannelRow& row : r.channels) {
        r.totalFormula += row.formula;
        if (row.formula != row.oracle) {
            r.consistent = false;
            r.notes.push_back("row " + row.name + ": formula " + std::to_string(row.formula) + " vs oracle " +
                              std::to_string(row.oracle));
        }
    }
    if (r.hypothesesHold && r.totalOracle && *r.totalOracle != r.totalFormula) {
        r.consistent = false;
        r.notes.push_back("total formula " + std::to_string(r.totalFormula) + " vs oracle " +
                          std::to_string(*r.totalOracle));
    }
    if (!r.consistent)
        r.notes.push_back("INCONSISTENT");
}

std::vector<int> sorted(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

std::vector<HypothesisCheck> classificationHypotheses(const BundleSpec& spec)
{
    int m = spec.m();
    if (m < 3)
        throw Error(ErrorKind::InvalidArgument, "hypothesis checks need m >= 3");
    int a = spec.twist(m - 1) + spec.twist(m);
    int b = spec.twist(m - 2) + spec.twist(m - 1) + spec.twist(m) - spec.twist(1);
    return {HypothesisCheck{"l_{m-1} + l_m < -2", std::to_string(a) + " < -2", a < -2},
            HypothesisCheck{"l_{m-2} + l_{m-1} + l_m - l_1 < 0", std::to_string(b) + " < 0", b < 0}};
}

ClassificationReport classifyRank3(const std::vector<int>& l)
{
    if (l.size() != 3)
        throw Error(ErrorKind::InvalidArgument, "rank 3 needs three twists");
    ClassificationReport r;
    r.caseLabel = "rank-3";
    r.input = l;
    r.spec = BundleSpec(sorted(l));
    if (prepare(r, {})) {
        Builder b(r);
        const int pairs[3][3] = {{1, 2, 3}, {1, 3, 2}, {2, 3, 1}};
        for (const auto& p : pairs) {
            int i = p[0], j = p[1], t = p[2];
            int s = r.spec.twist(i) + r.spec.twist(j);
            std::string block = std::to_string(i) + std::to_string(j);
            b.row(block, pairName("c", i, j), -s - 4, 1, [&](const DerKey& k) {
                return k.isVectorField() && k.index == MultiIndex{i, j};
            });
            b.row(block, pairName("d", i, j), -s - 2, 1, [&](const DerKey& k) {
                return !k.isVectorField() && k.kind == t && k.index.size() == 3;
            });
        }
        b.finishCoverage();
        OrbitCase oc = orbitCase(r.spec);
        r.caseLabel = "rank-3 " + oc.label;
        for (int n = 0; n < 3; ++n) {
            const auto& p = pairs[n];
            addBlock(r, std::to_string(p[0]) + std::to_string(p[1]), "wedge2 + wedge3(x)rho*");
        }
        for (const OrbitFactor& f : oc.factors)
            r.orbitSpace.push_back("V_" + std::to_string(f.k) + "^" + std::to_string(f.n));
    }
    finalize(r);
    r.structuresMayExist = r.totalOracle.value_or(r.totalFormula) > 0;
    return r;
}

ClassificationReport classifyFourfold(int l)
{
    ClassificationReport r;
    r.caseLabel = "fourfold";
    r.input = {l, l, l, l};
    r.spec = BundleSpec(r.input);
    if (prepare(r, {HypothesisCheck{"l < -1", std::to_string(l) + " < -1", l < -1}})) {
        Builder b(r);
        b.row("wedge2", "-2l-4", -2 * l - 4, 6, [](const DerKey& k) { return degreeOf(k) == 1 && k.isVectorField(); });
        b.row("wedge3(x)rho*", "-2l-2", -2 * l - 2, 16,
              [](const DerKey& k) { return degreeOf(k) == 1 && !k.isVectorField(); });
        b.row("det", "-4l-4", -4 * l - 4, 1, [](const DerKey& k) { return degreeOf(k) == 2; });
        b.finishCoverage();
        addBlock(r, "wedge2", "rho^rho");
        addBlock(r, "wedge3(x)rho*", "rho^rho^rho(x)rho*");
        addBlock(r, "det", "det");
        r.orbitSpace.push_back("U(4)-orbits of the diagonal action on " + fourfoldPoint(l).descriptor());
    }
    finalize(r);
    r.structuresMayExist = r.totalOracle.value_or(r.totalFormula) > 0;
    return r;
}

ClassificationReport classifyTwoCouples(int l, int lp)
{
    if (l >= lp)
        throw Error(ErrorKind::HypothesisViolated, "two couples need l < l'");
    ClassificationReport r;
    r.caseLabel = "two-couples";
    r.input = {l, l, lp, lp};
    r.spec = BundleSpec(r.input);
    r.structuresMayExist = l <= -1;
    if (!r.structuresMayExist)
        r.notes.push_back("no non-split structures (l > -1)");
    bool table = prepare(r, {HypothesisCheck{"l <= -1 (existence)", std::to_string(l) + " <= -1", l <= -1},
                             HypothesisCheck{"l' < -1", std::to_string(lp) + " < -1", lp < -1}});
    if (table) {
        Builder b(r);
        const BundleSpec& E = r.spec;
        auto vf = [](MultiIndex I) { return [I](const DerKey& k) { return k.isVectorField() && k.index == I; }; };
        auto contraction = [&E](int twist) {
            return [&E, twist](const DerKey& k) { return degreeOf(k) == 1 && !k.isVectorField() && k.twist(E) == twist; };
        };
        b.row("det1", "-2l-4", -2 * l - 4, 1, vf(MultiIndex{1, 2}));
        b.row("rho1(x)rho2", "-l-l'-4", -l - lp - 4, 4, [](const DerKey& k) {
            return k.isVectorField() && k.index.size() == 2 && k.index.contains(1) + k.index.contains(2) == 1;
        });
        b.row("det2", "-2l'-4", -2 * lp - 4, 1, vf(MultiIndex{3, 4}));
        b.row("det1.rho2(x)rho2*", "-2l-2", -2 * l - 2, 4, contraction(2 * l));
        b.row("det1.rho2(x)rho1* + det2.rho1(x)rho2*", "-l-l'-2", -l - lp - 2, 8, contraction(l + lp));
        b.row("det2.rho1(x)rho1*", "-2l'-2", -2 * lp - 2, 4, contraction(2 * lp));
        b.row("det1.det2", "-2l-2l'-4", -2 * l - 2 * lp - 4, 1, [](const DerKey& k) { return degreeOf(k) == 2; });
        b.finishCoverage();
        for (const char* name : {"det1", "rho1(x)rho2", "det2", "det1.rho2(x)rho2*", "det1.rho2(x)rho1* + det2.rho1(x)rho2*",
                                 "det2.rho1(x)rho1*", "det1.det2"})
            addBlock(r, name, name);
        r.orbitSpace.push_back("U(2)xU(2)-orbits of the diagonal action on " + twoCouplesPoint(l, lp).descriptor());
    }
    finalize(r);
    return r;
}

ClassificationReport classifyDistinctLine(const std::vector<int>& l123In, int l)
{
    if (l123In.size() != 3)
        throw Error(ErrorKind::InvalidArgument, "F needs three twists");
    std::vector<int> f = sorted(l123In);
    if (std::find(f.begin(), f.end(), l) != f.end() || (l > f[0] && l < f[2]))
        throw Error(ErrorKind::HypothesisViolated, "L must differ from every l_i and lie below l_1 or above l_3");
    ClassificationReport r;
    r.caseLabel = "distinct-line-bundle";
    r.input = {f[0], f[1], f[2], l};
    SplitSpec split = SplitSpec::fromParts(BundleSpec(f), BundleSpec({l}));
    r.spec = split.E();
    bool below = l < f[0];
    int gate = below ? l + f[0] : f[0] + f[1];
    r.structuresMayExist = gate <= -2;
    if (!r.structuresMayExist)
        r.notes.push_back("no non-split structures (existence gate fails)");
    r.notes.push_back("l_4 in the hypothesis read as the largest twist: the condition is l_{m-1} + l_m < -2 on the sorted vector");
    std::string gateText = below ? "l + l_1 <= -2" : "l_1 + l_2 <= -2";
    bool table = prepare(r, {HypothesisCheck{gateText + " (existence)", std::to_string(gate) + " <= -2", gate <= -2}});
    if (table) {
        Builder b(r);
        int p = split.fprimeIndices().members().front();
        int LF = f[0] + f[1] + f[2];
        auto e = [&](int i) { return split.embedF(i); };
        auto tw = [&](int i) { return f[static_cast<std::size_t>(i - 1)]; };
        const int pairs[3][3] = {{1, 2, 3}, {1, 3, 2}, {2, 3, 1}};
        for (const auto& q : pairs)
            b.row("1", pairName("c", q[0], q[1]), -tw(q[0]) - tw(q[1]) - 4, 1, [&, q](const DerKey& k) {
                return k.isVectorField() && k.index == MultiIndex{e(q[0]), e(q[1])};
            });
        for (int i = 1; i <= 3; ++i)
            b.row("2", "c_" + std::to_string(i), -tw(i) - l - 4, 1, [&, i](const DerKey& k) {
                return k.isVectorField() && k.index == MultiIndex{e(i), p};
            });
        for (int i = 1; i <= 3; ++i) {
            b.row("3", "d_" + std::to_string(i), -tw(i) - l - 2, 2, [&, i](const DerKey& k) {
                return !k.isVectorField() && k.index.size() == 3 && k.index.contains(p) && k.index.contains(e(i)) &&
                       k.kind != p && k.kind != e(i) && k.index.contains(k.kind);
            });
            b.row("3", "d'_" + std::to_string(i), -LF - l + 2 * tw(i) - 2, 1, [&, i](const DerKey& k) {
                return !k.isVectorField() && k.index.size() == 3 && k.index.contains(p) && k.kind == e(i) &&
                       !k.index.contains(e(i));
            });
        }
        for (const auto& q : pairs)
            b.row("4", pairName("d", q[0], q[1]), -tw(q[0]) - tw(q[1]) - 2, 1, [&, q](const DerKey& k) {
                return !k.isVectorField() && k.index.size() == 3 && !k.index.contains(p) && k.kind == e(q[2]);
            });
        b.row("5", "c", -LF + l - 2, 1, [&](const DerKey& k) {
            return !k.isVectorField() && k.index.size() == 3 && !k.index.contains(p) && k.kind == p;
        });
        for (const auto& q : pairs)
            b.row("6", pairName("d'", q[0], q[1]), -tw(q[0]) - tw(q[1]) - 2, 1, [&, q](const DerKey& k) {
                return !k.isVectorField() && k.index == MultiIndex{e(q[0]), e(q[1]), p} && k.kind == p;
            });
        b.row("7", "d", -LF - l - 4, 1, [](const DerKey& k) { return degreeOf(k) == 2; });
        b.finishCoverage();

        for (ChannelRow& row : r.channels) {
            std::set<std::string> slots;
            for (const DerKey& k : row.keys)
                slots.insert(lineBundleChannel(k, split));
            if (slots.size() == 1) {
                row.slot = *slots.begin();
            } else {
                r.consistent = false;
                r.notes.push_back("row " + row.name + " spans several slots");
            }
        }
        const char* actions[7] = {"U(F): wedge2; A(L): trivial",        "U(F): rho; A(L): standard",
                                  "U(F): wedge2(x)rho*; A(L): standard", "U(F): wedge3(x)rho*; A(L): trivial",
                                  "U(F): det; A(L): dual",              "U(F): wedge2; A(L): trivial",
                                  "U(F): det; A(L): standard"};
        for (int n = 0; n < 7; ++n)
            addBlock(r, std::to_string(n + 1), actions[n]);
        r.orbitSpace.push_back("classes ([alpha_F], [alpha_L], [u_F], [u_2,L], [D(Id,0,u_2) + u_4,L]) under U(F) x A(L)");
        if (split.rankF() == 3)
            r.orbitSpace.push_back("alpha_F part as in rank 3 for " + BundleSpec(f).str());
    }
    finalize(r);
    return r;
}

ClassificationReport classifyTwists(const std::vector<int>& twists)
{
    std::vector<int> t = sorted(twists);
    if (t.size() == 3)
        return classifyRank3(t);
    if (t.size() != 4)
        throw Error(ErrorKind::InvalidArgument, "classification covers ranks 3 and 4");
    if (t[0] == t[3])
        return classifyFourfold(t[0]);
    if (t[0] == t[1] && t[2] == t[3])
        return classifyTwoCouples(t[0], t[2]);
    if (t[0] < t[1])
        return classifyDistinctLine({t[1], t[2], t[3]}, t[0]);
    return classifyDistinctLine({t[0], t[1], t[2]}, t[3]);
}

// ---------------------------------------------------------------- output

nlohmann::json ClassificationReport::toJson() const
{
    nlohmann::json j;
    j["case"] = caseLabel;
    j["input"] = input;
    j["twists"] = spec.twists();
    nlohmann::json checksJson = nlohmann::json::array();
    for (const HypothesisCheck& c : checks)
        checksJson.push_back({{"name", c.name}, {"expression", c.expression}, {"holds", c.holds}});
    j["hypothesisChecks"] = checksJson;
    j["hypothesesHold"] = hypothesesHold;
    j["structuresMayExist"] = structuresMayExist;
    nlohmann::json rows = nlohmann::json::array();
    for (const ChannelRow& row : channels) {
        nlohmann::json keys = nlohmann::json::array();
        for (const DerKey& k : row.keys)
            keys.push_back(k.str());
        nlohmann::json rj{{"block", row.block},         {"name", row.name},     {"bound", row.bound},
                          {"multiplicity", row.multiplicity}, {"formula", row.formula}, {"oracle", row.oracle},
                          {"channels", keys}};
        if (!row.slot.empty())
            rj["slot"] = row.slot;
        rows.push_back(rj);
    }
    j["perChannelDims"] = rows;
    nlohmann::json blocksJson = nlohmann::json::array();
    for (const BlockSummary& b : blocks)
        blocksJson.push_back({{"name", b.name}, {"action", b.action}, {"dim", b.dim}});
    j["blocks"] = blocksJson;
    j["orbitSpaceDescription"] = orbitSpace;
    j["totalDim"] = totalFormula;
    j["totalOracle"] = totalOracle ? nlohmann::json(*totalOracle) : nlohmann::json(nullptr);
    j["h0Der2"] = h0Der2 ? nlohmann::json(*h0Der2) : nlohmann::json(nullptr);
    j["consistent"] = consistent;
    j["notes"] = notes;
    return j;
}

std::string ClassificationReport::toTable() const
{
    std::ostringstream os;
    os << "case      " << caseLabel << "\n";
    os << "twists    " << spec.str() << "\n";
    for (const HypothesisCheck& c : checks)
        os << (c.holds ? "  ok      " : "  FAILS   ") << c.name << "   (" << c.expression << ")\n";
    if (!channels.empty()) {
        int w = 5;
        for (const ChannelRow& row : channels)
            w = std::max(w, static_cast<int>(row.block.size()));
        char line[200];
        std::snprintf(line, sizeof line, "%-*s  %-6s %6s %5s %8s %8s\n", w, "block", "name", "bound", "mult", "formula",
                      "oracle");
        os << line;
        for (const ChannelRow& row : channels) {
            std::snprintf(line, sizeof line, "%-*s  %-6s %6d %5d %8ld %8ld\n", w, row.block.c_str(), row.name.c_str(),
                          row.bound, row.multiplicity, row.formula, row.oracle);
            os << line;
        }
    }
    for (const std::string& s : orbitSpace)
        os << "orbits    " << s << "\n";
    os << "total     " << totalFormula;
    if (totalOracle)
        os << "   (oracle " << *totalOracle << ")";
    os << "\n";
    for (const std::string& n : notes)
        os << "note      " << n << "\n";
    return os.str();
}

}  // namespace supercoh
