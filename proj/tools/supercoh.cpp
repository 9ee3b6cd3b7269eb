#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "supercoh/classify.hpp"
#include "supercoh/decomposition.hpp"
#include "supercoh/orbit.hpp"
#include "supercoh/verify.hpp"

using namespace supercoh;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kHypothesis = 1, kInconsistent = 2, kUsage = 3 };

constexpr double kMemberTol = 1e-6;

const char* kSynopsis =
    "usage: supercoh <command> [options]\n"
    "commands: dims | classify | sigma | reduce | orbit-test | verify\n"
    "options:  --twists L1,L2,...  --fourfold L  --couples L,LP  --distinct L1,L2,L3,L\n"
    "          --cover {2,3}  --window N  --tol X  --seed N  --budget N  --format {json,table}\n"
    "env:      SUPERCOH_FORMAT sets the default format\n";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::vector<int> twists;
    std::optional<int> fourfold;
    std::vector<int> couples;
    std::vector<int> distinct;
    int cover = 2;
    std::optional<int> window;
    double tol = 1e-9;
    std::uint64_t seed = 1;
    int budget = 32;
    std::string format = "json";

    json toJson() const
    {
        json j{{"command", command}, {"twists", twists},  {"cover", cover},   {"tol", tol},
               {"seed", seed},       {"budget", budget},  {"format", format}};
        j["fourfold"] = fourfold ? json(*fourfold) : json(nullptr);
        j["couples"] = couples;
        j["distinct"] = distinct;
        j["window"] = window ? json(*window) : json(nullptr);
        return j;
    }
    Cover chartCover() const { return cover == 3 ? Cover::threeChart() : Cover::twoChart(); }
    Window windowFor(const BundleSpec& spec, int k) const
    {
        return window ? Window::symmetric(*window) : adequateWindow(spec, k);
    }
    // twist vector from whichever input flag was given
    std::vector<int> bundle() const
    {
        if (!twists.empty())
            return twists;
        if (fourfold)
            return std::vector<int>(4, *fourfold);
        if (couples.size() == 2)
            return {couples[0], couples[0], couples[1], couples[1]};
        if (distinct.size() == 4)
            return distinct;
        throw UsageError(command + " needs --twists, --fourfold, --couples or --distinct");
    }
};

struct Result {
    json body;
    int status = kOk;
    std::string table;  // preformatted table, else rendered from body
};

double round12(double x) { return std::round(x * 1e12) / 1e12; }

json strings(const std::vector<Scalar>& v)
{
    json a = json::array();
    for (const Scalar& s : v)
        a.push_back(s.str());
    return a;
}

json monomialLabels(const std::vector<CanonicalMonomial>& ms)
{
    json a = json::array();
    for (const CanonicalMonomial& m : ms)
        a.push_back(m.key.str() + " z^" + std::to_string(m.exponent));
    return a;
}

BundleSpec sortedSpec(std::vector<int> l)
{
    std::sort(l.begin(), l.end());
    return BundleSpec(l);
}

// ---------------------------------------------------------------- commands

Result runDims(const RunConfig& cfg)
{
    BundleSpec spec = sortedSpec(cfg.bundle());
    if (spec.m() < 1)
        throw UsageError("empty twist vector");
    Result r;
    json degrees = json::array();
    long total = 0;
    bool consistent = true;
    std::optional<bool> hyp;
    json checks = json::array();
    if (spec.m() >= 3) {
        hyp = true;
        for (const HypothesisCheck& c : classificationHypotheses(spec)) {
            checks.push_back({{"name", c.name}, {"expression", c.expression}, {"holds", c.holds}});
            hyp = *hyp && c.holds;
        }
    }
    for (int k = 1; 2 * k <= spec.m(); ++k) {
        Window w = cfg.windowFor(spec, k);
        long formula = static_cast<long>(splittingH1Dimension(spec, k));
        long split = static_cast<long>(h1DimensionOracle(channelTwists(spec, k), cfg.chartCover(), w));
        CohomologyDims sheaf = derCohomologyOracle(spec, k, w);
        total += formula;
        if (split != formula || (hyp.value_or(false) && static_cast<long>(sheaf.h1) != formula))
            consistent = false;
        if (k == 1 && sheaf.h0 != 0)
            hyp = false;
        degrees.push_back({{"degree", 2 * k},
                           {"channels", channelsOfDegree(spec, k).size()},
                           {"formula", formula},
                           {"splitOracle", split},
                           {"sheafH0", sheaf.h0},
                           {"sheafH1", sheaf.h1}});
    }
    r.body = {{"twists", spec.twists()}, {"hypothesisChecks", checks}, {"perDegree", degrees},
              {"total", total},          {"consistent", consistent}};
    r.body["hypothesesHold"] = hyp ? json(*hyp) : json(nullptr);
    r.status = !consistent ? kInconsistent : (hyp && !*hyp) ? kHypothesis : kOk;
    std::ostringstream os;
    os << "twists    " << spec.str() << "\n";
    for (const auto& c : checks)
        os << (c["holds"].get<bool>() ? "  ok      " : "  FAILS   ") << c["name"].get<std::string>() << "   ("
           << c["expression"].get<std::string>() << ")\n";
    char line[160];
    std::snprintf(line, sizeof line, "%-7s %9s %8s %8s %8s %8s\n", "degree", "channels", "formula", "split", "h0",
                  "h1");
    os << line;
    for (const auto& d : degrees) {
        std::snprintf(line, sizeof line, "%-7d %9zu %8ld %8ld %8zu %8zu\n", d["degree"].get<int>(),
                      d["channels"].get<std::size_t>(), d["formula"].get<long>(), d["splitOracle"].get<long>(),
                      d["sheafH0"].get<std::size_t>(), d["sheafH1"].get<std::size_t>());
        os << line;
    }
    os << "total     " << total << "\n";
    os << "consistent " << (consistent ? "yes" : "NO") << "\n";
    r.table = os.str();
    return r;
}

Result runClassify(const RunConfig& cfg)
{
    ClassificationReport rep;
    if (cfg.fourfold)
        rep = classifyFourfold(*cfg.fourfold);
    else if (cfg.couples.size() == 2)
        rep = classifyTwoCouples(cfg.couples[0], cfg.couples[1]);
    else if (cfg.distinct.size() == 4)
        rep = classifyDistinctLine({cfg.distinct[0], cfg.distinct[1], cfg.distinct[2]}, cfg.distinct[3]);
    else if (!cfg.twists.empty())
        rep = classifyTwists(cfg.twists);
    else
        throw UsageError("classify needs --twists, --fourfold, --couples L,LP or --distinct L1,L2,L3,L");
    Result r{rep.toJson(), kOk, rep.toTable()};
    r.status = !rep.consistent ? kInconsistent : !rep.hypothesesHold ? kHypothesis : kOk;
    return r;
}

GroupCochain sampleCocycle(std::mt19937_64& rng, const BundleSpec& spec, const RunConfig& cfg)
{
    GroupCochain alpha = randomGroupCocycle(rng, spec, cfg.chartCover());
    if (cfg.cover == 3)
        alpha = GroupCochain{toTwoChart(alpha.logs)};
    return alpha;
}

std::optional<CompatibleD> buildD(const BundleSpec& spec, json& body)
{
    try {
        return CompatibleD::build(spec);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::GlobalDer2Nonzero)
            throw;
        body["globalDer2Nonzero"] = true;
        body["notes"] = json::array({"H0(Der_2) != 0: no compatible map; partial report"});
        return std::nullopt;
    }
}

Result runSigma(const RunConfig& cfg)
{
    BundleSpec spec = sortedSpec(cfg.bundle());
    Result r;
    r.body["twists"] = spec.twists();
    std::optional<CompatibleD> D = buildD(spec, r.body);
    if (!D) {
        r.status = kHypothesis;
        return r;
    }
    std::mt19937_64 rng(cfg.seed);
    GroupCochain alpha = sampleCocycle(rng, spec, cfg);
    SigmaResult s = sigmaD(alpha, *D);
    const int shifts = 3;
    bool invariant = true;
    Cover two = Cover::twoChart();
    for (int n = 0; n < shifts; ++n) {
        GroupCochain v{randomLevel0(rng, spec, two, 1, Window{-3, 3}) + randomLevel0(rng, spec, two, 2, Window{-3, 3})};
        SigmaResult t = sigmaD(groupCompose(alpha, v), *D);
        invariant = invariant && t.der2 == s.der2 && t.der4 == s.der4;
    }
    r.body["cocycle"] = alpha.logs.at({0, 1}).str();
    r.body["der2"] = {{"monomials", monomialLabels(canonicalMonomials(spec, 1))}, {"coords", strings(s.der2)}};
    r.body["der4"] = {{"monomials", monomialLabels(canonicalMonomials(spec, 2))}, {"coords", strings(s.der4)}};
    r.body["chi2"] = s.chi2.str();
    r.body["chi4"] = s.chi4.str();
    r.body["invarianceShifts"] = shifts;
    r.body["invariant"] = invariant;
    r.status = invariant ? kOk : kInconsistent;
    return r;
}

json slotJson(const ClassSlot& s)
{
    return {{"name", s.name}, {"monomials", monomialLabels(s.monomials)}, {"coords", strings(s.coords)}, {"zero", s.isZero()}};
}

Result runReduce(const RunConfig& cfg)
{
    BundleSpec E = sortedSpec(cfg.bundle());
    if (E.m() < 4 || E.m() > 5)
        throw UsageError("reduce needs rank 4 or 5 (F = first three summands)");
    SplitSpec split(E, MultiIndex{1, 2, 3});
    Result r;
    r.body["split"] = split.str();
    std::mt19937_64 rng(cfg.seed);
    GroupCochain alpha = randomGroupCocycle(rng, E, cfg.chartCover());
    GroupCochain red = reduceToF(alpha, split);
    json reduced;
    reduced["isCocycle"] = isGroupCocycle(red);
    json entries = json::object();
    for (const Simplex& s : simplices(red.logs.cover(), 1))
        entries[std::to_string(s[0]) + std::to_string(s[1])] = red.logs.at(s).str();
    reduced["logs"] = entries;
    r.body["alphaF"] = reduced;

    ElevenSplit el = elevenSplit(alpha, split);
    json comps = json::array();
    for (const auto& [name, c] : el.components())
        comps.push_back({{"name", name}, {"zero", c->isZero()}});
    bool reconstructs = el.reconstruct() == asOperators(alpha);
    r.body["eleven"] = {{"components", comps},
                        {"reconstructs", reconstructs},
                        {"residualZero", el.residual.isZero()},
                        {"u2IsCocycle", el.u2IsCocycle},
                        {"groupCocycle", el.groupCocycle},
                        {"correctionIsCoboundary", el.correctionIsCoboundary}};
    bool ok = reconstructs && el.residual.isZero() && isGroupCocycle(red);
    r.status = ok ? kOk : kInconsistent;

    if (split.rankFprime() == 1) {
        std::optional<CompatibleD> D = buildD(E, r.body);
        if (!D) {
            r.status = ok ? kHypothesis : kInconsistent;
            return r;
        }
        GroupCochain two = cfg.cover == 3 ? GroupCochain{toTwoChart(alpha.logs)} : alpha;
        LineBundleForm lb = lineBundleForm(two, split, *D);
        json slots = json::array();
        for (const ClassSlot* s : lb.slots())
            slots.push_back(slotJson(*s));
        r.body["lineBundleForm"] = {
            {"slots", slots}, {"u2IsCocycle", lb.u2IsCocycle}, {"correctionIsCoboundary", lb.correctionIsCoboundary}};
    }
    return r;
}

json complexMatrix(const CMatrix& M)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            row.push_back({round12(M(i, j).real()), round12(M(i, j).imag())});
        rows.push_back(row);
    }
    return rows;
}

json searchJson(const OrbitSearch& s)
{
    return {{"distance", round12(s.distance)}, {"lowerBound", round12(s.lowerBound)},
            {"restartsUsed", s.restartsUsed},  {"restartSeeds", s.restartSeeds},
            {"exhausted", s.exhausted},        {"member", s.distance <= kMemberTol}};
}

Result runOrbitTest(const RunConfig& cfg)
{
    OrbitPoint x;
    if (cfg.fourfold)
        x = fourfoldPoint(*cfg.fourfold);
    else if (cfg.couples.size() == 2)
        x = twoCouplesPoint(cfg.couples[0], cfg.couples[1]);
    else if (cfg.twists.size() == 3)
        x = orbitCasePoint(orbitCase(sortedSpec(cfg.twists)));
    else
        throw UsageError("orbit-test needs --fourfold L, --couples L,LP or a rank-3 --twists");
    std::mt19937_64 rng(cfg.seed);
    x.coords = randomCoords(rng, x.dimension());
    OrbitPoint planted = act(haarElement(rng, x.groupDims), x);
    OrbitPoint stranger = x;
    stranger.coords = randomCoords(rng, x.dimension());

    OrbitSearch hit = orbitDistance(x, planted, cfg.budget, cfg.seed, cfg.tol);
    OrbitSearch miss = orbitDistance(x, stranger, std::min(cfg.budget, 4), cfg.seed + 1, cfg.tol);
    double gap = invariantGap(x, stranger);

    // X^dagger X of each summand block: invariant under every unitary action on rows
    json grams = json::array();
    for (std::size_t s = 0; s < x.summands.size(); ++s) {
        CMatrix X = x.block(s);
        grams.push_back({{"summand", x.summands[s].label}, {"gram", complexMatrix(X.adjoint() * X)}});
    }
    Result r;
    r.body = {{"descriptor", x.descriptor()},
              {"dimension", x.dimension()},
              {"memberTolerance", kMemberTol},
              {"planted", searchJson(hit)},
              {"negative", searchJson(miss)},
              {"negativeGap", round12(gap)},
              {"certificates", grams}};
    bool misreported = miss.distance <= kMemberTol && gap > kMemberTol;
    r.status = misreported ? kInconsistent : kOk;
    return r;
}

Result runVerify(const RunConfig& cfg)
{
    std::uint64_t s = cfg.seed;
    BundleSpec spec4({-3, -2, -2, -2}), spec5({-3, -3, -2, -2, -2});
    std::vector<CheckResult> checks{
        checkLineBundleH1(-6, 3),
        checkRank3Formula(-4, -1),
        checkExpLog(s, 10, {spec4, spec5}),
        checkGroupLaw(s + 1, 6, {spec4, spec5}),
        checkCorrectionShift(s + 2, 4, spec4),
        checkCocycleCorrection(s + 3, 4, spec4),
        checkSigmaInvariance(s + 4, 6, spec4),
        checkEquivariance(s + 5, 6, spec4),
        checkReduction(s + 6, 4, BundleSpec({-3, -2, -2}), BundleSpec({-4})),
        checkElevenSplit(s + 7, 4, BundleSpec({-3, -2, -2}), BundleSpec({-3})),
        checkDetAction(s + 8, 10, {BundleSpec({-2, -2, -2, -2}), BundleSpec({-4, -3, -3, -3})}),
        checkH0Gate(s + 9, 10, {0, 0, 0, 0}),
    };
    Result r;
    json a = json::array();
    bool all = true;
    for (const CheckResult& c : checks) {
        a.push_back(c.toJson());
        all = all && c.passed();
    }
    r.body = {{"checks", a}, {"allPassed", all}};
    r.status = all ? kOk : kInconsistent;
    return r;
}

// ---------------------------------------------------------------- output

std::string scalarText(const json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

void renderTable(std::ostream& os, const json& v, const std::string& indent)
{
    for (const auto& [key, val] : v.items()) {
        if (val.is_object()) {
            os << indent << key << "\n";
            renderTable(os, val, indent + "  ");
        } else if (val.is_array() && !val.empty() && val.front().is_object()) {
            os << indent << key << "\n";
            for (const auto& item : val) {
                std::string line;
                for (const auto& [k, x] : item.items())
                    line += k + "=" + (x.is_primitive() ? scalarText(x) : x.dump()) + "  ";
                os << indent << "  " << line << "\n";
            }
        } else if (val.is_array()) {
            std::string line;
            for (const auto& x : val)
                line += (line.empty() ? "" : ", ") + (x.is_primitive() ? scalarText(x) : x.dump());
            os << indent << key << "  [" << line << "]\n";
        } else {
            os << indent << key << "  " << scalarText(val) << "\n";
        }
    }
}

const char* statusName(int status)
{
    switch (status) {
    case kOk: return "ok";
    case kHypothesis: return "hypothesis-violation";
    default: return "inconsistent";
    }
}

void emit(const RunConfig& cfg, const Result& r)
{
    if (cfg.format == "json") {
        json out{{"config", cfg.toJson()}, {"status", statusName(r.status)}, {"result", r.body}};
        std::cout << out.dump(2) << "\n";
        return;
    }
    std::cout << "# config " << cfg.toJson().dump() << "\n";
    std::cout << "# status " << statusName(r.status) << "\n";
    if (!r.table.empty())
        std::cout << r.table;
    else
        renderTable(std::cout, r.body, "");
}

}  // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    if (const char* env = std::getenv("SUPERCOH_FORMAT"))
        cfg.format = env;

    CLI::App app{"Cohomology and classification of split supermanifolds over P^1"};
    app.usage(kSynopsis);
    app.require_subcommand(1);
    app.fallthrough();
    int fourfold = 0;
    app.add_option("--twists", cfg.twists, "twist vector")->delimiter(',');
    auto* ff = app.add_option("--fourfold", fourfold, "four equal twists");
    app.add_option("--couples", cfg.couples, "l,lp with l < lp")->delimiter(',')->expected(2);
    app.add_option("--distinct", cfg.distinct, "l1,l2,l3,l")->delimiter(',')->expected(4);
    app.add_option("--cover", cfg.cover, "2 or 3 charts")->check(CLI::IsMember({2, 3}));
    auto* win = app.add_option("--window", cfg.window, "truncation window half-width")->check(CLI::PositiveNumber);
    (void)win;
    app.add_option("--tol", cfg.tol, "float tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--budget", cfg.budget, "restart budget")->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "json or table");
    for (const char* name : {"dims", "classify", "sigma", "reduce", "orbit-test", "verify"})
        app.add_subcommand(name)->callback([&cfg, name] { cfg.command = name; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n" << kSynopsis;
        return kUsage;
    }
    if (ff->count() > 0)
        cfg.fourfold = fourfold;
    if (cfg.format != "json" && cfg.format != "table") {
        std::cerr << "error: unknown format " << cfg.format << "\n" << kSynopsis;
        return kUsage;
    }

    try {
        Result r;
        if (cfg.command == "dims")
            r = runDims(cfg);
        else if (cfg.command == "classify")
            r = runClassify(cfg);
        else if (cfg.command == "sigma")
            r = runSigma(cfg);
        else if (cfg.command == "reduce")
            r = runReduce(cfg);
        else if (cfg.command == "orbit-test")
            r = runOrbitTest(cfg);
        else
            r = runVerify(cfg);
        emit(cfg, r);
        return r.status;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n" << kSynopsis;
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n" << kSynopsis;
        return kUsage;
    }
}
