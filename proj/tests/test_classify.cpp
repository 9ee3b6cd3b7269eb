#include "doctest.h"

#include "supercoh/classify.hpp"
#include "supercoh/decomposition.hpp"

using namespace supercoh;

namespace {

std::vector<long> blockDims(const ClassificationReport& r)
{
    std::vector<long> out;
    for (const BlockSummary& b : r.blocks)
        out.push_back(b.dim);
    return out;
}

}  // namespace

TEST_CASE("rank 3")
{
    ClassificationReport a = classifyRank3({-2, -2, -2});
    CHECK(a.consistent);
    CHECK(a.hypothesesHold);
    CHECK(a.totalFormula == 12);
    CHECK(a.totalOracle == 12);
    CHECK(a.orbitSpace == std::vector<std::string>{"V_3^3"});

    ClassificationReport b = classifyRank3({-2, -3, -2});
    CHECK(b.spec == BundleSpec({-3, -2, -2}));
    CHECK(b.totalFormula == 16);
    CHECK(b.totalOracle == 16);
    CHECK(b.orbitSpace == std::vector<std::string>{"V_2^5", "V_1^3"});

    ClassificationReport c = classifyRank3({-4, -3, -2});
    CHECK(c.consistent);
    CHECK(c.orbitSpace.size() == 3);

    ClassificationReport bad = classifyRank3({0, 0, 0});
    CHECK(!bad.hypothesesHold);
    CHECK(!bad.checks[0].holds);
    CHECK(bad.channels.empty());
    CHECK(bad.h0Der2.value_or(0) > 0);

    for (int l1 = -5; l1 <= -1; ++l1)
        for (int l2 = l1; l2 <= -1; ++l2)
            for (int l3 = l2; l3 <= -1; ++l3) {
                ClassificationReport r = classifyRank3({l1, l2, l3});
                if (r.hypothesesHold) {
                    CHECK(r.consistent);
                    CHECK(r.totalOracle == r.totalFormula);
                }
            }
}

TEST_CASE("fourfold")
{
    ClassificationReport a = classifyFourfold(-2);
    CHECK(a.consistent);
    CHECK(blockDims(a) == std::vector<long>{6, 48, 5});
    CHECK(a.totalFormula == 59);
    CHECK(a.totalOracle == 59);
    ClassificationReport b = classifyFourfold(-3);
    CHECK(blockDims(b) == std::vector<long>{18, 80, 9});
    CHECK(b.totalOracle == 107);
    ClassificationReport c = classifyFourfold(-1);
    CHECK(!c.hypothesesHold);
    CHECK(c.channels.empty());
}

TEST_CASE("two couples")
{
    ClassificationReport a = classifyTwoCouples(-3, -2);
    CHECK(a.consistent);
    CHECK(blockDims(a) == std::vector<long>{3, 8, 1, 20, 32, 12, 7});
    CHECK(a.totalFormula == 83);
    CHECK(a.totalOracle == 83);
    std::vector<int> mult;
    for (const ChannelRow& r : a.channels)
        mult.push_back(r.multiplicity);
    CHECK(mult == std::vector<int>{1, 4, 1, 4, 8, 4, 1});

    ClassificationReport partial = classifyTwoCouples(-2, -1);
    CHECK(!partial.hypothesesHold);
    CHECK(partial.structuresMayExist);
    CHECK(partial.channels.empty());

    ClassificationReport none = classifyTwoCouples(0, 1);
    CHECK(!none.structuresMayExist);
    CHECK_THROWS_AS(classifyTwoCouples(-2, -3), Error);
}

TEST_CASE("distinct line bundle")
{
    ClassificationReport a = classifyDistinctLine({-3, -3, -3}, -5);
    CHECK(a.consistent);
    CHECK(a.hypothesesHold);
    CHECK(a.channels.size() == 20);
    CHECK(a.totalOracle == a.totalFormula);
    std::size_t keys = 0;
    for (const ChannelRow& r : a.channels)
        keys += r.keys.size();
    CHECK(keys == 23);
    // block -> lineBundleForm slot
    const std::map<std::string, std::string> expected{{"1", "alphaF"}, {"2", "u2L"}, {"3", "u2L"}, {"4", "alphaF"},
                                                      {"5", "uF"},     {"6", "alphaL"}, {"7", "u4L"}};
    SplitSpec split = SplitSpec::fromParts(BundleSpec({-3, -3, -3}), BundleSpec({-5}));
    for (const ChannelRow& r : a.channels) {
        CHECK(r.slot == expected.at(r.block));
        for (const DerKey& k : r.keys)
            CHECK(lineBundleChannel(k, split) == r.slot);
    }
    CHECK(a.blocks.size() == 7);

    ClassificationReport above = classifyDistinctLine({-4, -4, -3}, -2);
    CHECK(above.spec == BundleSpec({-4, -4, -3, -2}));
    CHECK(above.consistent);

    CHECK_THROWS_AS(classifyDistinctLine({-3, -2, -2}, -2), Error);
    CHECK_THROWS_AS(classifyDistinctLine({-4, -2, -2}, -3), Error);

    ClassificationReport gate = classifyDistinctLine({0, 1, 2}, -1);
    CHECK(!gate.structuresMayExist);
}

TEST_CASE("dispatch and output")
{
    CHECK(classifyTwists({-2, -2, -2, -2}).caseLabel == "fourfold");
    CHECK(classifyTwists({-2, -3, -2, -3}).caseLabel == "two-couples");
    CHECK(classifyTwists({-5, -3, -3, -3}).caseLabel == "distinct-line-bundle");
    CHECK(classifyTwists({-2, -2, -2}).caseLabel == "rank-3 l1=l2=l3");
    CHECK_THROWS_AS(classifyTwists({-2, -2}), Error);

    ClassificationReport r = classifyTwoCouples(-3, -2);
    nlohmann::json j = r.toJson();
    CHECK(j["totalDim"] == 83);
    CHECK(j["perChannelDims"].size() == 7);
    CHECK(j.dump() == classifyTwoCouples(-3, -2).toJson().dump());
    CHECK(r.toTable().find("total     83") != std::string::npos);
}
