#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "supercoh/derivation.hpp"

namespace supercoh {

struct HypothesisCheck {
    std::string name;
    std::string expression;
    bool holds = false;
};

// One cohomology summand O(twist)^multiplicity; formula from the closed-form
// exponent bound, oracle from the coboundary rank of each member channel.
struct ChannelRow {
    std::string block;
    std::string name;
    int bound = 0;  // summand (1/z) C[1/z]_{<= bound}
    int multiplicity = 1;
    long formula = 0;
    long oracle = 0;
    std::vector<DerKey> keys;
    std::string slot;  // lineBundleForm slot for distinct-line-bundle reports
};

struct BlockSummary {
    std::string name;
    std::string action;
    long dim = 0;
};

struct ClassificationReport {
    std::string caseLabel;
    std::vector<int> input;
    BundleSpec spec;
    std::vector<HypothesisCheck> checks;
    bool hypothesesHold = false;
    bool structuresMayExist = true;
    std::vector<ChannelRow> channels;
    std::vector<BlockSummary> blocks;
    std::vector<std::string> orbitSpace;
    long totalFormula = 0;
    std::optional<long> totalOracle;  // h^1 of Der_2 plus Der_4 on the true sheaf
    std::optional<long> h0Der2;
    bool consistent = true;
    std::vector<std::string> notes;

    nlohmann::json toJson() const;
    std::string toTable() const;
};

// Both classification inequalities on the sorted twists.
std::vector<HypothesisCheck> classificationHypotheses(const BundleSpec& spec);

ClassificationReport classifyRank3(const std::vector<int>& l);
ClassificationReport classifyFourfold(int l);
ClassificationReport classifyTwoCouples(int l, int lp);
ClassificationReport classifyDistinctLine(const std::vector<int>& l123, int l);

// Dispatch on the shape of a rank-3 or rank-4 twist vector.
ClassificationReport classifyTwists(const std::vector<int>& twists);

}  // namespace supercoh
