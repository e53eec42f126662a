#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "causal/ci.hpp"
#include "causal/graph.hpp"

namespace causal {

// Tiered background knowledge: edges are forbidden inside a tier, and an edge
// crossing tiers must point from the lower tier to the higher one. When
// allow_tier_skip is false, Cause-Symptom edges are forbidden outright.
class TierKnowledge {
public:
    static TierKnowledge none(SchemaPtr schema);
    static TierKnowledge tiered(SchemaPtr schema, bool allow_tier_skip = false);

    bool enabled() const { return enabled_; }
    bool allow_tier_skip() const { return allow_tier_skip_; }
    const SchemaPtr& schema() const { return schema_; }

    // some edge between x and y is admissible
    bool edge_allowed(int x, int y) const;
    bool direction_forbidden(int from, int to) const;
    // for an admissible cross-tier pair, the forced lower -> higher direction
    std::optional<std::pair<int, int>> required_orientation(int x, int y) const;

    // true when at least one admissible pair exists
    bool has_legal_pairs() const;

    // no forbidden adjacency, no forbidden direction anywhere in g
    bool satisfied_by(const CausalGraph& g) const;

private:
    TierKnowledge(SchemaPtr schema, bool enabled, bool allow_tier_skip);

    SchemaPtr schema_;
    bool enabled_;
    bool allow_tier_skip_;
};

// Conditioning set that removed each skeleton edge.
class SepsetMap {
public:
    void set(int x, int y, std::vector<int> sepset);
    const std::vector<int>* find(int x, int y) const;
    bool contains(int x, int y, int v) const;
    std::size_t size() const { return map_.size(); }

private:
    std::map<std::pair<int, int>, std::vector<int>> map_;
};

struct DiscoveryStats {
    long ci_tests = 0;
    long low_power_skips = 0;
    long collider_conflicts = 0;
};

struct SkeletonResult {
    CausalGraph graph;
    SepsetMap sepsets;
    DiscoveryStats stats;
};

// Stable-PC adjacency search: depth d = 0..max_cond, candidate conditioning
// sets drawn from adjacency frozen at the start of each depth, removals
// applied when the depth completes. Edge tests within a depth run in
// parallel under the CAUSAL_REFINE_THREADS cap.
SkeletonResult learn_skeleton(const TierKnowledge& knowledge, const IndependenceTest& test,
                              int max_cond);

// Knowledge orientations, then sepset colliders, then Meek rules 1-4 to
// closure. strict demands a fully oriented result; a directed cycle is an
// error in either mode. Conflicting collider demands are skipped and counted.
CausalGraph orient_edges(const CausalGraph& skeleton, const SepsetMap& sepsets,
                         const TierKnowledge& knowledge, bool strict,
                         DiscoveryStats* stats = nullptr);

// Meek rules 1-4 applied to fixpoint, exposed for direct testing.
void meek_closure(CausalGraph& g, const TierKnowledge& knowledge, DiscoveryStats* stats = nullptr);

struct DiscoveryResult {
    CausalGraph graph;
    SepsetMap sepsets;
    DiscoveryStats stats;
};

DiscoveryResult discover(const TierKnowledge& knowledge, const IndependenceTest& test,
                         int max_cond, bool strict);

// Convenience entry running a G-squared test over the data at level alpha.
DiscoveryResult discover(const BinaryDataset& data, const TierKnowledge& knowledge, double alpha,
                         int max_cond, bool strict);

}  // namespace causal
