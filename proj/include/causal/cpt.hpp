#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "causal/graph.hpp"
#include "causal/types.hpp"

namespace causal {

// P(v=1 | parent configuration). Parents are sorted by canonical index and
// bit i of the configuration mask is the value of the i-th parent.
struct NodeCpt {
    std::vector<int> parents;
    std::vector<double> p1;  // size 1 << parents.size()
};

// Pairwise tables for one directed edge u -> v, indexed by the conditioning
// value. forward_p1[b] = P(v=1|u=b), backward_p1[b] = P(u=1|v=b). Marginals
// come from the same smoothed 2x2 counts, so Bayes inversion is exact.
struct EdgeCpt {
    double forward_p1[2];
    double backward_p1[2];
    double from_marginal_p1;
    double to_marginal_p1;
};

class CptSet {
public:
    CptSet(SchemaPtr schema, std::vector<NodeCpt> nodes, std::map<std::pair<int, int>, EdgeCpt> edges);

    const SchemaPtr& schema() const { return schema_; }
    const NodeCpt& node(int v) const { return nodes_[v]; }
    double node_p1(int v, std::uint32_t parent_mask) const { return nodes_[v].p1[parent_mask]; }

    bool has_edge(int from, int to) const { return edges_.count({from, to}) > 0; }
    const EdgeCpt& edge(int from, int to) const;
    const std::map<std::pair<int, int>, EdgeCpt>& edges() const { return edges_; }

private:
    SchemaPtr schema_;
    std::vector<NodeCpt> nodes_;
    std::map<std::pair<int, int>, EdgeCpt> edges_;
};

// Maximum-likelihood tables with additive smoothing:
//   P(v=1|config) = (count(v=1, config) + s) / (count(config) + 2s).
// A configuration never seen (count 0, s = 0) falls back to 0.5.
CptSet fit_cpts(const BinaryDataset& data, const CausalGraph& g, double smoothing = 1.0);

}  // namespace causal
