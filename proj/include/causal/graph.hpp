#pragma once

#include <optional>
#include <set>
#include <vector>

#include "causal/types.hpp"

namespace causal {

struct Edge {
    int from;
    int to;
    bool oriented;
};

// Mixed graph over schema labels: at most one edge per node pair, each either
// directed or undirected. Discovery starts undirected and orients in place.
class CausalGraph {
public:
    explicit CausalGraph(SchemaPtr schema);

    int node_count() const { return static_cast<int>(adjacent_.size()); }
    const SchemaPtr& schema() const { return schema_; }

    bool is_adjacent(int x, int y) const { return adjacent_[x].count(y) > 0; }
    bool has_directed(int from, int to) const { return children_[from].count(to) > 0; }
    bool has_undirected(int x, int y) const { return neighbors_[x].count(y) > 0; }

    void add_undirected(int x, int y);
    void add_directed(int from, int to);
    void remove_edge(int x, int y);

    // turn the undirected edge from-to into from -> to
    void orient(int from, int to);

    const std::set<int>& parents(int v) const { return parents_[v]; }
    const std::set<int>& children(int v) const { return children_[v]; }
    const std::set<int>& undirected_neighbors(int v) const { return neighbors_[v]; }
    const std::set<int>& adjacent(int v) const { return adjacent_[v]; }

    int edge_count() const { return edge_count_; }
    bool fully_oriented() const;

    // edges in canonical order: by min endpoint, then max; directed edges
    // report their true direction
    std::vector<Edge> edges() const;

    // Kahn order over directed edges only (undirected edges ignored);
    // min-index tie-breaking keeps it deterministic. nullopt on a cycle.
    std::optional<std::vector<int>> directed_topological_order() const;

    // all edges oriented and acyclic
    bool is_dag() const;

    bool operator==(const CausalGraph& other) const;

private:
    void check_node(int v) const;

    SchemaPtr schema_;
    std::vector<std::set<int>> parents_;
    std::vector<std::set<int>> children_;
    std::vector<std::set<int>> neighbors_;  // undirected
    std::vector<std::set<int>> adjacent_;
    int edge_count_ = 0;
};

// Edge insertions + deletions + orientation changes between two graphs over
// the same schema.
int structural_hamming_distance(const CausalGraph& a, const CausalGraph& b);

}  // namespace causal
