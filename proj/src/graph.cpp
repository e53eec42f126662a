#include "causal/graph.hpp"

#include <algorithm>
#include <queue>

namespace causal {

CausalGraph::CausalGraph(SchemaPtr schema) : schema_(std::move(schema)) {
    if (schema_ == nullptr) throw InvalidArgument("graph requires a schema");
    const int n = schema_->size();
    parents_.resize(n);
    children_.resize(n);
    neighbors_.resize(n);
    adjacent_.resize(n);
}

void CausalGraph::check_node(int v) const {
    if (v < 0 || v >= node_count()) {
        throw InvalidArgument("node index " + std::to_string(v) + " out of range");
    }
}

void CausalGraph::add_undirected(int x, int y) {
    check_node(x);
    check_node(y);
    if (x == y) throw InvalidArgument("self-loops are not allowed");
    if (is_adjacent(x, y)) throw InvalidArgument("duplicate edge");
    neighbors_[x].insert(y);
    neighbors_[y].insert(x);
    adjacent_[x].insert(y);
    adjacent_[y].insert(x);
    ++edge_count_;
}

void CausalGraph::add_directed(int from, int to) {
    check_node(from);
    check_node(to);
    if (from == to) throw InvalidArgument("self-loops are not allowed");
    if (is_adjacent(from, to)) throw InvalidArgument("duplicate edge");
    children_[from].insert(to);
    parents_[to].insert(from);
    adjacent_[from].insert(to);
    adjacent_[to].insert(from);
    ++edge_count_;
}

void CausalGraph::remove_edge(int x, int y) {
    check_node(x);
    check_node(y);
    if (!is_adjacent(x, y)) throw InvalidArgument("no such edge");
    neighbors_[x].erase(y);
    neighbors_[y].erase(x);
    children_[x].erase(y);
    children_[y].erase(x);
    parents_[x].erase(y);
    parents_[y].erase(x);
    adjacent_[x].erase(y);
    adjacent_[y].erase(x);
    --edge_count_;
}

void CausalGraph::orient(int from, int to) {
    check_node(from);
    check_node(to);
    if (!has_undirected(from, to)) throw InvalidArgument("edge is not undirected");
    neighbors_[from].erase(to);
    neighbors_[to].erase(from);
    children_[from].insert(to);
    parents_[to].insert(from);
}

bool CausalGraph::fully_oriented() const {
    return std::all_of(neighbors_.begin(), neighbors_.end(),
                       [](const std::set<int>& s) { return s.empty(); });
}

std::vector<Edge> CausalGraph::edges() const {
    std::vector<Edge> result;
    result.reserve(edge_count_);
    for (int x = 0; x < node_count(); ++x) {
        for (int y : adjacent_[x]) {
            if (y < x) continue;
            if (has_undirected(x, y)) {
                result.push_back({x, y, false});
            } else if (has_directed(x, y)) {
                result.push_back({x, y, true});
            } else {
                result.push_back({y, x, true});
            }
        }
    }
    return result;
}

std::optional<std::vector<int>> CausalGraph::directed_topological_order() const {
    const int n = node_count();
    std::vector<int> in_degree(n, 0);
    for (int v = 0; v < n; ++v) in_degree[v] = static_cast<int>(parents_[v].size());

    // min-heap keeps the order canonical
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int v = 0; v < n; ++v) {
        if (in_degree[v] == 0) ready.push(v);
    }

    std::vector<int> order;
    order.reserve(n);
    while (!ready.empty()) {
        const int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (int c : children_[v]) {
            if (--in_degree[c] == 0) ready.push(c);
        }
    }
    if (static_cast<int>(order.size()) != n) return std::nullopt;
    return order;
}

bool CausalGraph::is_dag() const {
    return fully_oriented() && directed_topological_order().has_value();
}

bool CausalGraph::operator==(const CausalGraph& other) const {
    return *schema_ == *other.schema_ && parents_ == other.parents_ &&
           neighbors_ == other.neighbors_;
}

namespace {

// 0 = none, 1 = undirected, 2 = min->max, 3 = max->min
int pair_state(const CausalGraph& g, int x, int y) {
    if (!g.is_adjacent(x, y)) return 0;
    if (g.has_undirected(x, y)) return 1;
    return g.has_directed(x, y) ? 2 : 3;
}

}  // namespace

int structural_hamming_distance(const CausalGraph& a, const CausalGraph& b) {
    require_same_schema(a.schema(), b.schema(), "structural_hamming_distance");
    int distance = 0;
    const int n = a.node_count();
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            if (pair_state(a, x, y) != pair_state(b, x, y)) ++distance;
        }
    }
    return distance;
}

}  // namespace causal
