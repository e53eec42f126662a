#include "causal/dsep.hpp"

#include <utility>

#include "causal/errors.hpp"

namespace causal {

namespace {

std::vector<char> ancestors_of(const CausalGraph& g, const std::vector<int>& z) {
    std::vector<char> mark(g.node_count(), 0);
    std::vector<int> stack(z.begin(), z.end());
    for (int v : stack) mark[v] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int p : g.parents(v)) {
            if (!mark[p]) {
                mark[p] = 1;
                stack.push_back(p);
            }
        }
    }
    return mark;
}

}  // namespace

// Reachability over active trails: traverse (node, arrived-from-child?)
// states; a collider stays open only when it is in Z or has a descendant in
// Z, a non-collider stays open only when it is outside Z.
bool d_separated(const CausalGraph& g, int x, int y, const std::vector<int>& z) {
    if (!g.is_dag()) throw InvalidArgument("d-separation requires a DAG");
    const int n = g.node_count();
    if (x < 0 || x >= n || y < 0 || y >= n || x == y) {
        throw InvalidArgument("d-separation: bad variable indices");
    }

    std::vector<char> in_z(n, 0);
    for (int v : z) {
        if (v < 0 || v >= n) throw InvalidArgument("d-separation: conditioning index out of range");
        if (v == x || v == y) throw InvalidArgument("d-separation: x/y may not appear in z");
        in_z[v] = 1;
    }
    const std::vector<char> anc_z = ancestors_of(g, z);

    // state: node * 2 + direction, direction 0 = entered via edge into node
    // (from a parent), 1 = entered via edge out of node (from a child)
    std::vector<char> visited(static_cast<std::size_t>(n) * 2, 0);
    std::vector<std::pair<int, int>> stack;
    // x behaves like a trail source reachable from both directions
    stack.push_back({x, 0});
    stack.push_back({x, 1});
    visited[x * 2] = visited[x * 2 + 1] = 1;

    while (!stack.empty()) {
        const auto [v, dir] = stack.back();
        stack.pop_back();
        if (v == y) return false;

        const auto push = [&](int next, int next_dir) {
            if (!visited[next * 2 + next_dir]) {
                visited[next * 2 + next_dir] = 1;
                stack.push_back({next, next_dir});
            }
        };

        if (dir == 0) {
            // arrived from a parent: v is a collider or a chain midpoint
            if (in_z[v] || anc_z[v]) {
                for (int p : g.parents(v)) push(p, 1);  // collider opens, go back up
            }
            if (!in_z[v]) {
                for (int c : g.children(v)) push(c, 0);  // chain continues down
            }
        } else {
            // arrived from a child: v is a chain midpoint or a fork
            if (!in_z[v]) {
                for (int p : g.parents(v)) push(p, 1);
                for (int c : g.children(v)) push(c, 0);
            }
        }
    }
    return true;
}

DSeparationTest::DSeparationTest(const CausalGraph& truth) : truth_(&truth) {
    if (!truth.is_dag()) throw InvalidArgument("d-separation oracle requires a DAG");
}

CiResult DSeparationTest::test(int x, int y, const std::vector<int>& z) const {
    CiResult result;
    result.independent = d_separated(*truth_, x, y, z);
    result.p_value = result.independent ? 1.0 : 0.0;
    result.statistic = result.independent ? 0.0 : 1.0;
    result.dof = 0;
    return result;
}

}  // namespace causal
