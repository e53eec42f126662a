#include "causal/pc.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>

#include "causal/util.hpp"

namespace causal {

TierKnowledge::TierKnowledge(SchemaPtr schema, bool enabled, bool allow_tier_skip)
    : schema_(std::move(schema)), enabled_(enabled), allow_tier_skip_(allow_tier_skip) {
    if (schema_ == nullptr) throw InvalidArgument("tier knowledge requires a schema");
}

TierKnowledge TierKnowledge::none(SchemaPtr schema) {
    return TierKnowledge(std::move(schema), false, true);
}

TierKnowledge TierKnowledge::tiered(SchemaPtr schema, bool allow_tier_skip) {
    return TierKnowledge(std::move(schema), true, allow_tier_skip);
}

bool TierKnowledge::edge_allowed(int x, int y) const {
    if (!enabled_) return true;
    const Tier tx = schema_->tier(x);
    const Tier ty = schema_->tier(y);
    if (tx == ty) return false;
    if (!allow_tier_skip_) {
        const int gap = std::abs(static_cast<int>(tx) - static_cast<int>(ty));
        if (gap > 1) return false;
    }
    return true;
}

bool TierKnowledge::direction_forbidden(int from, int to) const {
    if (!enabled_) return false;
    if (!edge_allowed(from, to)) return true;
    // cross-tier edges must point toward the higher tier
    return schema_->tier(from) > schema_->tier(to);
}

std::optional<std::pair<int, int>> TierKnowledge::required_orientation(int x, int y) const {
    if (!enabled_ || !edge_allowed(x, y)) return std::nullopt;
    if (schema_->tier(x) < schema_->tier(y)) return std::make_pair(x, y);
    return std::make_pair(y, x);
}

bool TierKnowledge::has_legal_pairs() const {
    const int n = schema_->size();
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            if (edge_allowed(x, y)) return true;
        }
    }
    return false;
}

bool TierKnowledge::satisfied_by(const CausalGraph& g) const {
    if (!enabled_) return true;
    for (const Edge& e : g.edges()) {
        if (!edge_allowed(e.from, e.to)) return false;
        if (e.oriented && direction_forbidden(e.from, e.to)) return false;
    }
    return true;
}

void SepsetMap::set(int x, int y, std::vector<int> sepset) {
    std::sort(sepset.begin(), sepset.end());
    map_[std::minmax(x, y)] = std::move(sepset);
}

const std::vector<int>* SepsetMap::find(int x, int y) const {
    const auto it = map_.find(std::minmax(x, y));
    return it == map_.end() ? nullptr : &it->second;
}

bool SepsetMap::contains(int x, int y, int v) const {
    const std::vector<int>* s = find(x, y);
    return s != nullptr && std::binary_search(s->begin(), s->end(), v);
}

namespace {

// lexicographic size-k subsets of a sorted pool
class SubsetIterator {
public:
    SubsetIterator(const std::vector<int>& pool, int k) : pool_(pool), k_(k) {
        done_ = k_ > static_cast<int>(pool_.size());
        picks_.resize(k_);
        for (int i = 0; i < k_; ++i) picks_[i] = i;
    }

    bool done() const { return done_; }

    std::vector<int> current() const {
        std::vector<int> subset(k_);
        for (int i = 0; i < k_; ++i) subset[i] = pool_[picks_[i]];
        return subset;
    }

    void advance() {
        const int n = static_cast<int>(pool_.size());
        int i = k_ - 1;
        while (i >= 0 && picks_[i] == n - k_ + i) --i;
        if (i < 0) {
            done_ = true;
            return;
        }
        ++picks_[i];
        for (int j = i + 1; j < k_; ++j) picks_[j] = picks_[j - 1] + 1;
    }

private:
    const std::vector<int>& pool_;
    int k_;
    std::vector<int> picks_;
    bool done_ = false;
};

bool subset_of_sorted(const std::vector<int>& subset, const std::vector<int>& sorted_pool) {
    return std::includes(sorted_pool.begin(), sorted_pool.end(), subset.begin(), subset.end());
}

std::vector<int> adjacency_minus(const std::vector<std::vector<int>>& frozen, int node, int excluded) {
    std::vector<int> pool;
    pool.reserve(frozen[node].size());
    for (int v : frozen[node]) {
        if (v != excluded) pool.push_back(v);
    }
    return pool;
}

struct EdgeRemoval {
    bool remove = false;
    std::vector<int> sepset;
};

}  // namespace

SkeletonResult learn_skeleton(const TierKnowledge& knowledge, const IndependenceTest& test,
                              int max_cond) {
    if (max_cond < 0) throw InvalidArgument("max_cond must be >= 0");
    const SchemaPtr& schema = knowledge.schema();
    const int n = schema->size();

    if (knowledge.enabled() && !knowledge.has_legal_pairs()) {
        throw DegenerateSchema("tier constraints admit no edges for this schema");
    }

    CausalGraph g(schema);
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            if (knowledge.edge_allowed(x, y)) g.add_undirected(x, y);
        }
    }

    SepsetMap sepsets;
    std::atomic<long> ci_tests{0};
    const long base_skips = test.low_power_skips();

    for (int depth = 0; depth <= max_cond; ++depth) {
        // stable variant: candidate pools frozen for the whole depth
        std::vector<std::vector<int>> frozen(n);
        for (int v = 0; v < n; ++v) frozen[v].assign(g.adjacent(v).begin(), g.adjacent(v).end());

        std::vector<Edge> edges = g.edges();
        if (edges.empty()) break;

        bool any_pool_large_enough = false;
        for (const Edge& e : edges) {
            if (static_cast<int>(frozen[e.from].size()) - 1 >= depth ||
                static_cast<int>(frozen[e.to].size()) - 1 >= depth) {
                any_pool_large_enough = true;
                break;
            }
        }
        if (!any_pool_large_enough) break;

        std::vector<EdgeRemoval> removals(edges.size());
        parallel_for(static_cast<int>(edges.size()), [&](int idx) {
            const int x = edges[idx].from;
            const int y = edges[idx].to;
            const std::vector<int> pool_x = adjacency_minus(frozen, x, y);
            const std::vector<int> pool_y = adjacency_minus(frozen, y, x);

            const auto try_pool = [&](const std::vector<int>& pool, bool dedupe_against_x) {
                for (SubsetIterator it(pool, depth); !it.done(); it.advance()) {
                    const std::vector<int> subset = it.current();
                    // the x-side enumeration already covered this set
                    if (dedupe_against_x && subset_of_sorted(subset, pool_x)) continue;
                    ci_tests.fetch_add(1, std::memory_order_relaxed);
                    const CiResult result = test.test(x, y, subset);
                    if (result.independent) {
                        removals[idx].remove = true;
                        removals[idx].sepset = subset;
                        return true;
                    }
                }
                return false;
            };

            if (!try_pool(pool_x, false)) try_pool(pool_y, true);
        });

        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (removals[i].remove) {
                g.remove_edge(edges[i].from, edges[i].to);
                sepsets.set(edges[i].from, edges[i].to, std::move(removals[i].sepset));
            }
        }
    }

    SkeletonResult result{std::move(g), std::move(sepsets), {}};
    result.stats.ci_tests = ci_tests.load();
    result.stats.low_power_skips = test.low_power_skips() - base_skips;
    return result;
}

namespace {

// Orient from->to if possible; an opposing direction is a conflict, a
// knowledge-forbidden direction is skipped the same way.
void try_orient(CausalGraph& g, int from, int to, const TierKnowledge& knowledge,
                DiscoveryStats* stats) {
    if (g.has_directed(from, to)) return;
    if (g.has_directed(to, from) || knowledge.direction_forbidden(from, to)) {
        if (stats != nullptr) ++stats->collider_conflicts;
        return;
    }
    if (g.has_undirected(from, to)) g.orient(from, to);
}

}  // namespace

void meek_closure(CausalGraph& g, const TierKnowledge& knowledge, DiscoveryStats* stats) {
    const int n = g.node_count();
    const auto orient_if_allowed = [&](int from, int to) {
        if (knowledge.direction_forbidden(from, to)) {
            if (stats != nullptr) ++stats->collider_conflicts;
            return false;
        }
        g.orient(from, to);
        return true;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int b = 0; b < n; ++b) {
            // copy: orientation mutates the neighbor set under iteration
            const std::vector<int> undirected(g.undirected_neighbors(b).begin(),
                                              g.undirected_neighbors(b).end());
            for (int c : undirected) {
                if (!g.has_undirected(b, c)) continue;

                // R1: a -> b - c with a, c nonadjacent orients b -> c
                bool oriented = false;
                for (int a : g.parents(b)) {
                    if (a != c && !g.is_adjacent(a, c)) {
                        oriented = orient_if_allowed(b, c);
                        break;
                    }
                }
                if (oriented) {
                    changed = true;
                    continue;
                }

                // R2: b -> k -> c with b - c orients b -> c
                for (int k : g.children(b)) {
                    if (g.has_directed(k, c)) {
                        oriented = orient_if_allowed(b, c);
                        break;
                    }
                }
                if (oriented) {
                    changed = true;
                    continue;
                }

                // R3: b - c, b - d1, b - d2, d1 -> c, d2 -> c, d1, d2
                // nonadjacent orients b -> c
                const auto& b_neighbors = g.undirected_neighbors(b);
                std::vector<int> spokes;
                for (int d : b_neighbors) {
                    if (d != c && g.has_directed(d, c)) spokes.push_back(d);
                }
                for (std::size_t i = 0; i < spokes.size() && !oriented; ++i) {
                    for (std::size_t j = i + 1; j < spokes.size() && !oriented; ++j) {
                        if (!g.is_adjacent(spokes[i], spokes[j])) {
                            oriented = orient_if_allowed(b, c);
                        }
                    }
                }
                if (oriented) {
                    changed = true;
                    continue;
                }

                // R4: b - c, chain k1 -> k2 -> c, b adjacent to both k1 and
                // k2, k1, c nonadjacent orients b -> c
                for (int k2 : g.parents(c)) {
                    if (k2 == b || !g.is_adjacent(b, k2)) continue;
                    for (int k1 : g.parents(k2)) {
                        if (k1 == b || k1 == c) continue;
                        if (g.is_adjacent(b, k1) && !g.is_adjacent(k1, c)) {
                            oriented = orient_if_allowed(b, c);
                            break;
                        }
                    }
                    if (oriented) break;
                }
                if (oriented) changed = true;
            }
        }
    }
}

CausalGraph orient_edges(const CausalGraph& skeleton, const SepsetMap& sepsets,
                         const TierKnowledge& knowledge, bool strict, DiscoveryStats* stats) {
    CausalGraph g = skeleton;
    const int n = g.node_count();

    // 1) background knowledge fixes every cross-tier edge
    if (knowledge.enabled()) {
        for (const Edge& e : g.edges()) {
            if (e.oriented) continue;
            if (const auto required = knowledge.required_orientation(e.from, e.to)) {
                g.orient(required->first, required->second);
            }
        }
    }

    // 2) unshielded colliders x -> z <- y when z is outside sepset(x, y)
    for (int z = 0; z < n; ++z) {
        const std::vector<int> adj(g.adjacent(z).begin(), g.adjacent(z).end());
        for (std::size_t i = 0; i < adj.size(); ++i) {
            for (std::size_t j = i + 1; j < adj.size(); ++j) {
                const int x = adj[i];
                const int y = adj[j];
                if (g.is_adjacent(x, y)) continue;
                const std::vector<int>* sepset = sepsets.find(x, y);
                if (sepset == nullptr) continue;  // pair was never separated by a test
                if (std::binary_search(sepset->begin(), sepset->end(), z)) continue;
                try_orient(g, x, z, knowledge, stats);
                try_orient(g, y, z, knowledge, stats);
            }
        }
    }

    // 3) Meek propagation
    meek_closure(g, knowledge, stats);

    if (!g.directed_topological_order().has_value()) {
        throw CycleIntroduced("orientation produced a directed cycle");
    }
    if (strict && !g.fully_oriented()) {
        int remaining = 0;
        for (const Edge& e : g.edges()) {
            if (!e.oriented) ++remaining;
        }
        throw NotFullyOriented(std::to_string(remaining) + " edge(s) could not be oriented");
    }
    return g;
}

DiscoveryResult discover(const TierKnowledge& knowledge, const IndependenceTest& test,
                         int max_cond, bool strict) {
    SkeletonResult skeleton = learn_skeleton(knowledge, test, max_cond);
    CausalGraph oriented =
        orient_edges(skeleton.graph, skeleton.sepsets, knowledge, strict, &skeleton.stats);
    return {std::move(oriented), std::move(skeleton.sepsets), skeleton.stats};
}

DiscoveryResult discover(const BinaryDataset& data, const TierKnowledge& knowledge, double alpha,
                         int max_cond, bool strict) {
    require_same_schema(data.schema(), knowledge.schema(), "discover");
    CiOptions options;
    options.alpha = alpha;
    const GSquaredTest test(data, options);
    return discover(knowledge, test, max_cond, strict);
}

}  // namespace causal
