#include "causal/refine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "causal/errors.hpp"

namespace causal {

namespace {

struct Message {
    int target;
    // conditional table P(target=1 | source), indexed by source value
    double p1_given_source[2];
};

double clamp_message(double p) { return std::min(1.0 - kBeliefClip, std::max(kBeliefClip, p)); }

}  // namespace

RefineTrace refine(const BeliefVector& init, const CausalGraph& g, const CptSet& cpts,
                   const RefineConfig& config) {
    require_same_schema(init.schema(), g.schema(), "refine");
    require_same_schema(init.schema(), cpts.schema(), "refine");
    if (!(config.epsilon >= 0.0 && config.epsilon <= 1.0)) {
        throw InvalidArgument("epsilon must lie in [0,1]");
    }
    if (config.tau < 0) throw InvalidArgument("tau must be >= 0");
    const auto order = g.directed_topological_order();
    if (!order.has_value() || !g.fully_oriented()) {
        throw InvalidArgument("refine requires a DAG");
    }

    const int n = g.node_count();

    // per-node outgoing messages in canonical neighbor order
    std::vector<std::vector<Message>> outgoing(n);
    for (int x = 0; x < n; ++x) {
        std::vector<int> targets(g.children(x).begin(), g.children(x).end());
        if (!config.children_only) {
            targets.insert(targets.end(), g.parents(x).begin(), g.parents(x).end());
            std::sort(targets.begin(), targets.end());
        }
        for (int t : targets) {
            Message msg;
            msg.target = t;
            if (g.has_directed(x, t)) {
                const EdgeCpt& table = cpts.edge(x, t);
                msg.p1_given_source[0] = table.forward_p1[0];
                msg.p1_given_source[1] = table.forward_p1[1];
            } else {
                const EdgeCpt& table = cpts.edge(t, x);
                msg.p1_given_source[0] = table.backward_p1[0];
                msg.p1_given_source[1] = table.backward_p1[1];
            }
            outgoing[x].push_back(msg);
        }
    }

    std::vector<double> current = init.clipped().values();
    RefineTrace trace;
    trace.iterations.reserve(config.tau + 1);
    trace.iterations.emplace_back(init.schema(), current);

    std::vector<double> snapshot;
    for (int t = 1; t <= config.tau; ++t) {
        if (config.synchronous) snapshot = current;
        const std::vector<double>& source = config.synchronous ? snapshot : current;
        for (int x : *order) {
            const double px1 = source[x];
            const double px0 = 1.0 - px1;
            for (const Message& msg : outgoing[x]) {
                const double message =
                    clamp_message(px1 * msg.p1_given_source[1] + px0 * msg.p1_given_source[0]);
                current[msg.target] =
                    config.epsilon * message + (1.0 - config.epsilon) * current[msg.target];
            }
        }
        trace.iterations.emplace_back(init.schema(), current);
    }
    return trace;
}

std::vector<int> select_labels(const BeliefVector& beliefs, double bandwidth) {
    if (!(bandwidth > 0.0)) throw InvalidArgument("bandwidth must be > 0");
    const std::vector<double>& xs = beliefs.values();
    const int n = static_cast<int>(xs.size());

    // flat-kernel mean shift: each point climbs to its mode
    std::vector<double> modes(n);
    for (int i = 0; i < n; ++i) {
        double y = xs[i];
        for (int step = 0; step < 500; ++step) {
            double sum = 0.0;
            int count = 0;
            for (int j = 0; j < n; ++j) {
                if (std::abs(xs[j] - y) <= bandwidth) {
                    sum += xs[j];
                    ++count;
                }
            }
            const double shifted = sum / count;  // window always contains xs[i]
            const double movement = std::abs(shifted - y);
            y = shifted;
            if (movement < 1e-6) break;
        }
        modes[i] = y;
    }

    // group modes closer than bandwidth/2, pick the cluster with the highest
    // mode; ties favor the larger cluster, then the lower canonical index
    std::vector<int> by_mode(n);
    std::iota(by_mode.begin(), by_mode.end(), 0);
    std::sort(by_mode.begin(), by_mode.end(), [&](int a, int b) {
        return modes[a] != modes[b] ? modes[a] < modes[b] : a < b;
    });

    std::vector<std::vector<int>> clusters;
    for (int idx : by_mode) {
        if (!clusters.empty() && std::abs(modes[idx] - modes[clusters.back().back()]) < bandwidth / 2.0) {
            clusters.back().push_back(idx);
        } else {
            clusters.push_back({idx});
        }
    }

    int best = 0;
    double best_mode = 0.0;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        double mean_mode = 0.0;
        for (int idx : clusters[c]) mean_mode += modes[idx];
        mean_mode /= static_cast<double>(clusters[c].size());
        const int min_index = *std::min_element(clusters[c].begin(), clusters[c].end());
        const int best_min_index = *std::min_element(clusters[best].begin(), clusters[best].end());
        const bool wins =
            c == 0 || mean_mode > best_mode ||
            (mean_mode == best_mode && (clusters[c].size() > clusters[best].size() ||
                                        (clusters[c].size() == clusters[best].size() &&
                                         min_index < best_min_index)));
        if (wins) {
            best = static_cast<int>(c);
            best_mode = mean_mode;
        }
    }

    std::vector<int> selected = clusters[best];
    std::sort(selected.begin(), selected.end());
    return selected;
}

}  // namespace causal
