#include "causal/cpt.hpp"

#include <algorithm>

#include "causal/util.hpp"

namespace causal {

CptSet::CptSet(SchemaPtr schema, std::vector<NodeCpt> nodes,
               std::map<std::pair<int, int>, EdgeCpt> edges)
    : schema_(std::move(schema)), nodes_(std::move(nodes)), edges_(std::move(edges)) {
    if (schema_ == nullptr) throw InvalidArgument("CPT set requires a schema");
    if (nodes_.size() != static_cast<std::size_t>(schema_->size())) {
        throw InvalidArgument("CPT set must cover every schema node");
    }
}

const EdgeCpt& CptSet::edge(int from, int to) const {
    const auto it = edges_.find({from, to});
    if (it == edges_.end()) {
        throw InvalidArgument("no pairwise table for edge " + schema_->name(from) + " -> " +
                              schema_->name(to));
    }
    return it->second;
}

namespace {

double smoothed(double count_on, double count_total, double s) {
    const double denom = count_total + 2.0 * s;
    if (denom == 0.0) return 0.5;  // unseen configuration, uniform prior mean
    return (count_on + s) / denom;
}

}  // namespace

CptSet fit_cpts(const BinaryDataset& data, const CausalGraph& g, double smoothing) {
    require_same_schema(data.schema(), g.schema(), "fit_cpts");
    if (!g.is_dag()) throw InvalidArgument("fit_cpts requires a DAG");
    if (smoothing < 0.0) throw InvalidArgument("smoothing must be >= 0");

    const int n = g.node_count();
    const int rows = data.rows();

    std::vector<NodeCpt> nodes(n);
    parallel_for(n, [&](int v) {
        NodeCpt& cpt = nodes[v];
        cpt.parents.assign(g.parents(v).begin(), g.parents(v).end());
        const std::size_t configs = std::size_t{1} << cpt.parents.size();
        std::vector<double> count_on(configs, 0.0);
        std::vector<double> count_total(configs, 0.0);
        for (int r = 0; r < rows; ++r) {
            std::uint32_t mask = 0;
            for (std::size_t i = 0; i < cpt.parents.size(); ++i) {
                mask |= static_cast<std::uint32_t>(data.at(r, cpt.parents[i])) << i;
            }
            count_total[mask] += 1.0;
            count_on[mask] += data.at(r, v);
        }
        cpt.p1.resize(configs);
        for (std::size_t c = 0; c < configs; ++c) {
            cpt.p1[c] = smoothed(count_on[c], count_total[c], smoothing);
        }
    });

    std::map<std::pair<int, int>, EdgeCpt> edges;
    for (const Edge& e : g.edges()) {
        const int u = e.from;
        const int v = e.to;
        double joint[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
        for (int r = 0; r < rows; ++r) joint[data.at(r, u)][data.at(r, v)] += 1.0;

        EdgeCpt table;
        for (int b = 0; b < 2; ++b) {
            table.forward_p1[b] = smoothed(joint[b][1], joint[b][0] + joint[b][1], smoothing);
            table.backward_p1[b] = smoothed(joint[1][b], joint[0][b] + joint[1][b], smoothing);
        }
        const double total = static_cast<double>(rows) + 4.0 * smoothing;
        table.from_marginal_p1 = (joint[1][0] + joint[1][1] + 2.0 * smoothing) / total;
        table.to_marginal_p1 = (joint[0][1] + joint[1][1] + 2.0 * smoothing) / total;
        edges.emplace(std::make_pair(u, v), table);
    }

    return CptSet(data.schema(), std::move(nodes), std::move(edges));
}

}  // namespace causal
