#include "causal/synth.hpp"

#include <algorithm>
#include <string>

#include "causal/pc.hpp"

namespace causal {

namespace {

SchemaPtr tiered_schema(int n_causes, int n_reasons, int n_symptoms) {
    std::vector<Label> labels;
    labels.reserve(n_causes + n_reasons + n_symptoms);
    for (int i = 0; i < n_causes; ++i) labels.push_back({"C" + std::to_string(i + 1), Tier::Cause});
    for (int i = 0; i < n_reasons; ++i) labels.push_back({"R" + std::to_string(i + 1), Tier::Reason});
    for (int i = 0; i < n_symptoms; ++i) labels.push_back({"S" + std::to_string(i + 1), Tier::Symptom});
    return make_schema(std::move(labels));
}

void validate(const SyntheticSpec& spec) {
    if (spec.n_causes < 0 || spec.n_reasons < 0 || spec.n_symptoms < 0) {
        throw InfeasibleSpec("tier sizes must be >= 0");
    }
    if (spec.n_causes + spec.n_reasons + spec.n_symptoms < 2) {
        throw InfeasibleSpec("need at least two labels");
    }
    if (spec.max_in_degree < 0) throw InfeasibleSpec("max_in_degree must be >= 0");
    if (!(spec.edge_prob >= 0.0 && spec.edge_prob <= 1.0)) {
        throw InfeasibleSpec("edge_prob must lie in [0,1]");
    }
    if (!(spec.cpt_strength > 0.0 && spec.cpt_strength <= 0.5)) {
        throw InfeasibleSpec("cpt_strength must lie in (0, 0.5]");
    }
    if (spec.n_train < 1 || spec.n_test < 1) throw InfeasibleSpec("need at least one record per split");
    if (!(spec.noise.flip_rate >= 0.0 && spec.noise.flip_rate < 0.5)) {
        throw InfeasibleSpec("flip_rate must lie in [0, 0.5)");
    }
    if (spec.noise.jitter < 0.0) throw InfeasibleSpec("jitter must be >= 0");
}

double draw_conditional(Rng& rng, bool high_side, double strength) {
    if (high_side) return rng.uniform(0.5 + strength, 1.0 - kBeliefClip);
    return rng.uniform(kBeliefClip, 0.5 - strength);
}

// Exact pairwise tables by enumerating the factorized joint; tractable for
// the benchmark scales this generator targets.
std::map<std::pair<int, int>, EdgeCpt> exact_edge_tables(const CausalGraph& g,
                                                         const std::vector<NodeCpt>& nodes) {
    const int n = g.node_count();
    const std::vector<Edge> edges = g.edges();
    std::vector<double> joint11(edges.size(), 0.0);
    std::vector<double> joint10(edges.size(), 0.0);
    std::vector<double> joint01(edges.size(), 0.0);
    std::vector<double> marginal(n, 0.0);

    const std::size_t states = std::size_t{1} << n;
    for (std::size_t state = 0; state < states; ++state) {
        double prob = 1.0;
        for (int v = 0; v < n && prob > 0.0; ++v) {
            std::uint32_t mask = 0;
            for (std::size_t i = 0; i < nodes[v].parents.size(); ++i) {
                mask |= static_cast<std::uint32_t>((state >> nodes[v].parents[i]) & 1) << i;
            }
            const double p1 = nodes[v].p1[mask];
            prob *= ((state >> v) & 1) ? p1 : 1.0 - p1;
        }
        if (prob == 0.0) continue;
        for (int v = 0; v < n; ++v) {
            if ((state >> v) & 1) marginal[v] += prob;
        }
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const bool u_on = (state >> edges[e].from) & 1;
            const bool v_on = (state >> edges[e].to) & 1;
            if (u_on && v_on) {
                joint11[e] += prob;
            } else if (u_on) {
                joint10[e] += prob;
            } else if (v_on) {
                joint01[e] += prob;
            }
        }
    }

    std::map<std::pair<int, int>, EdgeCpt> tables;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const double pu = marginal[edges[e].from];
        const double pv = marginal[edges[e].to];
        EdgeCpt table;
        table.forward_p1[1] = pu > 0.0 ? joint11[e] / pu : 0.5;
        table.forward_p1[0] = pu < 1.0 ? joint01[e] / (1.0 - pu) : 0.5;
        table.backward_p1[1] = pv > 0.0 ? joint11[e] / pv : 0.5;
        table.backward_p1[0] = pv < 1.0 ? joint10[e] / (1.0 - pv) : 0.5;
        table.from_marginal_p1 = pu;
        table.to_marginal_p1 = pv;
        tables.emplace(std::make_pair(edges[e].from, edges[e].to), table);
    }
    return tables;
}

std::map<std::pair<int, int>, EdgeCpt> sampled_edge_tables(const CausalGraph& g,
                                                           const CptSet& node_only, Rng& rng) {
    const BinaryDataset sample = sample_dataset(g, node_only, 200000, rng);
    const CptSet fitted = fit_cpts(sample, g, 0.5);
    return fitted.edges();
}

}  // namespace

BinaryDataset sample_dataset(const CausalGraph& g, const CptSet& cpts, int n_rows, Rng& rng) {
    require_same_schema(g.schema(), cpts.schema(), "sample_dataset");
    const auto order = g.directed_topological_order();
    if (!order.has_value() || !g.fully_oriented()) {
        throw InvalidArgument("sampling requires a DAG");
    }
    if (n_rows < 1) throw InvalidArgument("need at least one row");

    const int n = g.node_count();
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(n_rows) * n, 0);
    for (int r = 0; r < n_rows; ++r) {
        std::uint8_t* row = &cells[static_cast<std::size_t>(r) * n];
        for (int v : *order) {
            const NodeCpt& cpt = cpts.node(v);
            std::uint32_t mask = 0;
            for (std::size_t i = 0; i < cpt.parents.size(); ++i) {
                mask |= static_cast<std::uint32_t>(row[cpt.parents[i]]) << i;
            }
            row[v] = rng.bernoulli(cpt.p1[mask]) ? 1 : 0;
        }
    }
    return BinaryDataset(g.schema(), std::move(cells), n_rows);
}

SyntheticData generate(const SyntheticSpec& spec) {
    validate(spec);
    SchemaPtr schema = tiered_schema(spec.n_causes, spec.n_reasons, spec.n_symptoms);
    const TierKnowledge knowledge = TierKnowledge::tiered(schema, spec.allow_tier_skip);
    if (!knowledge.has_legal_pairs()) {
        throw InfeasibleSpec("tier sizes admit no edges");
    }

    Rng rng(spec.seed);
    const int n = schema->size();

    // edges: candidate pairs in canonical order, each drawn independently,
    // then capped by the child's in-degree
    CausalGraph graph(schema);
    std::vector<int> in_degree(n, 0);
    for (int v = 0; v < n; ++v) {
        for (int u = 0; u < n; ++u) {
            if (u == v || schema->tier(u) >= schema->tier(v)) continue;
            if (!knowledge.edge_allowed(u, v)) continue;
            const bool wanted = rng.bernoulli(spec.edge_prob);
            if (wanted && in_degree[v] < spec.max_in_degree) {
                graph.add_directed(u, v);
                ++in_degree[v];
            }
        }
    }

    // node tables: one polarity per parent, then one magnitude per
    // configuration; the high side is taken whenever some parent is active
    std::vector<NodeCpt> node_tables(n);
    for (int v = 0; v < n; ++v) {
        NodeCpt& cpt = node_tables[v];
        cpt.parents.assign(graph.parents(v).begin(), graph.parents(v).end());
        const std::size_t k = cpt.parents.size();
        std::vector<bool> polarity(k);
        for (std::size_t i = 0; i < k; ++i) polarity[i] = rng.bernoulli(0.5);

        const std::size_t configs = std::size_t{1} << k;
        cpt.p1.resize(configs);
        for (std::size_t mask = 0; mask < configs; ++mask) {
            bool high_side;
            if (k == 0) {
                high_side = rng.bernoulli(0.5);
            } else {
                high_side = false;
                for (std::size_t i = 0; i < k; ++i) {
                    if ((((mask >> i) & 1) != 0) == polarity[i]) {
                        high_side = true;
                        break;
                    }
                }
            }
            cpt.p1[mask] = draw_conditional(rng, high_side, spec.cpt_strength);
        }
    }

    std::map<std::pair<int, int>, EdgeCpt> edge_tables;
    if (n <= 20) {
        edge_tables = exact_edge_tables(graph, node_tables);
    } else {
        const CptSet node_only(schema, node_tables, {});
        edge_tables = sampled_edge_tables(graph, node_only, rng);
    }
    CptSet truth_cpts(schema, std::move(node_tables), std::move(edge_tables));

    BinaryDataset train = sample_dataset(graph, truth_cpts, spec.n_train, rng);
    BinaryDataset test = sample_dataset(graph, truth_cpts, spec.n_test, rng);

    // simulated upstream marginals: the predictor reports the wrong side of
    // each label with rate eta, places confidence 1 - eta on the side it
    // reports, and adds Gaussian jitter
    std::vector<BeliefVector> beliefs;
    beliefs.reserve(spec.n_test);
    for (int r = 0; r < spec.n_test; ++r) {
        std::vector<double> p(n);
        for (int v = 0; v < n; ++v) {
            const bool flipped = rng.bernoulli(spec.noise.flip_rate);
            const double reported = (test.at(r, v) != 0) != flipped ? 1.0 : 0.0;
            const double base = reported * (1.0 - spec.noise.flip_rate) +
                                (1.0 - reported) * spec.noise.flip_rate;
            p[v] = clip_belief(base + spec.noise.jitter * rng.normal());
        }
        beliefs.emplace_back(schema, std::move(p));
    }

    return SyntheticData{std::move(schema),  std::move(graph), std::move(truth_cpts),
                         std::move(train),   std::move(test),  std::move(beliefs)};
}

}  // namespace causal
