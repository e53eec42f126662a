#pragma once

#include <cstdint>
#include <vector>

#include "causal/cpt.hpp"
#include "causal/graph.hpp"
#include "causal/types.hpp"
#include "causal/util.hpp"

namespace causal {

struct NoiseSpec {
    double flip_rate = 0.2;  // eta in [0, 0.5)
    double jitter = 0.05;    // sigma >= 0
};

// Everything the generator does is a deterministic function of seed.
struct SyntheticSpec {
    int n_causes = 3;
    int n_reasons = 4;
    int n_symptoms = 6;
    int max_in_degree = 2;
    double edge_prob = 0.5;
    // conditionals are drawn outside [0.5 - strength, 0.5 + strength]
    double cpt_strength = 0.3;
    int n_train = 2000;
    int n_test = 200;
    NoiseSpec noise;
    std::uint64_t seed = 1;
    bool allow_tier_skip = false;
};

struct SyntheticData {
    SchemaPtr schema;
    CausalGraph truth_graph;
    CptSet truth_cpts;
    BinaryDataset train;
    BinaryDataset test;
    // simulated upstream predictor marginals, one vector per test record
    std::vector<BeliefVector> base_beliefs;
};

// Random tiered DAG + CPTs + ancestral samples + noisy base beliefs.
// Per-node conditionals take the high side of the band when any parent is in
// its active state (per-parent polarity drawn once), so every edge carries a
// monotone marginal effect; magnitudes are drawn per configuration.
SyntheticData generate(const SyntheticSpec& spec);

// Ancestral sampling from explicit node tables; g must be a DAG.
BinaryDataset sample_dataset(const CausalGraph& g, const CptSet& cpts, int n_rows, Rng& rng);

}  // namespace causal
