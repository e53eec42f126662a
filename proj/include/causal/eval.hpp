#pragma once

#include <cstdint>
#include <vector>

#include "causal/cpt.hpp"
#include "causal/graph.hpp"
#include "causal/pc.hpp"
#include "causal/refine.hpp"
#include "causal/synth.hpp"
#include "causal/types.hpp"

namespace causal {

// Set F1 = 2|P & T| / (|P| + |T|); 1 when both sets are empty.
// Inputs are index sets (sorted or not, duplicates ignored).
double f_measure(const std::vector<int>& predicted, const std::vector<int>& truth);

struct EvalConfig {
    double alpha = 0.05;
    int max_cond = 3;
    double smoothing = 1.0;
    double bandwidth = 0.1;
    bool allow_tier_skip = false;
    RefineConfig refine;
};

struct EvalReport {
    EvalConfig config;
    // per_instance_f1[t][i]: instance i scored at iteration t = 0..tau
    std::vector<std::vector<double>> per_instance_f1;
    std::vector<double> mean_f1;  // indexed by iteration
    DiscoveryStats discovery_stats;
    int discovered_edges = 0;

    double baseline_mean_f1() const { return mean_f1.front(); }
};

// Score fixed model + beliefs: refine each instance, select labels at every
// iteration, F1 against the truth rows. Instances run in parallel.
EvalReport evaluate_with_model(const CausalGraph& g, const CptSet& cpts,
                               const std::vector<BeliefVector>& base_beliefs,
                               const BinaryDataset& truth, const EvalConfig& config);

// Full pipeline: discover on train (tiered knowledge, strict), fit CPTs,
// then evaluate the refined beliefs against the test rows.
EvalReport run_experiment(const BinaryDataset& train, const BinaryDataset& test,
                          const std::vector<BeliefVector>& base_beliefs, const EvalConfig& config);

struct BenchmarkResult {
    std::vector<std::uint64_t> seeds;
    std::vector<EvalReport> reports;
    // mean over seeds per iteration
    std::vector<double> mean_f1;

    double baseline_mean_f1() const { return mean_f1.front(); }
    double best_mean_f1() const;
};

// Multi-split protocol: one synthetic world per seed (base_seed + k), each
// run through run_experiment, curves aggregated by arithmetic mean.
BenchmarkResult run_benchmark(const SyntheticSpec& base_spec, int n_seeds, const EvalConfig& config);

}  // namespace causal
