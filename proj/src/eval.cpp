#include "causal/eval.hpp"

#include <algorithm>
#include <set>

#include "causal/util.hpp"

namespace causal {

double f_measure(const std::vector<int>& predicted, const std::vector<int>& truth) {
    const std::set<int> p(predicted.begin(), predicted.end());
    const std::set<int> t(truth.begin(), truth.end());
    if (p.empty() && t.empty()) return 1.0;
    int hits = 0;
    for (int v : p) hits += t.count(v);
    return 2.0 * hits / static_cast<double>(p.size() + t.size());
}

namespace {

std::vector<int> truth_indices(const BinaryDataset& data, int row) {
    std::vector<int> on;
    for (int c = 0; c < data.cols(); ++c) {
        if (data.at(row, c)) on.push_back(c);
    }
    return on;
}

}  // namespace

EvalReport evaluate_with_model(const CausalGraph& g, const CptSet& cpts,
                               const std::vector<BeliefVector>& base_beliefs,
                               const BinaryDataset& truth, const EvalConfig& config) {
    require_same_schema(g.schema(), truth.schema(), "evaluate");
    if (static_cast<int>(base_beliefs.size()) != truth.rows()) {
        throw InvalidArgument("need one belief vector per truth record");
    }

    const int instances = truth.rows();
    const int tau = config.refine.tau;

    EvalReport report;
    report.config = config;
    report.discovered_edges = g.edge_count();
    report.per_instance_f1.assign(tau + 1, std::vector<double>(instances, 0.0));

    parallel_for(instances, [&](int i) {
        require_same_schema(base_beliefs[i].schema(), truth.schema(), "evaluate");
        const std::vector<int> truth_set = truth_indices(truth, i);
        const RefineTrace trace = refine(base_beliefs[i], g, cpts, config.refine);
        for (int t = 0; t <= tau; ++t) {
            const std::vector<int> predicted = select_labels(trace.at(t), config.bandwidth);
            report.per_instance_f1[t][i] = f_measure(predicted, truth_set);
        }
    });

    report.mean_f1.resize(tau + 1);
    for (int t = 0; t <= tau; ++t) {
        double sum = 0.0;
        for (double f1 : report.per_instance_f1[t]) sum += f1;
        report.mean_f1[t] = sum / static_cast<double>(instances);
    }
    return report;
}

EvalReport run_experiment(const BinaryDataset& train, const BinaryDataset& test,
                          const std::vector<BeliefVector>& base_beliefs, const EvalConfig& config) {
    require_same_schema(train.schema(), test.schema(), "run_experiment");
    const TierKnowledge knowledge = TierKnowledge::tiered(train.schema(), config.allow_tier_skip);
    const DiscoveryResult discovery =
        discover(train, knowledge, config.alpha, config.max_cond, /*strict=*/true);
    const CptSet cpts = fit_cpts(train, discovery.graph, config.smoothing);
    EvalReport report = evaluate_with_model(discovery.graph, cpts, base_beliefs, test, config);
    report.discovery_stats = discovery.stats;
    return report;
}

double BenchmarkResult::best_mean_f1() const {
    return *std::max_element(mean_f1.begin(), mean_f1.end());
}

BenchmarkResult run_benchmark(const SyntheticSpec& base_spec, int n_seeds, const EvalConfig& config) {
    if (n_seeds < 1) throw InvalidArgument("need at least one seed");

    BenchmarkResult result;
    for (int k = 0; k < n_seeds; ++k) {
        SyntheticSpec spec = base_spec;
        spec.seed = base_spec.seed + static_cast<std::uint64_t>(k);
        const SyntheticData world = generate(spec);
        result.seeds.push_back(spec.seed);
        result.reports.push_back(
            run_experiment(world.train, world.test, world.base_beliefs, config));
    }

    const std::size_t points = result.reports.front().mean_f1.size();
    result.mean_f1.assign(points, 0.0);
    for (const EvalReport& report : result.reports) {
        for (std::size_t t = 0; t < points; ++t) result.mean_f1[t] += report.mean_f1[t];
    }
    for (double& value : result.mean_f1) value /= static_cast<double>(n_seeds);
    return result;
}

}  // namespace causal
