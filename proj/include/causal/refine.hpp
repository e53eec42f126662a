#pragma once

#include <vector>

#include "causal/cpt.hpp"
#include "causal/graph.hpp"
#include "causal/types.hpp"

namespace causal {

struct RefineConfig {
    double epsilon = 0.01;  // damping rate in [0, 1]
    int tau = 20;           // iteration count
    // restrict message flow to parent -> child only
    bool children_only = false;
    // Jacobi-style sweeps: source beliefs read from the previous iteration's
    // snapshot instead of the in-place vector
    bool synchronous = false;
};

// Belief vectors for iterations 0..tau; entry 0 is the clipped input.
struct RefineTrace {
    std::vector<BeliefVector> iterations;

    const BeliefVector& at(int t) const { return iterations[t]; }
    const BeliefVector& final_beliefs() const { return iterations.back(); }
    int tau() const { return static_cast<int>(iterations.size()) - 1; }
};

// Damped neighbor updates over the DAG: sweeping nodes in topological order,
// each node x pushes a message to every neighbor x' (children via the
// forward edge table, parents via the Bayes-inverted backward table) and the
// neighbor's belief moves by a factor epsilon toward the message.
RefineTrace refine(const BeliefVector& init, const CausalGraph& g, const CptSet& cpts,
                   const RefineConfig& config);

// 1-D mean shift (flat kernel, radius = bandwidth) over the belief values;
// returns the canonical indices in the cluster with the highest mode. Ties on
// mode value go to the larger cluster, then to the lower canonical index.
std::vector<int> select_labels(const BeliefVector& beliefs, double bandwidth);

}  // namespace causal
