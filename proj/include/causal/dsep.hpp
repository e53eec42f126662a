#pragma once

#include <vector>

#include "causal/ci.hpp"
#include "causal/graph.hpp"

namespace causal {

// True iff x and y are d-separated by z in the DAG g (reachability over
// active trails).
bool d_separated(const CausalGraph& g, int x, int y, const std::vector<int>& z);

// Oracle independence test backed by a ground-truth DAG.
class DSeparationTest : public IndependenceTest {
public:
    explicit DSeparationTest(const CausalGraph& truth);

    CiResult test(int x, int y, const std::vector<int>& z) const override;

private:
    const CausalGraph* truth_;
};

}  // namespace causal
