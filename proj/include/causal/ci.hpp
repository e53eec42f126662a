#pragma once

#include <atomic>
#include <vector>

#include "causal/types.hpp"

namespace causal {

struct CiResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    bool independent = true;
    // test skipped as unpowered (fewer than min_samples_per_dof records per dof)
    bool low_power = false;
};

enum class CiFamily { GSquared, PearsonChiSquared };

struct CiOptions {
    double alpha = 0.05;
    CiFamily family = CiFamily::GSquared;
    // skip threshold: independent=true whenever N < min_samples_per_dof * dof
    int min_samples_per_dof = 10;
};

// Likelihood-ratio (or Pearson) test of X _||_ Y | Z on binary columns.
// Strata are the 2^|z| conditioning configurations; empty strata are dropped
// and each non-empty stratum contributes one degree of freedom.
CiResult g_squared_test(const BinaryDataset& data, int x, int y, const std::vector<int>& z,
                        const CiOptions& options = {});

// Upper tail of the chi-squared distribution.
double chi_squared_survival(double statistic, int dof);

// Seam the skeleton search queries; lets tests swap the data-driven test for
// a d-separation oracle.
class IndependenceTest {
public:
    virtual ~IndependenceTest() = default;
    virtual CiResult test(int x, int y, const std::vector<int>& z) const = 0;
    virtual long low_power_skips() const { return 0; }
};

class GSquaredTest : public IndependenceTest {
public:
    GSquaredTest(const BinaryDataset& data, CiOptions options = {})
        : data_(&data), options_(options) {}

    CiResult test(int x, int y, const std::vector<int>& z) const override;
    long low_power_skips() const override { return skips_.load(); }

private:
    const BinaryDataset* data_;
    CiOptions options_;
    mutable std::atomic<long> skips_{0};
};

}  // namespace causal
