#include "causal/ci.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "causal/errors.hpp"

namespace causal {

double chi_squared_survival(double statistic, int dof) {
    if (dof <= 0) return 1.0;
    if (statistic <= 0.0) return 1.0;
    const boost::math::chi_squared_distribution<double> dist(static_cast<double>(dof));
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

CiResult g_squared_test(const BinaryDataset& data, int x, int y, const std::vector<int>& z,
                        const CiOptions& options) {
    const int m = data.cols();
    if (x < 0 || x >= m || y < 0 || y >= m) throw InvalidArgument("ci test: variable index out of range");
    if (x == y) throw InvalidArgument("ci test: x and y must differ");
    if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
        throw InvalidArgument("ci test: alpha must lie in (0,1)");
    }
    if (z.size() > 24) throw InvalidArgument("ci test: conditioning set too large");
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (z[i] < 0 || z[i] >= m) throw InvalidArgument("ci test: conditioning index out of range");
        if (z[i] == x || z[i] == y) throw InvalidArgument("ci test: x/y may not appear in z");
        for (std::size_t j = i + 1; j < z.size(); ++j) {
            if (z[i] == z[j]) throw InvalidArgument("ci test: duplicate conditioning index");
        }
    }

    const int n_rows = data.rows();
    const std::size_t strata = std::size_t{1} << z.size();
    // cell layout per stratum: index 2*x_value + y_value
    std::vector<long> counts(strata * 4, 0);
    for (int r = 0; r < n_rows; ++r) {
        std::size_t s = 0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            s |= static_cast<std::size_t>(data.at(r, z[i])) << i;
        }
        counts[s * 4 + 2 * data.at(r, x) + data.at(r, y)] += 1;
    }

    double statistic = 0.0;
    int dof = 0;
    for (std::size_t s = 0; s < strata; ++s) {
        const long* cell = &counts[s * 4];
        const long total = cell[0] + cell[1] + cell[2] + cell[3];
        if (total == 0) continue;  // empty stratum carries no information
        ++dof;
        const double row0 = static_cast<double>(cell[0] + cell[1]);
        const double row1 = static_cast<double>(cell[2] + cell[3]);
        const double col0 = static_cast<double>(cell[0] + cell[2]);
        const double col1 = static_cast<double>(cell[1] + cell[3]);
        const double rows[2] = {row0, row1};
        const double cols[2] = {col0, col1};
        for (int xi = 0; xi < 2; ++xi) {
            for (int yi = 0; yi < 2; ++yi) {
                const double observed = static_cast<double>(cell[2 * xi + yi]);
                const double expected = rows[xi] * cols[yi] / static_cast<double>(total);
                if (options.family == CiFamily::GSquared) {
                    if (observed > 0.0) statistic += 2.0 * observed * std::log(observed / expected);
                } else if (expected > 0.0) {
                    const double diff = observed - expected;
                    statistic += diff * diff / expected;
                }
            }
        }
    }
    // exact factorization can land a hair below zero in float arithmetic
    statistic = std::max(statistic, 0.0);

    CiResult result;
    result.statistic = statistic;
    result.dof = dof;
    if (n_rows < static_cast<long>(options.min_samples_per_dof) * dof) {
        result.low_power = true;
        result.p_value = 1.0;
        result.independent = true;
        return result;
    }
    result.p_value = chi_squared_survival(statistic, dof);
    result.independent = result.p_value > options.alpha;
    return result;
}

CiResult GSquaredTest::test(int x, int y, const std::vector<int>& z) const {
    const CiResult result = g_squared_test(*data_, x, y, z, options_);
    if (result.low_power) skips_.fetch_add(1, std::memory_order_relaxed);
    return result;
}

}  // namespace causal
