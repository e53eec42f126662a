#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>

namespace causal {

// Seeded RNG with portable derived draws: every distribution below is built
// from raw mt19937_64 output only, so a seed pins the whole stream regardless
// of standard-library distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    // inclusive bounds
    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

    // Box-Muller; consumes two engine outputs per call
    double normal();

private:
    std::mt19937_64 engine_;
};

// Worker-thread cap from CAUSAL_REFINE_THREADS (0 or unset = hardware auto).
int thread_cap();

// Static-chunked parallel loop. Results must be written to disjoint slots so
// the outcome is identical for any thread count. The first exception thrown
// by `fn` is rethrown on the calling thread.
void parallel_for(int n, const std::function<void(int)>& fn);

// Shortest round-trip decimal form of a double (to_chars).
std::string format_double(double value);

}  // namespace causal
