#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace facefit {

// Deterministic random stream. All distributions are implemented on top of
// the raw mt19937_64 output so generated files are reproducible across
// standard libraries (std::normal_distribution is not pinned by the
// standard, so it must not be used here).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Named substream of a root seed; distinct names give independent
    // streams so e.g. asset synthesis and noise draws can be varied
    // separately.
    static Rng substream(std::uint64_t root_seed, std::string_view name);

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Inclusive bounds.
    int uniform_int(int lo, int hi);

    // Standard normal via Box-Muller.
    double gaussian();

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace facefit
