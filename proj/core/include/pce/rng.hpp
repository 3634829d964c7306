#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace pce {

// Seeded generator with a cross-platform contract: the raw stream is
// std::mt19937_64 (output sequence fixed by the standard) and the mappings
// below are spelled out here instead of using the implementation-defined
// std distributions.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Unbiased integer in [0, n), rejection sampling on the top band.
    uint64_t below(uint64_t n) {
        const uint64_t threshold = (0 - n) % n;
        for (;;) {
            const uint64_t x = engine_();
            if (x >= threshold) return x % n;
        }
    }

    // 53-bit mantissa in [0, 1).
    double unit_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Box-Muller, cosine branch only: two draws per sample, no cached state.
    double gaussian(double mean, double stddev) {
        const double u1 = unit_double();
        const double u2 = unit_double();
        const double z =
            std::sqrt(-2.0 * std::log1p(-u1)) *
            std::cos(2.0 * std::numbers::pi * u2);
        return mean + stddev * z;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace pce
