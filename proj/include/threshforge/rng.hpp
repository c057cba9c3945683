#pragma once

#include <cstdint>

namespace threshforge {

/// SplitMix64: 64-bit counter-based generator. State advances by the
/// constant 0x9E3779B97F4A7C15 per draw and the output mixing uses the
/// multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB with shifts
/// 30/27/31. Chosen because the sequence is reproducible byte-for-byte
/// on any platform; test vectors live in tests and in the README.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0,1) with 53 significant bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Standard normal deviate via the 12-uniform sum: exactly unit
    /// variance and zero mean, support [-6,6], and built only from IEEE
    /// additions so the result is bit-identical across platforms.
    double next_normal() {
        double s = 0.0;
        for (int i = 0; i < 12; ++i) s += next_double();
        return s - 6.0;
    }

    /// Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

}  // namespace threshforge
