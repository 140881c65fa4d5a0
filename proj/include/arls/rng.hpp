#pragma once

#include <cstdint>

namespace arls {

/// Deterministic 64-bit linear congruential generator.
///
/// State update (mod 2^64, Knuth's MMIX constants):
///   s <- s * 6364136223846793005 + 1442695040888963407
/// Each draw returns the upper 31 bits of the new state. The constants and
/// the draw rule are part of the reproducibility contract (see README);
/// outputs must match bit-for-bit across platforms and builds.
class Lcg {
public:
    explicit Lcg(std::uint64_t seed) : state_(seed) {}

    std::uint32_t next_u31() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<std::uint32_t>(state_ >> 33);
    }

    /// Uniform in [0, n). n must be > 0.
    std::uint32_t next_below(std::uint32_t n) { return next_u31() % n; }

    /// Uniform integer in [-amplitude, +amplitude].
    int next_offset(int amplitude) {
        return static_cast<int>(next_below(static_cast<std::uint32_t>(2 * amplitude + 1))) - amplitude;
    }

private:
    std::uint64_t state_;
};

/// Derives a stream seed from (base, lane) with a SplitMix64 finalizer.
/// Used to give every (trial, frame) pair its own noise seed.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t lane) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (lane + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace arls
