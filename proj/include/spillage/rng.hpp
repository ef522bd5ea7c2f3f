#pragma once

#include <cstdint>

namespace spillage {

// SplitMix64 (Steele, Lea & Flood): fixed 64-bit generator with a
// platform-independent output sequence. Stream i of a given seed is the
// generator seeded with output #i of SplitMix64(seed), which is computable
// in O(1) and makes trial-level partitioning order-independent.
struct SplitMix64 {
    std::uint64_t state;

    static constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ull;

    explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state += golden_gamma);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, bound) via multiply-shift rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = -bound % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    static constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 g(seed + stream * golden_gamma);
        return g.next();
    }
};

}  // namespace spillage
