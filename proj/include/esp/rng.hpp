#pragma once

#include <cstdint>

namespace esp {

// Finalizer step of SplitMix64 (Steele, Lea, Flood 2014). Bijective on u64.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// SplitMix64 generator. Portable: output depends on the seed only, never on
// the platform or standard library.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // Uniform value in [0, bound) via the multiply-shift reduction.
    std::uint64_t bounded(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

private:
    std::uint64_t state_;
};

// Independent stream per (combination, repeat) pair. The stream seed is
// base mixed with both indices, so any execution order or worker layout
// sees the same stream for the same pair.
inline SplitMix64 stream_rng(std::uint64_t base_seed, std::uint64_t combination,
                             std::uint64_t repeat) {
    std::uint64_t s = mix64(base_seed ^ (0x9E3779B97F4A7C15ULL * (combination + 1)));
    s = mix64(s ^ (0xD1B54A32D192ED03ULL * (repeat + 1)));
    return SplitMix64(s);
}

} // namespace esp
