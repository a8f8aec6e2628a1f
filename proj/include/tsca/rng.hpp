#pragma once

#include <cstdint>

namespace tsca {

// Draw roles. Distinct roles give independent sub-streams of one seed, so
// e.g. the per-step rule coin never collides with per-cell uniforms.
enum class Role : std::uint64_t {
    RuleCoin = 0,  // one draw per step, selects f or g
    Cell = 1,      // one draw per cell per g-step
    Shuffle = 2,   // initial-configuration shuffles
};

// Counter-based randomness. Every draw is a pure function of
// (seed, step, role, index): no state, no call-order dependence, identical
// results no matter how many workers evaluate it.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t bits(std::uint64_t step, Role role, std::uint64_t index) const noexcept {
        std::uint64_t h = mix(seed_);
        h = mix(h ^ step);
        h = mix(h ^ static_cast<std::uint64_t>(role));
        h = mix(h ^ index);
        return h;
    }

    // Uniform double in [0, 1), 53 mantissa bits.
    double uniform(std::uint64_t step, Role role, std::uint64_t index) const noexcept {
        return static_cast<double>(bits(step, role, index) >> 11) * 0x1.0p-53;
    }

    // Maps raw 64-bit output to [0, n). Fixed-point multiply; the modulo
    // bias is O(n / 2^64), irrelevant for simulation-sized n.
    static std::uint64_t bounded(std::uint64_t raw, std::uint64_t n) noexcept {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(raw) * static_cast<unsigned __int128>(n)) >> 64);
    }

private:
    // SplitMix64 finalizer.
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
};

}  // namespace tsca
