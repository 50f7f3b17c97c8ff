#pragma once

#include <cstdint>
#include <utility>

namespace catbox {

// SplitMix64 stream. The state after k draws is seed + k * kGamma (mod 2^64),
// so any draw can be reached directly without stepping through the others.
struct RngStream {
    std::uint64_t state = 0;

    friend bool operator==(const RngStream&, const RngStream&) = default;
};

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

struct RngDraw {
    double u;  // in [0, 1)
    RngStream next;
};

constexpr std::uint64_t splitmix_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr RngDraw rng_next(RngStream rng) noexcept {
    const std::uint64_t state = rng.state + kSplitMixGamma;
    const std::uint64_t z = splitmix_mix(state);
    return {static_cast<double>(z >> 11) * 0x1.0p-53, RngStream{state}};
}

// Stream positioned `draws` steps ahead of `rng`.
constexpr RngStream rng_advance(RngStream rng, std::uint64_t draws) noexcept {
    return RngStream{rng.state + draws * kSplitMixGamma};
}

}  // namespace catbox
