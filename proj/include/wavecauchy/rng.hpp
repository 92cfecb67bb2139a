#pragma once

#include <cmath>
#include <cstdint>

namespace wavecauchy {

/// Counter-based generator: splitmix64 finalizer over (seed, index) pairs
/// feeding a Box-Muller transform. Every sample is addressable, so noisy
/// traces are bit-reproducible regardless of evaluation order.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Standard normal deviate for stream `seed` at counter `idx`.
inline double gaussian_noise(std::uint64_t seed, std::uint64_t idx) {
    const std::uint64_t a = splitmix64(splitmix64(idx) ^ seed);
    const std::uint64_t b = splitmix64(a ^ 0x452821e638d01377ULL);
    const double u1 = (static_cast<double>(a >> 11) + 1.0) * 0x1p-53;  // (0, 1]
    const double u2 = static_cast<double>(b >> 11) * 0x1p-53;          // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238 * u2);
}

inline constexpr const char* noise_rng_name = "splitmix64-boxmuller";

}  // namespace wavecauchy
