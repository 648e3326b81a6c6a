#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>

namespace tweetscope {

// Portable draws over mt19937_64. The std distributions are
// implementation-defined, which would make seeded outputs differ between
// standard libraries.

/// Unbiased integer in [0, n), n > 0.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    const auto bound = static_cast<std::uint64_t>(n);
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

/// Double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace tweetscope
