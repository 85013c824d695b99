#ifndef PPM_RANDOM_HPP
#define PPM_RANDOM_HPP

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "ppm/error.hpp"
#include "ppm/permutation.hpp"

namespace ppm {

/// SplitMix64. The exact stream is part of the `gen` output format (docs/FORMAT.md).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound) by rejecting the 2^64 mod bound lowest outputs.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t threshold = (0 - bound) % bound;
        std::uint64_t x = next();
        while (x < threshold) {
            x = next();
        }
        return x % bound;
    }

private:
    std::uint64_t state_;
};

/// Fisher-Yates shuffle of (1..n), swapping from the back.
inline Permutation random_permutation(int n, SplitMix64& rng) {
    if (n < 1) {
        throw Error(ErrorKind::instance_too_small, "permutation length must be >= 1");
    }
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    for (int i = n - 1; i >= 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(v[static_cast<std::size_t>(i)], v[j]);
    }
    return Permutation(std::move(v));
}

inline Permutation random_permutation(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return random_permutation(n, rng);
}

/// Random length-k pattern taken from a random subsequence of sigma, so it occurs at least once.
inline Permutation random_contained_pattern(const Permutation& sigma, int k, SplitMix64& rng) {
    const int n = sigma.size();
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(k));
    // Selection sampling keeps positions in increasing order.
    int needed = k;
    for (int pos = 1; pos <= n && needed > 0; ++pos) {
        if (rng.below(static_cast<std::uint64_t>(n - pos + 1)) < static_cast<std::uint64_t>(needed)) {
            chosen.push_back(sigma(pos));
            --needed;
        }
    }
    return pattern_of(chosen);
}

}

#endif
