#ifndef PPM_LOWERBOUND_HPP
#define PPM_LOWERBOUND_HPP

#include <set>
#include <span>
#include <string>
#include <vector>

#include "ppm/combination.hpp"
#include "ppm/error.hpp"
#include "ppm/permutation.hpp"
#include "ppm/segments.hpp"
#include "ppm/solver.hpp"

// Test-scale construction used by the self-test; not part of the solving API.
namespace ppm::selftest {

inline constexpr int lowerbound_max_n = 24;

/// g_f(2i) = 2 f(i), g_f(2i - 1) = 2 f(i) - 1, and g_f(k) = n when k is odd.
inline Embedding lowerbound_embedding(std::span<const int> f, int n, int k) {
    std::vector<int> g(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < f.size(); ++i) {
        g[2 * i] = 2 * f[i] - 1;
        g[2 * i + 1] = 2 * f[i];
    }
    if (k % 2 == 1) {
        g.back() = n;
    }
    return Embedding(std::move(g));
}

/**
 * Canonical decompositions of g_f over all increasing
 * f: [floor(k/2)] -> [floor((n-1)/2)]. Distinct f must give distinct
 * decompositions, so the set has binom(floor((n-1)/2), floor(k/2)) members.
 */
inline std::set<SegmentDecomposition> lowerbound_family(int n, int k) {
    if (k < 1 || k > n || k / 2 > (n - 1) / 2) {
        throw Error(ErrorKind::instance_too_small,
                    "need 1 <= k <= n and floor(k/2) <= floor((n-1)/2), got n = " + std::to_string(n) +
                        ", k = " + std::to_string(k));
    }
    if (n > lowerbound_max_n) {
        throw Error(ErrorKind::instance_too_large, "lower-bound family is materialized only for n <= 24");
    }
    std::set<SegmentDecomposition> family;
    for (CombinationCursor f((n - 1) / 2, k / 2); f.valid(); f.advance()) {
        family.insert(canonical_decomposition(lowerbound_embedding(f.current(), n, k), n));
    }
    return family;
}

}

#endif
