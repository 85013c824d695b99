#ifndef PPM_ORACLE_HPP
#define PPM_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppm/combination.hpp"
#include "ppm/count.hpp"
#include "ppm/dp.hpp"
#include "ppm/error.hpp"
#include "ppm/permutation.hpp"
#include "ppm/segments.hpp"

namespace ppm {

struct OracleOptions {
    /// Brute force refuses texts longer than this.
    int max_n = 24;
};

struct OracleReport {
    Count count;
    /// Present only when materialization was requested; then count == solutions->size().
    std::optional<std::vector<Embedding>> solutions;
};

namespace detail {

// Depth-first extension of increasing partial maps; a branch survives only
// while the mapped values keep the pattern's relative order.
class BruteForce {
public:
    BruteForce(const PpmInstance& instance, bool materialize)
        : sigma_(instance.sigma()), pattern_(instance.pattern()), materialize_(materialize),
          partial_(static_cast<std::size_t>(instance.k())) {}

    OracleReport run() {
        extend(0, 1);
        OracleReport report{Count(found_), std::nullopt};
        if (materialize_) {
            report.solutions = std::move(solutions_);
        }
        return report;
    }

private:
    void extend(int placed, int first_free) {
        const int k = pattern_.size();
        const int n = sigma_.size();
        if (placed == k) {
            ++found_;
            if (materialize_) {
                solutions_.emplace_back(partial_);
            }
            return;
        }
        // Leave room for the k - placed - 1 positions still to come.
        for (int pos = first_free; pos <= n - (k - placed - 1); ++pos) {
            if (consistent(placed, pos)) {
                partial_[static_cast<std::size_t>(placed)] = pos;
                extend(placed + 1, pos + 1);
            }
        }
    }

    bool consistent(int placed, int pos) const {
        const int value = sigma_(pos);
        const int rank = pattern_(placed + 1);
        for (int j = 0; j < placed; ++j) {
            const bool pattern_less = pattern_(j + 1) < rank;
            const bool text_less = sigma_(partial_[static_cast<std::size_t>(j)]) < value;
            if (pattern_less != text_less) {
                return false;
            }
        }
        return true;
    }

    const Permutation& sigma_;
    const Permutation& pattern_;
    bool materialize_;
    std::vector<int> partial_;
    std::uint64_t found_ = 0;
    std::vector<Embedding> solutions_;
};

inline void require_oracle_size(const PpmInstance& instance, const OracleOptions& options) {
    if (instance.n() > options.max_n) {
        throw Error(ErrorKind::instance_too_large,
                    "brute force is capped at n = " + std::to_string(options.max_n) + ", got n = " + std::to_string(instance.n()));
    }
}

}

inline OracleReport brute_force(const PpmInstance& instance, bool materialize, const OracleOptions& options = {}) {
    detail::require_oracle_size(instance, options);
    return detail::BruteForce(instance, materialize).run();
}

/// Every occurrence of the pattern in sigma, in lexicographic order.
inline std::vector<Embedding> brute_force_enumerate(const PpmInstance& instance, const OracleOptions& options = {}) {
    return *brute_force(instance, true, options).solutions;
}

inline Count brute_force_count(const PpmInstance& instance, const OracleOptions& options = {}) {
    return brute_force(instance, false, options).count;
}

/**
 * Decomposition that pins each even pattern position 2i to the text position
 * `assignment[i-1]` and lets each odd position range over the gap between its
 * neighbours. Returns nullopt when some gap is empty.
 */
inline std::optional<SegmentDecomposition> bkm_decomposition(std::span<const int> assignment, int n, int k) {
    std::vector<Segment> segs(static_cast<std::size_t>(k));
    auto at = [&](int i) -> Segment& { return segs[static_cast<std::size_t>(i - 1)]; };
    at(1).lo = 1;
    for (int i = 2; i <= k; i += 2) {
        const int v = assignment[static_cast<std::size_t>(i / 2 - 1)];
        at(i) = Segment{v, v};
        at(i - 1).hi = v - 1;
        if (i + 1 <= k) {
            at(i + 1).lo = v + 1;
        }
    }
    if (k % 2 == 1) {
        at(k).hi = n;
    }
    for (const Segment& s : segs) {
        if (s.lo > s.hi) {
            return std::nullopt;
        }
    }
    return SegmentDecomposition(n, std::move(segs));
}

struct BkmStats {
    std::uint64_t assignments = 0;
    std::uint64_t surviving = 0;
};

/// Baseline: guess the exact text positions of all even pattern positions and
/// count the completions of each guess with the same respecting-solution DP.
inline Count bkm_count(const PpmInstance& instance, BkmStats* stats = nullptr) {
    const int n = instance.n();
    const int k = instance.k();
    RespectingCounter counter(instance);
    BkmStats local;
    Count total = 0;
    for (CombinationCursor cursor(n, k / 2); cursor.valid(); cursor.advance()) {
        ++local.assignments;
        const auto d = bkm_decomposition(cursor.current(), n, k);
        if (!d) {
            continue;
        }
        ++local.surviving;
        total += counter.count(d->segments());
    }
    if (stats != nullptr) {
        *stats = local;
    }
    return total;
}

}

#endif
