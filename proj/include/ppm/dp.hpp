#ifndef PPM_DP_HPP
#define PPM_DP_HPP

#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppm/count.hpp"
#include "ppm/error.hpp"
#include "ppm/permutation.hpp"
#include "ppm/segments.hpp"

namespace ppm {

namespace detail {
#ifdef PPM_MUTANT_INCLUSIVE_CURSOR
// Mutation-testing build only: the cursor also admits j' == j.
inline constexpr bool inclusive_cursor = true;
#else
inline constexpr bool inclusive_cursor = false;
#endif
}

/// Work counters of one counting run.
struct DpStats {
    std::uint64_t bucket_appends = 0;
    std::uint64_t cell_writes = 0;
    std::uint64_t cursor_advances = 0;
};

/**
 * Sorted sigma-values of every segment, packed back to back.
 * `of(p)` is sort(sigma([l_p, r_p])) for the 1-based pattern position p.
 */
struct SegmentValues {
    std::vector<int> offsets;
    std::vector<int> values;

    int size() const noexcept { return static_cast<int>(offsets.size()) - 1; }
    std::span<const int> of(int p) const noexcept {
        return std::span<const int>(values).subspan(static_cast<std::size_t>(offsets[p - 1]),
                                                    static_cast<std::size_t>(offsets[p] - offsets[p - 1]));
    }
};

namespace detail {

/**
 * Appends each value v = 1..n to every segment covering its position, so
 * each segment's list comes out sorted. Output lands in `values` in CSR form
 * delimited by `offsets`. Buffers must be presized: first_cover n+1,
 * offsets k+1, fill k, values >= n+k-1.
 */
inline void bucket_pass(std::span<const int> position_of_value, std::span<const Segment> segments,
                        std::span<int> first_cover, std::span<int> offsets, std::span<int> fill,
                        std::span<int> values, DpStats& stats) {
    const int n = static_cast<int>(position_of_value.size()) - 1;
    const std::size_t k = segments.size();
    // Upper bounds are nondecreasing, so the first segment with hi >= pos
    // starts the (possibly empty) run of segments covering pos.
    std::size_t s = 0;
    for (int pos = 1; pos <= n; ++pos) {
        while (s < k && segments[s].hi < pos) {
            ++s;
        }
        first_cover[static_cast<std::size_t>(pos)] = static_cast<int>(s);
    }
    offsets[0] = 0;
    for (std::size_t p = 0; p < k; ++p) {
        fill[p] = offsets[p];
        offsets[p + 1] = offsets[p] + segments[p].length();
    }
    assert(k == 0 || offsets[k] <= n + static_cast<int>(k) - 1);
    for (int v = 1; v <= n; ++v) {
        const int pos = position_of_value[static_cast<std::size_t>(v)];
        for (auto t = static_cast<std::size_t>(first_cover[static_cast<std::size_t>(pos)]);
             t < k && segments[t].lo <= pos; ++t) {
            values[static_cast<std::size_t>(fill[t]++)] = v;
            ++stats.bucket_appends;
        }
    }
}

}

/**
 * Counts the solutions of one instance that respect a segment decomposition.
 *
 * Holds the instance's inverse permutations plus all scratch buffers, so a
 * single counter can be reused across many decompositions of the same
 * instance without allocating. Not thread safe; use one counter per worker.
 *
 * Each call runs in O(n + k) time:
 *  1. a bucket pass over the values 1..n appends each value to every segment
 *     covering its position, which leaves each segment's values sorted;
 *  2. pattern values are processed in increasing order i = 1..k. With
 *     p = pi^{-1}(i), each j in values_p receives the sum of the previous
 *     level's cells with j' < j, read through one forward cursor.
 *
 * Segments passed to the `count*` members must already be valid for n.
 */
class RespectingCounter {
public:
    explicit RespectingCounter(const PpmInstance& instance)
        : n_(instance.n()),
          k_(instance.k()),
          position_of_value_(static_cast<std::size_t>(instance.n()) + 1),
          segment_of_level_(static_cast<std::size_t>(instance.k()) + 1),
          first_cover_(static_cast<std::size_t>(instance.n()) + 1),
          offsets_(static_cast<std::size_t>(instance.k()) + 1),
          fill_(static_cast<std::size_t>(instance.k())),
          values_(static_cast<std::size_t>(instance.n() + instance.k())) {
        for (int pos = 1; pos <= n_; ++pos) {
            position_of_value_[static_cast<std::size_t>(instance.sigma()(pos))] = pos;
        }
        for (int p = 1; p <= k_; ++p) {
            segment_of_level_[static_cast<std::size_t>(instance.pattern()(p))] = p - 1;
        }
    }

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }

    /// Exact count; tries 64-bit arithmetic first and redoes the run exactly on overflow.
    Count count(std::span<const Segment> segments, DpStats* stats = nullptr) {
        if (const auto fast = count_u64(segments, stats)) {
            return Count(*fast);
        }
        return count_exact(segments, stats);
    }

    /// 64-bit count, or nullopt if any intermediate sum overflows.
    std::optional<std::uint64_t> count_u64(std::span<const Segment> segments, DpStats* stats = nullptr) {
        return run<std::uint64_t>(segments, u64_prev_, u64_cur_, stats);
    }

    Count count_exact(std::span<const Segment> segments, DpStats* stats = nullptr) {
        return *run<Count>(segments, big_prev_, big_cur_, stats);
    }

private:
    void bucket_pass(std::span<const Segment> segments, DpStats& stats) {
        assert(static_cast<int>(segments.size()) == k_);
        detail::bucket_pass(position_of_value_, segments, first_cover_, offsets_, fill_, values_, stats);
    }

    template <typename Int>
    std::optional<Int> run(std::span<const Segment> segments, std::vector<Int>& prev, std::vector<Int>& cur,
                           DpStats* stats_out) {
        DpStats stats;
        bucket_pass(segments, stats);

        // Level 0 is the sentinel cell (j = 0, DP = 1); every sigma-value exceeds it.
        static constexpr int sentinel_value[1] = {0};
        std::span<const int> prev_values(sentinel_value, 1);
        prev.assign(1, Int(1));
        ++stats.cell_writes;

        auto finish = [&](std::optional<Int> result) {
            if (stats_out != nullptr) {
                *stats_out = stats;
            }
            return result;
        };

        for (int level = 1; level <= k_; ++level) {
            const int p = segment_of_level_[static_cast<std::size_t>(level)];
            const std::span<const int> cur_values(values_.data() + offsets_[static_cast<std::size_t>(p)],
                                                  static_cast<std::size_t>(offsets_[static_cast<std::size_t>(p) + 1] -
                                                                           offsets_[static_cast<std::size_t>(p)]));
            cur.resize(cur_values.size());
            Int running(0);
            bool nonzero = false;
            std::size_t cursor = 0;
            for (std::size_t idx = 0; idx < cur_values.size(); ++idx) {
                const int j = cur_values[idx];
                while (cursor < prev_values.size() &&
                       (prev_values[cursor] < j || (detail::inclusive_cursor && prev_values[cursor] == j))) {
                    if (!CheckedAdd<Int>::add(running, prev[cursor])) {
                        return finish(std::nullopt);
                    }
                    ++cursor;
                    ++stats.cursor_advances;
                }
                cur[idx] = running;
                ++stats.cell_writes;
                nonzero = nonzero || running != 0;
            }
            if (!nonzero) {
                return finish(Int(0));
            }
            prev.swap(cur);
            prev_values = cur_values;
        }
        assert(stats.cell_writes <= static_cast<std::uint64_t>(n_ + k_));

        Int total(0);
        for (const Int& cell : prev) {
            if (!CheckedAdd<Int>::add(total, cell)) {
                return finish(std::nullopt);
            }
        }
        return finish(total);
    }

    int n_;
    int k_;
    std::vector<int> position_of_value_;
    std::vector<int> segment_of_level_;
    std::vector<int> first_cover_;
    std::vector<int> offsets_;
    std::vector<int> fill_;
    std::vector<int> values_;
    std::vector<std::uint64_t> u64_prev_, u64_cur_;
    std::vector<Count> big_prev_, big_cur_;
};

namespace detail {

inline void require_matches(int n, int k, const SegmentDecomposition& d) {
    if (d.n() != n) {
        throw Error(ErrorKind::length_mismatch,
                    "decomposition is over n = " + std::to_string(d.n()) + ", text has n = " + std::to_string(n));
    }
    if (d.size() != k) {
        throw Error(ErrorKind::length_mismatch,
                    "decomposition has " + std::to_string(d.size()) + " segments, pattern has k = " + std::to_string(k));
    }
    require_valid(d);
}

}

inline SegmentValues segment_values(const Permutation& sigma, const SegmentDecomposition& d) {
    if (d.n() != sigma.size()) {
        throw Error(ErrorKind::length_mismatch, "decomposition and permutation lengths differ");
    }
    require_valid(d);
    const auto n = static_cast<std::size_t>(sigma.size());
    const auto k = static_cast<std::size_t>(d.size());
    std::vector<int> position_of_value(n + 1);
    for (int pos = 1; pos <= sigma.size(); ++pos) {
        position_of_value[static_cast<std::size_t>(sigma(pos))] = pos;
    }
    std::vector<int> first_cover(n + 1);
    std::vector<int> fill(k);
    SegmentValues out;
    out.offsets.resize(k + 1);
    out.values.resize(n + k);
    DpStats stats;
    detail::bucket_pass(position_of_value, d.segments(), first_cover, out.offsets, fill, out.values, stats);
    out.values.resize(static_cast<std::size_t>(out.offsets.back()));
    return out;
}

/// Number of solutions of `instance` that respect `d`, exactly.
inline Count count_respecting(const PpmInstance& instance, const SegmentDecomposition& d, DpStats* stats = nullptr) {
    detail::require_matches(instance.n(), instance.k(), d);
    RespectingCounter counter(instance);
    return counter.count(d.segments(), stats);
}

}

#endif
