#ifndef PPM_COMBINATION_HPP
#define PPM_COMBINATION_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ppm/error.hpp"

namespace ppm {

/// binom(n, r) in 64 bits, saturating at UINT64_MAX.
inline std::uint64_t binomial_u64(int n, int r) {
    if (r < 0 || n < 0 || r > n) {
        return 0;
    }
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= r; ++i) {
        acc = acc * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
        if (acc > std::numeric_limits<std::uint64_t>::max()) {
            return std::numeric_limits<std::uint64_t>::max();
        }
    }
    return static_cast<std::uint64_t>(acc);
}

/**
 * Walks the r-element subsets of {1, ..., m} in lexicographic order,
 * holding only the current subset. Typical use:
 *
 *     for (CombinationCursor c(m, r); c.valid(); c.advance()) use(c.current());
 */
class CombinationCursor {
public:
    CombinationCursor(int m, int r) : m_(m), current_(static_cast<std::size_t>(r)) {
        if (r < 0 || m < 0) {
            throw Error(ErrorKind::out_of_range, "negative subset parameters");
        }
        valid_ = r <= m;
        for (int i = 0; i < r; ++i) {
            current_[static_cast<std::size_t>(i)] = i + 1;
        }
    }

    /// Positions the cursor on the subset of lexicographic rank `rank` (0-based).
    static CombinationCursor at_rank(int m, int r, std::uint64_t rank) {
        CombinationCursor c(m, r);
        if (!c.valid_) {
            return c;
        }
        int next = 1;
        for (int i = 0; i < r; ++i) {
            // Skip blocks of subsets whose i-th element is `next`.
            for (; next <= m; ++next) {
                const std::uint64_t block = binomial_u64(m - next, r - i - 1);
                if (rank < block) {
                    break;
                }
                rank -= block;
            }
            if (next > m) {
                c.valid_ = false;
                return c;
            }
            c.current_[static_cast<std::size_t>(i)] = next++;
        }
        if (r == 0 && rank > 0) {
            c.valid_ = false;
        }
        return c;
    }

    bool valid() const noexcept { return valid_; }
    std::span<const int> current() const noexcept { return current_; }

    void advance() noexcept {
        const int r = static_cast<int>(current_.size());
        int i = r - 1;
        while (i >= 0 && current_[static_cast<std::size_t>(i)] == m_ - (r - 1 - i)) {
            --i;
        }
        if (i < 0) {
            valid_ = false;
            return;
        }
        ++current_[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j) {
            current_[static_cast<std::size_t>(j)] = current_[static_cast<std::size_t>(j - 1)] + 1;
        }
    }

private:
    int m_;
    std::vector<int> current_;
    bool valid_ = true;
};

}

#endif
