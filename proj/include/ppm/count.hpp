#ifndef PPM_COUNT_HPP
#define PPM_COUNT_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ppm {

/// Exact, unbounded, nonnegative solution count.
using Count = boost::multiprecision::cpp_int;

inline std::string to_string(const Count& c) { return c.str(); }

/// binom(n, r), exact; 0 when r < 0 or r > n.
inline Count binomial(int n, int r) {
    if (r < 0 || n < 0 || r > n) {
        return 0;
    }
    r = std::min(r, n - r);
    Count acc = 1;
    for (int i = 1; i <= r; ++i) {
        acc *= n - r + i;
        acc /= i;
    }
    return acc;
}

/**
 * Addition policy for the counting kernels. `add` returns false instead of
 * wrapping; callers then redo the work with `Count`.
 */
template <typename Int>
struct CheckedAdd;

template <>
struct CheckedAdd<std::uint64_t> {
    static bool add(std::uint64_t& acc, std::uint64_t x) noexcept { return !__builtin_add_overflow(acc, x, &acc); }
};

template <>
struct CheckedAdd<Count> {
    static bool add(Count& acc, const Count& x) {
        acc += x;
        return true;
    }
};

/// Running total kept in 64 bits until the first overflow, exact afterwards.
class ExactSum {
public:
    void add(std::uint64_t x) {
        if (!big_) {
            std::uint64_t sum = small_;
            if (CheckedAdd<std::uint64_t>::add(sum, x)) {
                small_ = sum;
                return;
            }
            big_ = Count(small_);
        }
        *big_ += x;
    }

    void add(const Count& x) {
        if (!big_) {
            big_ = Count(small_);
        }
        *big_ += x;
    }

    bool positive() const { return big_ ? *big_ > 0 : small_ > 0; }
    bool widened() const noexcept { return big_.has_value(); }
    Count value() const { return big_ ? *big_ : Count(small_); }

private:
    std::uint64_t small_ = 0;
    std::optional<Count> big_;
};

}

#endif
