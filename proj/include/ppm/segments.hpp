#ifndef PPM_SEGMENTS_HPP
#define PPM_SEGMENTS_HPP

#include <compare>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ppm/error.hpp"
#include "ppm/permutation.hpp"

namespace ppm {

/// Closed interval [lo, hi] of text positions.
struct Segment {
    int lo = 1;
    int hi = 1;

    int length() const noexcept { return hi - lo + 1; }
    bool contains(int position) const noexcept { return lo <= position && position <= hi; }

    friend bool operator==(const Segment&, const Segment&) = default;
    friend auto operator<=>(const Segment&, const Segment&) = default;
};

/**
 * One interval per pattern position over the text positions [1, n].
 *
 * Construction does not validate; call `validate_decomposition` (or
 * `require_valid`) before handing a decomposition from outside the library
 * to the counting code.
 */
class SegmentDecomposition {
public:
    SegmentDecomposition() = default;
    SegmentDecomposition(int n, std::vector<Segment> segments) : n_(n), segments_(std::move(segments)) {}

    int n() const noexcept { return n_; }
    int size() const noexcept { return static_cast<int>(segments_.size()); }
    const Segment& operator()(int i) const noexcept { return segments_[static_cast<std::size_t>(i - 1)]; }
    std::span<const Segment> segments() const noexcept { return segments_; }

    friend bool operator==(const SegmentDecomposition&, const SegmentDecomposition&) = default;
    friend auto operator<=>(const SegmentDecomposition&, const SegmentDecomposition&) = default;

private:
    int n_ = 0;
    std::vector<Segment> segments_;
};

inline std::string format_decomposition(const SegmentDecomposition& d) {
    std::string out;
    for (const Segment& s : d.segments()) {
        if (!out.empty()) {
            out += ' ';
        }
        out += '[' + std::to_string(s.lo) + ',' + std::to_string(s.hi) + ']';
    }
    return out;
}

enum class DecompositionCheck {
    ok,
    empty_segment,
    out_of_range,
    order_violation,
};

/// Checks l_i <= r_i, [l_i, r_i] inside [1, n], and r_i <= l_{i+1}; reports the first failure.
inline DecompositionCheck validate_decomposition(const SegmentDecomposition& d) {
    const auto segs = d.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (segs[i].lo > segs[i].hi) {
            return DecompositionCheck::empty_segment;
        }
        if (segs[i].lo < 1 || segs[i].hi > d.n()) {
            return DecompositionCheck::out_of_range;
        }
        if (i + 1 < segs.size() && segs[i].hi > segs[i + 1].lo) {
            return DecompositionCheck::order_violation;
        }
    }
    return DecompositionCheck::ok;
}

inline void require_valid(const SegmentDecomposition& d) {
    switch (validate_decomposition(d)) {
    case DecompositionCheck::ok:
        return;
    case DecompositionCheck::empty_segment:
        throw Error(ErrorKind::empty_segment, format_decomposition(d));
    case DecompositionCheck::out_of_range:
        throw Error(ErrorKind::out_of_range, format_decomposition(d) + " with n = " + std::to_string(d.n()));
    case DecompositionCheck::order_violation:
        throw Error(ErrorKind::order_violation, format_decomposition(d));
    }
}

/// True iff l_i <= f(i) <= r_i for every pattern position i.
inline bool respects(const Embedding& f, const SegmentDecomposition& d) {
    if (f.size() != d.size()) {
        throw Error(ErrorKind::length_mismatch,
                    "embedding has " + std::to_string(f.size()) + " entries, decomposition has " +
                        std::to_string(d.size()) + " segments");
    }
    for (int i = 1; i <= f.size(); ++i) {
        if (!d(i).contains(f(i))) {
            return false;
        }
    }
    return true;
}

}

#endif
