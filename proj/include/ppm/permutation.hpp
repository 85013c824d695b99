#ifndef PPM_PERMUTATION_HPP
#define PPM_PERMUTATION_HPP

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppm/error.hpp"

namespace ppm {

/**
 * A bijection on [n] stored in one-line notation.
 *
 * Positions and values are 1-based at every public boundary: `sigma(i)` is
 * the value at position i, i in [1, size()]. `one_line()` exposes the raw
 * sequence sigma(1), ..., sigma(n) for iteration.
 */
class Permutation {
public:
    explicit Permutation(std::vector<int> one_line) : values_(std::move(one_line)) {
        if (values_.empty()) {
            throw Error(ErrorKind::empty_input, "a permutation needs at least one value");
        }
        std::vector<char> seen(values_.size() + 1, 0);
        const int n = size();
        for (int v : values_) {
            if (v < 1 || v > n) {
                throw Error(ErrorKind::not_a_permutation,
                            "value " + std::to_string(v) + " outside 1.." + std::to_string(n));
            }
            if (seen[v]) {
                throw Error(ErrorKind::not_a_permutation, "value " + std::to_string(v) + " repeated");
            }
            seen[v] = 1;
        }
    }

    Permutation(std::initializer_list<int> one_line) : Permutation(std::vector<int>(one_line)) {}

    static Permutation identity(int n) {
        std::vector<int> v(static_cast<std::size_t>(n));
        std::iota(v.begin(), v.end(), 1);
        return Permutation(std::move(v));
    }

    int size() const noexcept { return static_cast<int>(values_.size()); }

    int operator()(int position) const noexcept { return values_[static_cast<std::size_t>(position - 1)]; }

    std::span<const int> one_line() const noexcept { return values_; }

    Permutation inverse() const {
        std::vector<int> inv(values_.size());
        for (int pos = 1; pos <= size(); ++pos) {
            inv[static_cast<std::size_t>((*this)(pos) - 1)] = pos;
        }
        return Permutation(std::move(inv));
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> values_;
};

/// Space-separated decimals, no brackets, no trailing newline.
inline std::string format_permutation(const Permutation& p) {
    std::string out;
    for (int v : p.one_line()) {
        if (!out.empty()) {
            out.push_back(' ');
        }
        out += std::to_string(v);
    }
    return out;
}

namespace detail {

inline bool is_separator(char c) {
    return c == ' ' || c == ',' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::vector<int> parse_unsigned_list(std::string_view text) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (is_separator(text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && !is_separator(text[j])) {
            ++j;
        }
        const std::string_view token = text.substr(i, j - i);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        // from_chars accepts a leading '-', which the text format forbids.
        if (ec != std::errc() || ptr != token.data() + token.size() || token.front() == '-') {
            throw Error(ErrorKind::malformed_token, "'" + std::string(token) + "'");
        }
        out.push_back(value);
        i = j;
    }
    return out;
}

}

/// Parses one-line notation: decimal integers separated by whitespace and/or commas.
inline Permutation parse_permutation(std::string_view text) {
    std::vector<int> values = detail::parse_unsigned_list(text);
    if (values.empty()) {
        throw Error(ErrorKind::empty_input, "no values in permutation text");
    }
    return Permutation(std::move(values));
}

/// The relative order of `values`: entry i maps to the rank of values[i] (smallest is 1).
inline Permutation pattern_of(std::span<const int> values) {
    if (values.empty()) {
        throw Error(ErrorKind::empty_input, "pattern_of needs at least one value");
    }
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
    std::vector<int> ranks(values.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        if (r > 0 && values[order[r]] == values[order[r - 1]]) {
            throw Error(ErrorKind::duplicate_values, "value " + std::to_string(values[order[r]]) + " repeated");
        }
        ranks[order[r]] = static_cast<int>(r) + 1;
    }
    return Permutation(std::move(ranks));
}

inline Permutation pattern_of(std::initializer_list<int> values) {
    return pattern_of(std::span<const int>(values.begin(), values.size()));
}

/// A text permutation sigma of length n together with a pattern pi of length k <= n.
class PpmInstance {
public:
    PpmInstance(Permutation sigma, Permutation pattern) : sigma_(std::move(sigma)), pattern_(std::move(pattern)) {
        if (pattern_.size() > sigma_.size()) {
            throw Error(ErrorKind::pattern_longer_than_text,
                        "pattern length " + std::to_string(pattern_.size()) + " exceeds text length " +
                            std::to_string(sigma_.size()));
        }
    }

    const Permutation& sigma() const noexcept { return sigma_; }
    const Permutation& pattern() const noexcept { return pattern_; }
    int n() const noexcept { return sigma_.size(); }
    int k() const noexcept { return pattern_.size(); }

    friend bool operator==(const PpmInstance&, const PpmInstance&) = default;

private:
    Permutation sigma_;
    Permutation pattern_;
};

/// Instance file: first non-blank line is sigma, second is the pattern.
inline PpmInstance parse_instance(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const std::string_view line = text.substr(start, end - start);
        if (line.find_first_not_of(" \t\r,") != std::string_view::npos) {
            lines.push_back(line);
        }
        start = end + 1;
    }
    if (lines.size() != 2) {
        throw Error(ErrorKind::empty_input,
                    "instance text needs exactly two non-blank lines, got " + std::to_string(lines.size()));
    }
    return PpmInstance(parse_permutation(lines[0]), parse_permutation(lines[1]));
}

/**
 * An increasing map f: [k] -> [n], written f(1) < f(2) < ... < f(k).
 * The X-axis constraints hold by construction; whether the map is an
 * occurrence of a pattern is decided by `is_solution`.
 */
class Embedding {
public:
    explicit Embedding(std::vector<int> positions) : positions_(std::move(positions)) {
        for (std::size_t i = 0; i < positions_.size(); ++i) {
            if (positions_[i] < 1) {
                throw Error(ErrorKind::out_of_range, "embedding positions are 1-based");
            }
            if (i > 0 && positions_[i - 1] >= positions_[i]) {
                throw Error(ErrorKind::not_increasing, "f(" + std::to_string(i) + ") >= f(" + std::to_string(i + 1) + ")");
            }
        }
    }

    Embedding(std::initializer_list<int> positions) : Embedding(std::vector<int>(positions)) {}

    int size() const noexcept { return static_cast<int>(positions_.size()); }
    int operator()(int i) const noexcept { return positions_[static_cast<std::size_t>(i - 1)]; }
    std::span<const int> positions() const noexcept { return positions_; }

    friend bool operator==(const Embedding&, const Embedding&) = default;
    friend auto operator<=>(const Embedding&, const Embedding&) = default;

private:
    std::vector<int> positions_;
};

inline std::string format_embedding(const Embedding& f) {
    std::string out = "(";
    for (int i = 1; i <= f.size(); ++i) {
        if (i > 1) {
            out += ",";
        }
        out += std::to_string(f(i));
    }
    return out + ")";
}

/// True iff f is an occurrence of the pattern in sigma: the values sigma(f(.)) are
/// ordered exactly like the pattern. Checks the k-1 Y-axis constraints.
inline bool is_solution(const PpmInstance& instance, const Embedding& f) {
    const int k = instance.k();
    if (f.size() != k) {
        throw Error(ErrorKind::length_mismatch,
                    "embedding has " + std::to_string(f.size()) + " entries, pattern has " + std::to_string(k));
    }
    if (f(k) > instance.n()) {
        throw Error(ErrorKind::out_of_range, "f(" + std::to_string(k) + ") = " + std::to_string(f(k)) + " > n");
    }
    const Permutation pattern_inverse = instance.pattern().inverse();
    const Permutation& sigma = instance.sigma();
    for (int v = 1; v < k; ++v) {
        if (sigma(f(pattern_inverse(v))) > sigma(f(pattern_inverse(v + 1)))) {
            return false;
        }
    }
    return true;
}

}

#endif
