#ifndef PPM_SOLVER_HPP
#define PPM_SOLVER_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "ppm/combination.hpp"
#include "ppm/count.hpp"
#include "ppm/dp.hpp"
#include "ppm/error.hpp"
#include "ppm/permutation.hpp"
#include "ppm/segments.hpp"

namespace ppm {

/// 2 * floor(i / 2): the even number e with i in [e, e + 1].
constexpr int c_floor(int i) noexcept { return 2 * (i / 2); }

/**
 * An increasing map from the even pattern positions {2, 4, ..., 2*floor(k/2)}
 * to the even text positions {2, 4, ..., 2*floor(n/2)}, stored as the value
 * sequence g(2), g(4), ....
 */
class EvenGuess {
public:
    EvenGuess(std::vector<int> values, int n, int k) : values_(std::move(values)) {
        if (static_cast<int>(values_.size()) != k / 2) {
            throw Error(ErrorKind::length_mismatch, "guess needs floor(k/2) = " + std::to_string(k / 2) + " values");
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            const int v = values_[i];
            if (v % 2 != 0 || v < 2 || v > c_floor(n)) {
                throw Error(ErrorKind::out_of_range, "guess value " + std::to_string(v) + " is not an even position <= n");
            }
            if (i > 0 && values_[i - 1] >= v) {
                throw Error(ErrorKind::not_increasing, "guess values must strictly increase");
            }
        }
    }

    EvenGuess(std::initializer_list<int> values, int n, int k) : EvenGuess(std::vector<int>(values), n, k) {}

    std::span<const int> values() const noexcept { return values_; }

private:
    std::vector<int> values_;
};

namespace detail {

// Writes S_g for g given as its value sequence g(2), g(4), ... into `out`.
inline void build_guess_decomposition(std::span<const int> guess, int n, int k, std::vector<Segment>& out) {
    out.resize(static_cast<std::size_t>(k));
    auto at = [&](int i) -> Segment& { return out[static_cast<std::size_t>(i - 1)]; };
    at(1).lo = 1;
    for (int i = 2; i <= k; i += 2) {
        const int g = guess[static_cast<std::size_t>(i / 2 - 1)];
        at(i).lo = g;
        at(i).hi = std::min(n, g + 1);
        at(i - 1).hi = g;
        if (i + 1 <= k) {
            at(i + 1).lo = at(i).hi;
        }
    }
    if (k % 2 == 1) {
        at(k).hi = n;
    }
}

inline void require_sizes(int n, int k) {
    if (k < 1 || n < 1) {
        throw Error(ErrorKind::instance_too_small, "need 1 <= k <= n, got n = " + std::to_string(n) + ", k = " + std::to_string(k));
    }
    if (k > n) {
        throw Error(ErrorKind::instance_too_small, "k = " + std::to_string(k) + " > n = " + std::to_string(n));
    }
}

}

/// The decomposition S_g induced by an even guess: point-or-pair segments at even
/// pattern positions, and odd positions spanning the gaps between them.
inline SegmentDecomposition decomposition_of_guess(const EvenGuess& g, int n, int k) {
    detail::require_sizes(n, k);
    if (static_cast<int>(g.values().size()) != k / 2) {
        throw Error(ErrorKind::length_mismatch, "guess does not match k");
    }
    std::vector<Segment> segs;
    detail::build_guess_decomposition(g.values(), n, k, segs);
    return SegmentDecomposition(n, std::move(segs));
}

/**
 * Single-pass stream over all even guesses for (n, k) in lexicographic order.
 * Memory is O(k) regardless of how many guesses there are.
 */
class GuessStream {
public:
    GuessStream(int n, int k) : GuessStream(n, k, 0) {}

    /// Stream starting at the guess of lexicographic rank `first_rank`.
    GuessStream(int n, int k, std::uint64_t first_rank)
        : n_((detail::require_sizes(n, k), n)),
          k_(k),
          cursor_(CombinationCursor::at_rank(n / 2, k / 2, first_rank)),
          guess_(static_cast<std::size_t>(k / 2)) {
        sync();
    }

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    bool valid() const noexcept { return cursor_.valid(); }
    std::span<const int> current() const noexcept { return guess_; }

    void advance() noexcept {
        cursor_.advance();
        sync();
    }

    EvenGuess guess() const { return EvenGuess(guess_, n_, k_); }

private:
    void sync() noexcept {
        if (!cursor_.valid()) {
            return;
        }
        const auto subset = cursor_.current();
        for (std::size_t i = 0; i < subset.size(); ++i) {
            guess_[i] = 2 * subset[i];
        }
    }

    int n_;
    int k_;
    CombinationCursor cursor_;
    std::vector<int> guess_;
};

inline GuessStream enumerate_guesses(int n, int k) { return GuessStream(n, k); }

/// binom(floor(n/2), floor(k/2)): how many decompositions the solver visits.
inline Count family_size(int n, int k) { return binomial(n / 2, k / 2); }

/// The unique member of the guess family respected by f: g(2i) = c_floor(f(2i)).
inline SegmentDecomposition canonical_decomposition(const Embedding& f, int n) {
    const int k = f.size();
    detail::require_sizes(n, k);
    if (f(k) > n) {
        throw Error(ErrorKind::out_of_range, "embedding leaves [1, n]");
    }
    std::vector<int> guess;
    guess.reserve(static_cast<std::size_t>(k / 2));
    for (int i = 2; i <= k; i += 2) {
        guess.push_back(c_floor(f(i)));
    }
    std::vector<Segment> segs;
    detail::build_guess_decomposition(guess, n, k, segs);
    return SegmentDecomposition(n, std::move(segs));
}

struct SolverOptions {
    /// Worker threads; the guess stream is cut into this many contiguous blocks.
    int threads = 1;
    /// Answer k == n directly (1 iff sigma == pattern). Disable to force the general path.
    bool identity_shortcut = true;
};

namespace detail {

// Sums the per-decomposition counts over guesses of rank [begin, end). When
// `found` is non-null the loop stops at the first positive count (detection).
inline Count count_guess_block(const PpmInstance& instance, std::uint64_t begin, std::uint64_t end,
                               std::atomic<bool>* found) {
    RespectingCounter counter(instance);
    std::vector<Segment> segs;
    ExactSum total;
    std::uint64_t rank = begin;
    for (GuessStream stream(instance.n(), instance.k(), begin); stream.valid() && rank < end; stream.advance(), ++rank) {
        if (found != nullptr && found->load(std::memory_order_relaxed)) {
            break;
        }
        build_guess_decomposition(stream.current(), instance.n(), instance.k(), segs);
        if (const auto fast = counter.count_u64(segs)) {
            total.add(*fast);
        } else {
            total.add(counter.count_exact(segs));
        }
        if (found != nullptr && total.positive()) {
            found->store(true, std::memory_order_relaxed);
            break;
        }
    }
    return total.value();
}

inline Count run_family(const PpmInstance& instance, const SolverOptions& options, std::atomic<bool>* found) {
    const int threads = std::max(1, options.threads);
    const std::uint64_t total = binomial_u64(instance.n() / 2, instance.k() / 2);
    constexpr std::uint64_t unbounded = std::numeric_limits<std::uint64_t>::max();
    if (threads == 1 || total == unbounded) {
        return count_guess_block(instance, 0, unbounded, found);
    }
    std::vector<Count> partial(static_cast<std::size_t>(threads));
    {
        std::vector<std::jthread> workers;
        workers.reserve(static_cast<std::size_t>(threads));
        for (int b = 0; b < threads; ++b) {
            const auto begin = static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * b / threads);
            const auto end = static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * (b + 1) / threads);
            workers.emplace_back([&instance, &partial, found, b, begin, end] {
                partial[static_cast<std::size_t>(b)] = count_guess_block(instance, begin, end, found);
            });
        }
    }
    Count sum = 0;
    for (const Count& c : partial) {
        sum += c;
    }
    return sum;
}

}

/// Total number of occurrences of the pattern in sigma.
inline Count count_ppm(const PpmInstance& instance, const SolverOptions& options = {}) {
    if (options.identity_shortcut && instance.k() == instance.n()) {
        return instance.sigma() == instance.pattern() ? 1 : 0;
    }
    return detail::run_family(instance, options, nullptr);
}

/// True iff the pattern occurs in sigma. Stops at the first decomposition with a solution.
inline bool detect_ppm(const PpmInstance& instance, const SolverOptions& options = {}) {
    if (options.identity_shortcut && instance.k() == instance.n()) {
        return instance.sigma() == instance.pattern();
    }
    std::atomic<bool> found{false};
    return detail::run_family(instance, options, &found) > 0;
}

}

#endif
