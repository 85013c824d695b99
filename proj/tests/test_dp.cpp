#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <vector>

#include "ppm/combination.hpp"
#include "ppm/dp.hpp"
#include "ppm/oracle.hpp"
#include "ppm/random.hpp"
#include "ppm/selftest.hpp"
#include "ppm/solver.hpp"

using namespace ppm;

namespace {

std::vector<std::vector<int>> lists(const SegmentValues& sv) {
    std::vector<std::vector<int>> out;
    for (int p = 1; p <= sv.size(); ++p) {
        out.emplace_back(sv.of(p).begin(), sv.of(p).end());
    }
    return out;
}

// Independent count: filter the brute-force occurrence list by respects().
Count filtered_oracle(const PpmInstance& inst, const SegmentDecomposition& d) {
    const auto all = brute_force_enumerate(inst);
    return Count(std::count_if(all.begin(), all.end(), [&](const Embedding& f) { return respects(f, d); }));
}

// Random valid decomposition from 2k sorted cut points (repeats allowed).
SegmentDecomposition random_decomposition(int n, int k, SplitMix64& rng) {
    std::vector<int> cuts;
    for (int i = 0; i < 2 * k; ++i) {
        cuts.push_back(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<Segment> segs;
    for (int i = 0; i < k; ++i) {
        segs.push_back({cuts[2 * i], cuts[2 * i + 1]});
    }
    return SegmentDecomposition(n, std::move(segs));
}

// Lexicographic rank of a permutation (Lehmer code), matching next_permutation order.
std::size_t lex_rank(std::span<const int> p) {
    std::size_t rank = 0;
    const std::size_t m = p.size();
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t smaller = 0;
        for (std::size_t j = i + 1; j < m; ++j) {
            smaller += p[j] < p[i] ? 1 : 0;
        }
        std::size_t fact = 1;
        for (std::size_t f = 2; f < m - i; ++f) {
            fact *= f;
        }
        rank += smaller * fact;
    }
    return rank;
}

}

TEST_CASE("segment_values sorts each segment's sigma values", "[dp]") {
    const Permutation sigma{8, 1, 3, 9, 5, 4, 2, 7, 6};
    const SegmentDecomposition d(9, {{1, 2}, {2, 3}, {3, 6}, {6, 7}, {7, 9}});
    CHECK(lists(segment_values(sigma, d)) ==
          std::vector<std::vector<int>>{{1, 8}, {1, 3}, {3, 4, 5, 9}, {2, 4}, {2, 6, 7}});
    CHECK(lists(segment_values(Permutation{1}, SegmentDecomposition(1, {{1, 1}}))) == std::vector<std::vector<int>>{{1}});
    CHECK(lists(segment_values(Permutation{2, 1}, SegmentDecomposition(2, {{1, 1}, {2, 2}}))) ==
          std::vector<std::vector<int>>{{2}, {1}});
    // More segments than positions: stacked points all see the same value.
    CHECK(lists(segment_values(Permutation{2, 1}, SegmentDecomposition(2, {{2, 2}, {2, 2}, {2, 2}}))) ==
          std::vector<std::vector<int>>{{1}, {1}, {1}});
}

TEST_CASE("segment_values matches per-segment sorting", "[dp][property]") {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(30));
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const Permutation sigma = random_permutation(n, rng);
        const auto d = random_decomposition(n, k, rng);
        const SegmentValues sv = segment_values(sigma, d);
        REQUIRE(sv.size() == k);
        CHECK(static_cast<int>(sv.values.size()) <= n + k - 1);
        for (int p = 1; p <= k; ++p) {
            std::vector<int> expected;
            for (int pos = d(p).lo; pos <= d(p).hi; ++pos) {
                expected.push_back(sigma(pos));
            }
            std::sort(expected.begin(), expected.end());
            CHECK(std::vector<int>(sv.of(p).begin(), sv.of(p).end()) == expected);
        }
    }
}

TEST_CASE("segment_values validates", "[dp]") {
    CHECK_THROWS_AS(segment_values(Permutation{1, 2}, SegmentDecomposition(2, {{2, 1}})), Error);
    CHECK_THROWS_AS(segment_values(Permutation{1, 2}, SegmentDecomposition(3, {{1, 1}})), Error);
}

TEST_CASE("count_respecting examples", "[dp]") {
    const PpmInstance intro({3, 2, 5, 4, 1}, {1, 3, 2});
    const SegmentDecomposition intro_d(5, {{1, 2}, {2, 4}, {4, 5}});
    CHECK(filtered_oracle(intro, intro_d) == 2);
    CHECK(count_respecting(intro, intro_d) == 2);

    const PpmInstance sample({8, 1, 3, 9, 5, 4, 2, 7, 6}, {5, 2, 3, 1, 4});
    const SegmentDecomposition sample_d(9, {{1, 2}, {2, 3}, {3, 6}, {6, 7}, {7, 9}});
    const Embedding marked{1, 3, 5, 7, 9};
    REQUIRE(is_solution(sample, marked));
    REQUIRE(respects(marked, sample_d));
    // Frozen from an independent enumeration: (1,3,5,7,8), (1,3,5,7,9), (1,3,6,7,8), (1,3,6,7,9).
    CHECK(filtered_oracle(sample, sample_d) == 4);
    CHECK(count_respecting(sample, sample_d) == 4);

    CHECK(count_respecting(PpmInstance({2, 1}, {1, 2}), SegmentDecomposition(2, {{1, 1}, {2, 2}})) == 0);

    SplitMix64 rng(1);
    for (int n = 1; n <= 40; ++n) {
        const PpmInstance single(random_permutation(n, rng), Permutation{1});
        CHECK(count_respecting(single, SegmentDecomposition(n, {{1, n}})) == n);
    }
}

TEST_CASE("count_respecting rejects mismatched or invalid decompositions", "[dp]") {
    const PpmInstance inst({3, 2, 5, 4, 1}, {1, 3, 2});
    auto kind = [&](const SegmentDecomposition& d) {
        try {
            count_respecting(inst, d);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::empty_input;
    };
    CHECK(kind(SegmentDecomposition(5, {{1, 2}, {2, 4}})) == ErrorKind::length_mismatch);
    CHECK(kind(SegmentDecomposition(6, {{1, 2}, {2, 4}, {4, 6}})) == ErrorKind::length_mismatch);
    CHECK(kind(SegmentDecomposition(5, {{1, 3}, {2, 4}, {4, 5}})) == ErrorKind::order_violation);
    CHECK(kind(SegmentDecomposition(5, {{1, 2}, {3, 2}, {4, 5}})) == ErrorKind::empty_segment);
}

TEST_CASE("count_respecting equals the filtered oracle on family decompositions, n <= 7", "[dp][exhaustive]") {
    for (int n = 1; n <= 7; ++n) {
        for (int k = 1; k <= n; ++k) {
            const auto family = selftest::guess_family(n, k);
            std::vector<Permutation> patterns;
            selftest::for_each_permutation(k, [&](const Permutation& p) { patterns.push_back(p); });
            selftest::for_each_permutation(n, [&](const Permutation& sigma) {
                // tally[pattern rank][decomposition] over all k-subsets of positions.
                std::vector<std::vector<std::uint64_t>> tally(patterns.size(), std::vector<std::uint64_t>(family.size()));
                std::vector<int> image(static_cast<std::size_t>(k));
                for (CombinationCursor c(n, k); c.valid(); c.advance()) {
                    const Embedding f(std::vector<int>(c.current().begin(), c.current().end()));
                    for (int i = 1; i <= k; ++i) {
                        image[static_cast<std::size_t>(i - 1)] = sigma(f(i));
                    }
                    const std::size_t id = lex_rank(pattern_of(image).one_line());
                    for (std::size_t d = 0; d < family.size(); ++d) {
                        tally[id][d] += respects(f, family[d]) ? 1 : 0;
                    }
                }
                for (std::size_t id = 0; id < patterns.size(); ++id) {
                    RespectingCounter counter(PpmInstance(sigma, patterns[id]));
                    for (std::size_t d = 0; d < family.size(); ++d) {
                        if (counter.count(family[d].segments()) != tally[id][d]) {
                            FAIL("sigma=" << format_permutation(sigma) << " pattern=" << format_permutation(patterns[id])
                                          << " d=" << format_decomposition(family[d]));
                        }
                    }
                }
            });
        }
    }
    SUCCEED();
}

TEST_CASE("count_respecting equals the filtered oracle on random decompositions", "[dp][property]") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 3000; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(12));
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const Permutation sigma = random_permutation(n, rng);
        const Permutation pattern = trial % 3 ? random_contained_pattern(sigma, k, rng) : random_permutation(k, rng);
        const PpmInstance inst(sigma, pattern);
        const auto d = random_decomposition(n, k, rng);
        INFO(format_permutation(sigma) << " / " << format_permutation(pattern) << " / " << format_decomposition(d));
        REQUIRE(count_respecting(inst, d) == filtered_oracle(inst, d));
    }
}

TEST_CASE("work stays linear: sparse layers and a forward-only cursor", "[dp][property]") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(200));
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const Permutation sigma = random_permutation(n, rng);
        const PpmInstance inst(sigma, random_contained_pattern(sigma, k, rng));
        const auto d = random_decomposition(n, k, rng);
        const SegmentValues sv = segment_values(sigma, d);
        DpStats stats;
        count_respecting(inst, d, &stats);
        CHECK(stats.cell_writes <= static_cast<std::uint64_t>(n + k));
        CHECK(stats.cursor_advances <= sv.values.size());
        CHECK(stats.bucket_appends == sv.values.size());
    }
}

TEST_CASE("values outside every segment do not matter", "[dp][property]") {
    SplitMix64 rng(8);
    int with_gaps = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(11));
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const auto d = random_decomposition(n, k, rng);
        std::vector<int> covered;
        std::vector<int> uncovered;
        for (int pos = 1; pos <= n; ++pos) {
            const bool in = std::any_of(d.segments().begin(), d.segments().end(),
                                        [&](const Segment& s) { return s.contains(pos); });
            (in ? covered : uncovered).push_back(pos);
        }
        with_gaps += uncovered.empty() ? 0 : 1;
        const Permutation sigma = random_permutation(n, rng);
        const Permutation pattern = random_contained_pattern(sigma, k, rng);

        // New values for the covered positions: a random subset, assigned in sigma's relative order.
        const Permutation shuffle = random_permutation(n, rng);
        std::vector<int> fresh(shuffle.one_line().begin(), shuffle.one_line().begin() + static_cast<long>(covered.size()));
        std::sort(fresh.begin(), fresh.end());
        std::vector<int> covered_values;
        for (int pos : covered) {
            covered_values.push_back(sigma(pos));
        }
        const Permutation order = pattern_of(covered_values);
        std::vector<int> rebuilt(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < covered.size(); ++i) {
            rebuilt[static_cast<std::size_t>(covered[i] - 1)] = fresh[static_cast<std::size_t>(order(static_cast<int>(i) + 1) - 1)];
        }
        std::vector<int> rest(shuffle.one_line().begin() + static_cast<long>(covered.size()), shuffle.one_line().end());
        for (std::size_t i = 0; i < uncovered.size(); ++i) {
            rebuilt[static_cast<std::size_t>(uncovered[i] - 1)] = rest[i];
        }
        const Permutation resigma(rebuilt);
        CHECK(count_respecting(PpmInstance(sigma, pattern), d) == count_respecting(PpmInstance(resigma, pattern), d));
    }
    CHECK(with_gaps > 100);
}

TEST_CASE("64-bit overflow escalates to exact counting", "[dp]") {
    // Identity text and pattern with 40 disjoint length-5 segments: every choice
    // of one position per segment is an occurrence, 5^40 > 2^64 of them.
    const int segments = 40;
    const int width = 5;
    const int n = segments * width;
    std::vector<Segment> segs;
    for (int i = 0; i < segments; ++i) {
        segs.push_back({i * width + 1, (i + 1) * width});
    }
    const PpmInstance inst(Permutation::identity(n), Permutation::identity(segments));
    const SegmentDecomposition d(n, segs);
    RespectingCounter counter(inst);
    CHECK_FALSE(counter.count_u64(d.segments()).has_value());
    const Count expected = boost::multiprecision::pow(Count(width), segments);
    CHECK(count_respecting(inst, d) == expected);
    CHECK(counter.count_exact(d.segments()) == expected);
}

TEST_CASE("exact and 64-bit paths agree", "[dp][property]") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(60));
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const Permutation sigma = random_permutation(n, rng);
        const PpmInstance inst(sigma, random_contained_pattern(sigma, k, rng));
        const auto d = random_decomposition(n, k, rng);
        RespectingCounter counter(inst);
        const auto fast = counter.count_u64(d.segments());
        REQUIRE(fast.has_value());
        CHECK(Count(*fast) == counter.count_exact(d.segments()));
    }
}
