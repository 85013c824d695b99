#include <catch_amalgamated.hpp>

#include <vector>

#include "ppm/random.hpp"

using namespace ppm;

// Reference values come from a separate transcription of docs/FORMAT.md.

TEST_CASE("SplitMix64 reference stream", "[random]") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);
}

TEST_CASE("random_permutation reference outputs", "[random]") {
    CHECK(random_permutation(10, 42) == Permutation{1, 10, 6, 9, 7, 5, 8, 3, 2, 4});
    CHECK(random_permutation(12, 7) == Permutation{11, 12, 6, 2, 8, 5, 9, 3, 10, 7, 1, 4});
    CHECK(random_permutation(5, 2024) == Permutation{4, 5, 1, 3, 2});
    CHECK(random_permutation(1, 5) == Permutation{1});
    CHECK_THROWS_AS(random_permutation(0, 5), Error);
}

TEST_CASE("below stays in range and covers it", "[random]") {
    SplitMix64 rng(9);
    std::vector<int> hits(7);
    for (int i = 0; i < 7000; ++i) {
        const auto x = rng.below(7);
        REQUIRE(x < 7);
        ++hits[x];
    }
    for (int h : hits) {
        CHECK(h > 800);
        CHECK(h < 1200);
    }
    CHECK(rng.below(1) == 0);
}

TEST_CASE("random_contained_pattern is a pattern of sigma", "[random]") {
    SplitMix64 rng(10);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(20));
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const Permutation sigma = random_permutation(n, rng);
        CHECK(random_contained_pattern(sigma, k, rng).size() == k);
    }
    CHECK(random_contained_pattern(Permutation{3, 1, 2}, 3, rng) == Permutation{3, 1, 2});
}
