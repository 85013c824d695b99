#ifndef PPM_SELFTEST_HPP
#define PPM_SELFTEST_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ppm/combination.hpp"
#include "ppm/count.hpp"
#include "ppm/dp.hpp"
#include "ppm/lowerbound.hpp"
#include "ppm/oracle.hpp"
#include "ppm/permutation.hpp"
#include "ppm/random.hpp"
#include "ppm/segments.hpp"
#include "ppm/solver.hpp"

namespace ppm::selftest {

struct Options {
    /// Largest text length of the exhaustive instance corpora.
    int max_n = 6;
    /// Largest n for the structural (family size) checks.
    int max_family_n = 20;
    std::uint64_t seed = 0x5eed;
};

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

/// Calls fn(p) for every permutation of length n, in lexicographic order.
inline void for_each_permutation(int n, const std::function<void(const Permutation&)>& fn) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    do {
        fn(Permutation(v));
    } while (std::next_permutation(v.begin(), v.end()));
}

/// Calls fn(instance) for every (sigma, pattern) with 1 <= k <= n <= max_n.
inline void for_each_instance(int max_n, const std::function<void(const PpmInstance&)>& fn) {
    std::vector<std::vector<Permutation>> by_length(static_cast<std::size_t>(max_n) + 1);
    for (int len = 1; len <= max_n; ++len) {
        for_each_permutation(len, [&](const Permutation& p) { by_length[static_cast<std::size_t>(len)].push_back(p); });
    }
    for (int n = 1; n <= max_n; ++n) {
        for (const Permutation& sigma : by_length[static_cast<std::size_t>(n)]) {
            for (int k = 1; k <= n; ++k) {
                for (const Permutation& pattern : by_length[static_cast<std::size_t>(k)]) {
                    fn(PpmInstance(sigma, pattern));
                }
            }
        }
    }
}

/// Members of the guess family for (n, k), materialized.
inline std::vector<SegmentDecomposition> guess_family(int n, int k) {
    std::vector<SegmentDecomposition> family;
    for (GuessStream s(n, k); s.valid(); s.advance()) {
        family.push_back(decomposition_of_guess(s.guess(), n, k));
    }
    return family;
}

namespace detail {

inline std::string describe(const PpmInstance& inst) {
    return "sigma=(" + format_permutation(inst.sigma()) + ") pattern=(" + format_permutation(inst.pattern()) + ")";
}

class FamilyCache {
public:
    const std::vector<SegmentDecomposition>& get(int n, int k) {
        auto it = cache_.find({n, k});
        if (it == cache_.end()) {
            it = cache_.emplace(std::make_pair(n, k), guess_family(n, k)).first;
        }
        return it->second;
    }

private:
    std::map<std::pair<int, int>, std::vector<SegmentDecomposition>> cache_;
};

}

inline SuiteResult parse_roundtrip(const Options& opt) {
    SuiteResult r{"parse-roundtrip", true, {}};
    for (int n = 1; n <= opt.max_n && r.passed; ++n) {
        for_each_permutation(n, [&](const Permutation& p) {
            if (r.passed && parse_permutation(format_permutation(p)) != p) {
                r = {r.name, false, format_permutation(p)};
            }
        });
    }
    return r;
}

inline SuiteResult solution_predicate(const Options& opt) {
    SuiteResult r{"solution-predicate", true, {}};
    for_each_instance(std::min(opt.max_n, 5), [&](const PpmInstance& inst) {
        for (CombinationCursor c(inst.n(), inst.k()); r.passed && c.valid(); c.advance()) {
            const Embedding f(std::vector<int>(c.current().begin(), c.current().end()));
            std::vector<int> image;
            for (int pos : f.positions()) {
                image.push_back(inst.sigma()(pos));
            }
            if (is_solution(inst, f) != (pattern_of(image) == inst.pattern())) {
                r = {r.name, false, detail::describe(inst) + " f=" + format_embedding(f)};
            }
        }
    });
    return r;
}

inline SuiteResult dp_oracle(const Options& opt) {
    SuiteResult r{"dp-oracle", true, {}};
    detail::FamilyCache families;
    for_each_instance(opt.max_n, [&](const PpmInstance& inst) {
        if (!r.passed) {
            return;
        }
        const auto solutions = brute_force_enumerate(inst);
        for (const SegmentDecomposition& d : families.get(inst.n(), inst.k())) {
            const auto expected = std::count_if(solutions.begin(), solutions.end(),
                                                [&](const Embedding& f) { return respects(f, d); });
            if (count_respecting(inst, d) != expected) {
                r = {r.name, false, detail::describe(inst) + " d=" + format_decomposition(d)};
                return;
            }
        }
    });
    return r;
}

inline SuiteResult unique_cover(const Options& opt) {
    SuiteResult r{"lemma6-uniqueness", true, {}};
    detail::FamilyCache families;
    for_each_instance(opt.max_n, [&](const PpmInstance& inst) {
        if (!r.passed) {
            return;
        }
        const auto& family = families.get(inst.n(), inst.k());
        for (const Embedding& f : brute_force_enumerate(inst)) {
            int hits = 0;
            const SegmentDecomposition* hit = nullptr;
            for (const SegmentDecomposition& d : family) {
                if (respects(f, d)) {
                    ++hits;
                    hit = &d;
                }
            }
            if (hits != 1 || *hit != canonical_decomposition(f, inst.n())) {
                r = {r.name, false, detail::describe(inst) + " f=" + format_embedding(f) + " hits=" + std::to_string(hits)};
                return;
            }
        }
    });
    return r;
}

inline SuiteResult family_cardinality(const Options& opt) {
    SuiteResult r{"family-cardinality", true, {}};
    for (int n = 1; n <= opt.max_family_n && r.passed; ++n) {
        for (int k = 1; k <= n && r.passed; ++k) {
            std::uint64_t seen = 0;
            for (GuessStream s(n, k); s.valid(); s.advance()) {
                ++seen;
                if (validate_decomposition(decomposition_of_guess(s.guess(), n, k)) != DecompositionCheck::ok) {
                    r = {r.name, false, "invalid S_g at n=" + std::to_string(n) + " k=" + std::to_string(k)};
                    break;
                }
            }
            if (r.passed && Count(seen) != family_size(n, k)) {
                r = {r.name, false, "n=" + std::to_string(n) + " k=" + std::to_string(k) + " size " + std::to_string(seen)};
            }
        }
    }
    return r;
}

inline SuiteResult lowerbound_distinct(const Options& opt) {
    SuiteResult r{"lowerbound-family", true, {}};
    for (int n = 1; n <= std::min(opt.max_family_n, lowerbound_max_n) && r.passed; ++n) {
        for (int k = 1; k <= n && r.passed; ++k) {
            if (k / 2 > (n - 1) / 2) {
                continue;
            }
            const auto family = lowerbound_family(n, k);
            if (Count(family.size()) != binomial((n - 1) / 2, k / 2)) {
                r = {r.name, false, "n=" + std::to_string(n) + " k=" + std::to_string(k)};
            }
        }
    }
    return r;
}

inline SuiteResult oracle_equivalence(const Options& opt) {
    SuiteResult r{"oracle-equivalence", true, {}};
    SolverOptions general;
    general.identity_shortcut = false;
    for_each_instance(opt.max_n, [&](const PpmInstance& inst) {
        if (!r.passed) {
            return;
        }
        const Count expected = brute_force_count(inst);
        if (count_ppm(inst, general) != expected || bkm_count(inst) != expected) {
            r = {r.name, false, detail::describe(inst)};
        }
    });
    return r;
}

inline SuiteResult detect_consistency(const Options& opt) {
    SuiteResult r{"detect-consistency", true, {}};
    SolverOptions general;
    general.identity_shortcut = false;
    for_each_instance(opt.max_n, [&](const PpmInstance& inst) {
        if (r.passed && detect_ppm(inst, general) != (brute_force_count(inst) > 0)) {
            r = {r.name, false, detail::describe(inst)};
        }
    });
    return r;
}

inline SuiteResult parallel_determinism(const Options& opt) {
    SuiteResult r{"parallel-determinism", true, {}};
    SplitMix64 rng(opt.seed);
    const int n = 2 * opt.max_n + 4;
    for (int trial = 0; trial < 20 && r.passed; ++trial) {
        const Permutation sigma = random_permutation(n, rng);
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const PpmInstance inst(sigma, random_contained_pattern(sigma, k, rng));
        SolverOptions one;
        SolverOptions many;
        many.threads = 4;
        if (count_ppm(inst, one) != count_ppm(inst, many) || detect_ppm(inst, one) != detect_ppm(inst, many)) {
            r = {r.name, false, detail::describe(inst)};
        }
    }
    return r;
}

inline SuiteResult generator_determinism(const Options& opt) {
    SuiteResult r{"generator-determinism", true, {}};
    for (int n = 1; n <= 4 * opt.max_n && r.passed; ++n) {
        const Permutation a = random_permutation(n, opt.seed + static_cast<std::uint64_t>(n));
        const Permutation b = random_permutation(n, opt.seed + static_cast<std::uint64_t>(n));
        if (a != b || parse_permutation(format_permutation(a)) != a) {
            r = {r.name, false, "n=" + std::to_string(n)};
        }
    }
    return r;
}

/// Runs every suite, printing "<name>: pass" or "<name>: FAIL <detail>" per suite.
inline bool run_all(const Options& opt, std::ostream& out) {
    using Suite = SuiteResult (*)(const Options&);
    constexpr Suite suites[] = {
        parse_roundtrip,      solution_predicate, dp_oracle,          unique_cover,    family_cardinality,
        lowerbound_distinct, oracle_equivalence, detect_consistency, parallel_determinism, generator_determinism,
    };
    bool all = true;
    for (Suite suite : suites) {
        const SuiteResult res = suite(opt);
        out << res.name << ": " << (res.passed ? "pass" : "FAIL " + res.detail) << '\n';
        all = all && res.passed;
    }
    return all;
}

}

#endif
