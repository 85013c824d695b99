// Command-line front end: count, detect, gen, selftest, bench.
//
// Exit codes: 0 success, 1 self-test failure, 2 usage or input error.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ppm/ppm.hpp"
#include "ppm/selftest.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_selftest_failed = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Algo { fast, bkm, brute };

struct InstanceArgs {
    std::string algo = "fast";
    std::string sigma;
    std::string sigma_file;
    std::string pattern;
    std::string pattern_file;
    std::string instance_file;
    int threads = 1;
};

Algo parse_algo(const std::string& name) {
    if (name == "fast") return Algo::fast;
    if (name == "bkm") return Algo::bkm;
    if (name == "brute") return Algo::brute;
    throw UsageError("unknown algorithm '" + name + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ppm::PpmInstance load_instance(const InstanceArgs& a) {
    if (!a.instance_file.empty()) {
        if (!a.sigma.empty() || !a.sigma_file.empty() || !a.pattern.empty() || !a.pattern_file.empty()) {
            throw UsageError("--instance cannot be combined with --sigma/--pattern");
        }
        return ppm::parse_instance(read_file(a.instance_file));
    }
    auto source = [](const std::string& inline_text, const std::string& path, const char* what) {
        if (!inline_text.empty() && !path.empty()) {
            throw UsageError(std::string("give either --") + what + " or --" + what + "-file, not both");
        }
        if (inline_text.empty() && path.empty()) {
            throw UsageError(std::string("missing --") + what);
        }
        return inline_text.empty() ? read_file(path) : inline_text;
    };
    auto sigma = ppm::parse_permutation(source(a.sigma, a.sigma_file, "sigma"));
    auto pattern = ppm::parse_permutation(source(a.pattern, a.pattern_file, "pattern"));
    return ppm::PpmInstance(std::move(sigma), std::move(pattern));
}

ppm::Count count_with(Algo algo, const ppm::PpmInstance& inst, int threads) {
    switch (algo) {
    case Algo::fast: {
        ppm::SolverOptions opt;
        opt.threads = threads;
        return ppm::count_ppm(inst, opt);
    }
    case Algo::bkm: return ppm::bkm_count(inst);
    case Algo::brute: return ppm::brute_force_count(inst);
    }
    return 0;
}

int cmd_count(const InstanceArgs& a) {
    const Algo algo = parse_algo(a.algo);
    const auto inst = load_instance(a);
    std::cout << ppm::to_string(count_with(algo, inst, a.threads)) << '\n';
    return exit_ok;
}

int cmd_detect(const InstanceArgs& a) {
    const Algo algo = parse_algo(a.algo);
    const auto inst = load_instance(a);
    bool found = false;
    if (algo == Algo::fast) {
        ppm::SolverOptions opt;
        opt.threads = a.threads;
        found = ppm::detect_ppm(inst, opt);
    } else {
        found = count_with(algo, inst, a.threads) > 0;
    }
    std::cout << (found ? "true" : "false") << '\n';
    return exit_ok;
}

int cmd_gen(int n, std::uint64_t seed) {
    if (n < 1) {
        throw UsageError("gen needs n >= 1");
    }
    std::cout << ppm::format_permutation(ppm::random_permutation(n, seed)) << '\n';
    return exit_ok;
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& text) {
    std::vector<std::pair<int, int>> pairs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw UsageError("pair '" + item + "' is not n:k");
        }
        int n = 0;
        int k = 0;
        try {
            std::size_t used_n = 0;
            std::size_t used_k = 0;
            n = std::stoi(item.substr(0, colon), &used_n);
            k = std::stoi(item.substr(colon + 1), &used_k);
            if (used_n != colon || used_k != item.size() - colon - 1) {
                throw std::invalid_argument(item);
            }
        } catch (const std::logic_error&) {
            throw UsageError("pair '" + item + "' is not n:k");
        }
        if (k < 1 || k > n) {
            throw UsageError("pair '" + item + "' needs 1 <= k <= n");
        }
        pairs.emplace_back(n, k);
    }
    if (pairs.empty()) {
        throw UsageError("--pairs is empty");
    }
    return pairs;
}

int cmd_bench(const std::string& algo_name, const std::string& pairs_text, std::uint64_t seed, int reps, int threads) {
    const Algo algo = parse_algo(algo_name);
    if (reps < 1) {
        throw UsageError("--reps must be >= 1");
    }
    const auto pairs = parse_pairs(pairs_text);
    std::cout << "algo,n,k,decompositions,count,nanos_median\n";
    for (const auto& [n, k] : pairs) {
        ppm::SplitMix64 rng(seed);
        const ppm::Permutation sigma = ppm::random_permutation(n, rng);
        const ppm::PpmInstance inst(sigma, ppm::random_contained_pattern(sigma, k, rng));
        ppm::Count decompositions;
        switch (algo) {
        case Algo::fast: decompositions = ppm::family_size(n, k); break;
        case Algo::bkm: {
            ppm::BkmStats stats;
            ppm::bkm_count(inst, &stats);
            decompositions = stats.surviving;
            break;
        }
        case Algo::brute: decompositions = ppm::binomial(n, k); break;
        }
        std::vector<std::int64_t> nanos;
        ppm::Count count;
        for (int r = 0; r < reps; ++r) {
            const auto start = std::chrono::steady_clock::now();
            count = count_with(algo, inst, threads);
            const auto stop = std::chrono::steady_clock::now();
            nanos.push_back(std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
        }
        std::nth_element(nanos.begin(), nanos.begin() + reps / 2, nanos.end());
        std::cout << algo_name << ',' << n << ',' << k << ',' << ppm::to_string(decompositions) << ','
                  << ppm::to_string(count) << ',' << nanos[static_cast<std::size_t>(reps / 2)] << '\n';
    }
    return exit_ok;
}

void add_instance_options(CLI::App* sub, InstanceArgs& a) {
    sub->add_option("--algo", a.algo, "fast, bkm or brute")->capture_default_str();
    sub->add_option("--sigma", a.sigma, "text permutation, one-line notation");
    sub->add_option("--sigma-file", a.sigma_file, "file holding the text permutation");
    sub->add_option("--pattern", a.pattern, "pattern permutation, one-line notation");
    sub->add_option("--pattern-file", a.pattern_file, "file holding the pattern permutation");
    sub->add_option("--instance", a.instance_file, "file: sigma on line 1, pattern on line 2");
    sub->add_option("--threads", a.threads, "worker threads (fast only)")->capture_default_str()->check(CLI::PositiveNumber);
}

}

int main(int argc, char** argv) {
    CLI::App app{"Exact permutation pattern matching: count and detect occurrences."};
    app.require_subcommand(1);

    InstanceArgs count_args;
    auto* count = app.add_subcommand("count", "print the number of occurrences");
    add_instance_options(count, count_args);

    InstanceArgs detect_args;
    auto* detect = app.add_subcommand("detect", "print true if the pattern occurs");
    add_instance_options(detect, detect_args);

    int gen_n = 0;
    std::uint64_t gen_seed = 0;
    auto* gen = app.add_subcommand("gen", "print a seeded uniformly random permutation");
    gen->add_option("-n,--n", gen_n, "length")->required();
    gen->add_option("--seed", gen_seed, "64-bit seed")->capture_default_str();

    ppm::selftest::Options self_opt;
    auto* selftest = app.add_subcommand("selftest", "run the built-in invariant suites");
    selftest->add_option("--max-n", self_opt.max_n, "largest n of the exhaustive corpora")
        ->capture_default_str()
        ->check(CLI::Range(1, 8));
    selftest->add_option("--seed", self_opt.seed, "seed for the randomized suites")->capture_default_str();

    std::string bench_algo = "fast";
    std::string bench_pairs;
    std::uint64_t bench_seed = 1;
    int bench_reps = 5;
    int bench_threads = 1;
    auto* bench = app.add_subcommand("bench", "time one algorithm over n:k pairs, CSV on stdout");
    bench->add_option("--algo", bench_algo, "fast, bkm or brute")->capture_default_str();
    bench->add_option("--pairs", bench_pairs, "comma-separated n:k list")->required();
    bench->add_option("--seed", bench_seed, "instance seed")->capture_default_str();
    bench->add_option("--reps", bench_reps, "repetitions per pair")->capture_default_str();
    bench->add_option("--threads", bench_threads, "worker threads (fast only)")->capture_default_str()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "ppm: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (count->parsed()) return cmd_count(count_args);
        if (detect->parsed()) return cmd_detect(detect_args);
        if (gen->parsed()) return cmd_gen(gen_n, gen_seed);
        if (bench->parsed()) return cmd_bench(bench_algo, bench_pairs, bench_seed, bench_reps, bench_threads);
        if (selftest->parsed()) {
            return ppm::selftest::run_all(self_opt, std::cout) ? exit_ok : exit_selftest_failed;
        }
    } catch (const ppm::Error& e) {
        std::cerr << "ppm: " << e.what() << '\n';
        return exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "ppm: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
