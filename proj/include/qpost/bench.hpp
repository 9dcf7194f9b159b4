// Copyright 2026 qpost developers
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qpost/correction.hpp"
#include "qpost/errors.hpp"
#include "qpost/io.hpp"
#include "qpost/ising.hpp"
#include "qpost/sampler.hpp"

// Statistical comparison harness. For each instance of a suite and each
// sample-set size s, every method consumes the *same* drawn sample set; a
// method "wins" an instance when its best energy is strictly lower, exact
// equality is a tie, and the one-sided sign test turns win/loss counts into a
// p-value. Robustness is the variance of a method's best energy when the
// whole pipeline is rerun with fresh derived seeds.

namespace qpost {

/// One-sided sign-test p-value: the probability of at least n_b successes in
/// n_b + n_w fair coin flips. Evaluated as a log-domain leading term followed
/// by incremental binomial ratios, which stays accurate for totals well past
/// 10^4 and is monotone non-increasing in n_b for a fixed total.
inline double sign_test_p(long long n_b, long long n_w) {
    if (n_b < 0 || n_w < 0) throw ContractError("sign_test_p: counts must be non-negative");
    const long long total = n_b + n_w;
    // All 2^total outcomes qualify when n_b = 0 (this covers total = 0 too).
    if (n_b == 0) return 1.0;
    const long double ln2 = 0.6931471805599453094172321214581766L;
    const long double log_first = std::lgammal(static_cast<long double>(total) + 1) -
                                  std::lgammal(static_cast<long double>(n_b) + 1) -
                                  std::lgammal(static_cast<long double>(total - n_b) + 1) -
                                  static_cast<long double>(total) * ln2;
    long double term = std::expl(log_first);
    long double sum = 0.0L;
    for (long long k = n_b; k <= total; ++k) {
        sum += term;
        term *= static_cast<long double>(total - k) / static_cast<long double>(k + 1);
    }
    const double p = static_cast<double>(sum);
    return p < 1.0 ? p : 1.0;
}

/// Significance bands for an expected-winner comparison.
inline std::string significance_label(double p) {
    if (p < 0.05) return "significant";
    if (p >= 0.95) return "expected_winner_incorrect";
    return "not_significant";
}

/// Population variance (n divisor).
inline double population_variance(std::span<const double> values) {
    if (values.empty()) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double acc = 0.0;
    for (double v : values) acc += (v - mean) * (v - mean);
    return acc / static_cast<double>(values.size());
}

/// A correction method as named on the command line: raw | sqc | mqc |
/// rmqc[:r].
struct MethodSpec {
    enum class Kind { RawBest, Sqc, Mqc, Rmqc };

    Kind kind = Kind::RawBest;
    int r = 5;  // RMQC passes; ignored by the other kinds
};

inline MethodSpec parse_method(const std::string& token) {
    if (token == "raw") return {MethodSpec::Kind::RawBest, 0};
    if (token == "sqc") return {MethodSpec::Kind::Sqc, 0};
    if (token == "mqc") return {MethodSpec::Kind::Mqc, 0};
    if (token == "rmqc") return {MethodSpec::Kind::Rmqc, 5};
    if (token.rfind("rmqc:", 0) == 0) {
        const int r = std::atoi(token.c_str() + 5);
        if (r < 1) throw ContractError("method '" + token + "': r must be >= 1");
        return {MethodSpec::Kind::Rmqc, r};
    }
    throw ContractError("unknown method '" + token + "' (expected raw, sqc, mqc or rmqc[:r])");
}

inline std::string method_id(const MethodSpec& method) {
    switch (method.kind) {
        case MethodSpec::Kind::RawBest: return "raw";
        case MethodSpec::Kind::Sqc: return "sqc";
        case MethodSpec::Kind::Mqc: return "mqc";
        case MethodSpec::Kind::Rmqc: return "rmqc:" + std::to_string(method.r);
    }
    throw ContractError("unknown method kind");
}

/// Applies one method to a drawn sample set and returns the surviving
/// configuration. "raw" selects the lowest-energy input (earliest on ties);
/// "sqc" runs single-flip descent from every input and keeps the best result,
/// which is how a per-sample local search is scored against set-level
/// methods. `seed` feeds RMQC's shuffles only.
inline SpinVector apply_method(const IsingModel& model, const SampleSet& samples,
                               const MethodSpec& method, std::uint64_t seed = 0,
                               int workers = 1) {
    switch (method.kind) {
        case MethodSpec::Kind::RawBest: {
            int best = 0;
            double best_energy = energy(model, samples[0]);
            for (int k = 1; k < samples.size(); ++k) {
                const double e = energy(model, samples[k]);
                if (e < best_energy) {
                    best_energy = e;
                    best = k;
                }
            }
            return samples[best];
        }
        case MethodSpec::Kind::Sqc: {
            SpinVector best = sqc(model, samples[0]);
            double best_energy = energy(model, best);
            for (int k = 1; k < samples.size(); ++k) {
                SpinVector candidate = sqc(model, samples[k]);
                const double e = energy(model, candidate);
                if (e < best_energy) {
                    best_energy = e;
                    best = std::move(candidate);
                }
            }
            return best;
        }
        case MethodSpec::Kind::Mqc: return mqc(model, samples, nullptr, workers);
        case MethodSpec::Kind::Rmqc: return rmqc(model, samples, method.r, seed, workers);
    }
    throw ContractError("unknown method kind");
}

/// Outcome of "winner is expected to beat baseline" over a set of instances.
struct ComparisonOutcome {
    std::string winner;
    std::string baseline;
    int s = 0;  // sample-set size the energies were obtained with
    long long n_better = 0;
    long long n_worse = 0;
    long long n_tie = 0;
    double p_value = 1.0;
    std::string significance;
};

/// Counts instance-wise wins of `winner_energies` over `baseline_energies`
/// (strictly lower is a win, exact equality a tie) and attaches the sign-test
/// p-value. Both vectors must cover the same instances in the same order.
inline ComparisonOutcome compare_methods(const std::string& winner, const std::string& baseline,
                                         int s, std::span<const double> winner_energies,
                                         std::span<const double> baseline_energies) {
    if (winner_energies.size() != baseline_energies.size()) {
        throw ContractError("compare_methods: instance coverage differs (" +
                            std::to_string(winner_energies.size()) + " vs " +
                            std::to_string(baseline_energies.size()) + ")");
    }
    ComparisonOutcome out;
    out.winner = winner;
    out.baseline = baseline;
    out.s = s;
    for (std::size_t k = 0; k < winner_energies.size(); ++k) {
        if (winner_energies[k] < baseline_energies[k]) {
            ++out.n_better;
        } else if (winner_energies[k] > baseline_energies[k]) {
            ++out.n_worse;
        } else {
            ++out.n_tie;
        }
    }
    out.p_value = sign_test_p(out.n_better, out.n_worse);
    out.significance = significance_label(out.p_value);
    return out;
}

struct PerInstanceRow {
    std::string instance;
    std::string method;
    int s = 0;
    double best_energy = 0.0;
    double wall_seconds = 0.0;
};

struct RobustnessRow {
    std::string cls;
    int s = 0;
    std::string method;
    double mean_variance = 0.0;          // mean over instances
    std::vector<double> per_instance;    // variance across repeats, per instance
};

struct BenchConfig {
    std::vector<MethodSpec> methods = {{MethodSpec::Kind::RawBest, 0},
                                       {MethodSpec::Kind::Sqc, 0},
                                       {MethodSpec::Kind::Mqc, 0}};
    std::vector<int> reads_grid = {100, 200, 500, 1000};
    int repeats = 50;
    std::uint64_t master_seed = 1;
    SamplerConfig sampler;  // num_reads and seed are overridden per run
    int workers = 1;
};

struct BenchReport {
    SuiteManifest suite;
    BenchConfig config;
    std::vector<PerInstanceRow> rows;              // repeat 0
    std::vector<ComparisonOutcome> comparisons;    // repeat 0, consecutive-power pairs
    std::vector<RobustnessRow> robustness;         // across all repeats (when repeats >= 2)
};

namespace detail {

// Derived seed for one (purpose, instance, s index, repeat) cell. Purpose
// separates the sampling stream from RMQC's shuffle stream.
inline std::uint64_t bench_seed(std::uint64_t master, std::uint64_t purpose,
                                std::size_t instance, std::size_t s_index, int repeat) {
    std::uint64_t s = derive_seed(master, purpose);
    s = derive_seed(s, instance);
    s = derive_seed(s, s_index);
    return derive_seed(s, static_cast<std::uint64_t>(repeat));
}

}  // namespace detail

/// Runs every configured method over every instance and sample size.
/// Comparisons pair each method with every later one in the configured list
/// (the later method is the expected winner). All seeds are derived per
/// (instance, s, repeat), so reports are identical for any `workers` count;
/// only wall-clock fields vary between runs.
inline BenchReport run_bench(const SuiteManifest& manifest, const BenchConfig& config) {
    if (config.repeats < 1) throw ContractError("run_bench: repeats must be >= 1");
    if (config.methods.empty()) throw ContractError("run_bench: no methods configured");
    if (config.workers < 1) throw ContractError("run_bench: workers must be >= 1");
    for (int s : config.reads_grid) {
        if (s < 1) throw ContractError("run_bench: sample counts must be >= 1");
    }

    const std::size_t instances = manifest.seeds.size();
    const std::size_t n_methods = config.methods.size();
    const std::size_t n_sizes = config.reads_grid.size();

    // energies[repeat][s_index][method][instance]
    auto idx = [&](std::size_t s_index, std::size_t m, std::size_t k) {
        return (s_index * n_methods + m) * instances + k;
    };
    std::vector<std::vector<double>> energies(
        static_cast<std::size_t>(config.repeats),
        std::vector<double>(n_sizes * n_methods * instances, 0.0));
    std::vector<double> wall(n_sizes * n_methods * instances, 0.0);

    auto run_instances = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const IsingModel model = suite_instance(manifest, k);
            for (std::size_t s_index = 0; s_index < n_sizes; ++s_index) {
                for (int repeat = 0; repeat < config.repeats; ++repeat) {
                    SamplerConfig sampler = config.sampler;
                    sampler.num_reads = config.reads_grid[s_index];
                    sampler.seed = detail::bench_seed(config.master_seed, 0xA, k, s_index, repeat);
                    const SampleSet samples = draw_samples(model, sampler);
                    for (std::size_t m = 0; m < n_methods; ++m) {
                        const std::uint64_t rmqc_seed =
                            detail::bench_seed(config.master_seed, 0xB, k, s_index, repeat);
                        const auto start = std::chrono::steady_clock::now();
                        const SpinVector out =
                            apply_method(model, samples, config.methods[m], rmqc_seed);
                        const auto stop = std::chrono::steady_clock::now();
                        energies[repeat][idx(s_index, m, k)] = energy(model, out);
                        if (repeat == 0) {
                            wall[idx(s_index, m, k)] =
                                std::chrono::duration<double>(stop - start).count();
                        }
                    }
                }
            }
        }
    };

    if (config.workers == 1 || instances < 2) {
        run_instances(0, instances);
    } else {
        const std::size_t nthreads = std::min<std::size_t>(config.workers, instances);
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (std::size_t t = 0; t < nthreads; ++t) {
            pool.emplace_back(run_instances, instances * t / nthreads,
                              instances * (t + 1) / nthreads);
        }
        for (auto& th : pool) th.join();
    }

    BenchReport report;
    report.suite = manifest;
    report.config = config;

    for (std::size_t s_index = 0; s_index < n_sizes; ++s_index) {
        for (std::size_t m = 0; m < n_methods; ++m) {
            for (std::size_t k = 0; k < instances; ++k) {
                report.rows.push_back({instance_id(manifest, k), method_id(config.methods[m]),
                                       config.reads_grid[s_index],
                                       energies[0][idx(s_index, m, k)],
                                       wall[idx(s_index, m, k)]});
            }
        }
    }

    for (std::size_t s_index = 0; s_index < n_sizes; ++s_index) {
        for (std::size_t base = 0; base < n_methods; ++base) {
            for (std::size_t win = base + 1; win < n_methods; ++win) {
                std::vector<double> winner_e(instances), baseline_e(instances);
                for (std::size_t k = 0; k < instances; ++k) {
                    winner_e[k] = energies[0][idx(s_index, win, k)];
                    baseline_e[k] = energies[0][idx(s_index, base, k)];
                }
                report.comparisons.push_back(compare_methods(
                    method_id(config.methods[win]), method_id(config.methods[base]),
                    config.reads_grid[s_index], winner_e, baseline_e));
            }
        }
    }

    if (config.repeats >= 2) {
        for (std::size_t s_index = 0; s_index < n_sizes; ++s_index) {
            for (std::size_t m = 0; m < n_methods; ++m) {
                RobustnessRow row;
                row.cls = to_string(manifest.cls);
                row.s = config.reads_grid[s_index];
                row.method = method_id(config.methods[m]);
                row.per_instance.resize(instances);
                std::vector<double> across(static_cast<std::size_t>(config.repeats));
                for (std::size_t k = 0; k < instances; ++k) {
                    for (int repeat = 0; repeat < config.repeats; ++repeat) {
                        across[static_cast<std::size_t>(repeat)] =
                            energies[static_cast<std::size_t>(repeat)][idx(s_index, m, k)];
                    }
                    row.per_instance[k] = population_variance(across);
                }
                double mean = 0.0;
                for (double v : row.per_instance) mean += v;
                row.mean_variance = instances ? mean / static_cast<double>(instances) : 0.0;
                report.robustness.push_back(std::move(row));
            }
        }
    }
    return report;
}

/// Robustness of a single method at one sample size: rerun the pipeline
/// `repeats` times per instance with fresh derived seeds and report the
/// variance of the best energy. Requires repeats >= 2.
inline RobustnessRow robustness_report(const SuiteManifest& manifest, const MethodSpec& method,
                                       int repeats, int s, const SamplerConfig& sampler_base,
                                       std::uint64_t master_seed) {
    if (repeats < 2) throw ContractError("robustness_report: repeats must be >= 2");
    BenchConfig config;
    config.methods = {method};
    config.reads_grid = {s};
    config.repeats = repeats;
    config.master_seed = master_seed;
    config.sampler = sampler_base;
    const BenchReport report = run_bench(manifest, config);
    return report.robustness.front();
}

}  // namespace qpost
