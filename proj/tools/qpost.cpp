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

// Benchmark CLI: generate random instances, draw sample sets, apply the
// correction methods, and run the statistical comparison harness.
//
// Exit codes: 0 success, 1 usage error, 2 data or contract error.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpost/qpost.hpp"

namespace fs = std::filesystem;

namespace {

struct GenerateOptions {
    std::string cls;
    std::vector<int> spec{4, 4, 4};
    int count = 50;
    std::uint64_t seed = 1;
    std::string out_dir;
};

void run_generate(const GenerateOptions& opt) {
    const qpost::CoefficientClass cls = qpost::coefficient_class_from_string(opt.cls);
    const qpost::ChimeraSpec spec{opt.spec[0], opt.spec[1], opt.spec[2]};
    if (opt.count < 1) throw qpost::ContractError("generate: --count must be >= 1");
    qpost::SuiteManifest manifest;
    manifest.cls = cls;
    manifest.spec = spec;
    manifest.seeds.reserve(static_cast<std::size_t>(opt.count));
    for (int k = 0; k < opt.count; ++k) {
        manifest.seeds.push_back(qpost::derive_seed(opt.seed, static_cast<std::uint64_t>(k)));
    }
    fs::create_directories(opt.out_dir);
    qpost::write_manifest(manifest, fs::path(opt.out_dir) / "manifest.json");
    const auto edges = qpost::chimera_edges(spec);
    for (int k = 0; k < opt.count; ++k) {
        const qpost::IsingModel model = qpost::generate_instance(
            edges, spec.num_vertices(), cls, manifest.seeds[static_cast<std::size_t>(k)]);
        qpost::write_instance(model, fs::path(opt.out_dir) /
                                         (qpost::instance_id(manifest, k) + ".json"));
    }
    std::cout << "wrote " << opt.count << " " << opt.cls << " instances ("
              << spec.num_vertices() << " spins each) and manifest.json to " << opt.out_dir
              << "\n";
}

struct SampleOptions {
    std::string instance;
    std::string out;
    qpost::SamplerConfig config;
    std::string mode = "independent";
};

void run_sample(const SampleOptions& opt) {
    const qpost::IsingModel model = qpost::read_instance(opt.instance);
    qpost::SamplerConfig config = opt.config;
    config.mode = qpost::correlation_mode_from_string(opt.mode);
    const qpost::SampleSet samples = qpost::draw_samples(model, config);
    qpost::write_samples(samples, opt.out);
    fs::path meta(opt.out);
    meta.replace_extension(".meta.json");
    qpost::detail::store_json(qpost::json{{"config", qpost::sampler_config_to_json(config)}},
                              meta);
    std::cout << "wrote " << samples.size() << " samples to " << opt.out << "\n";
}

struct CorrectOptions {
    std::string instance;
    std::string samples;
    std::string method;
    int r = 5;
    std::uint64_t seed = 0;
    std::string out;
};

void run_correct(const CorrectOptions& opt) {
    const qpost::IsingModel model = qpost::read_instance(opt.instance);
    const qpost::SampleSet samples = qpost::read_samples(opt.samples);
    qpost::MethodSpec method = qpost::parse_method(opt.method);
    if (method.kind == qpost::MethodSpec::Kind::Rmqc) method.r = opt.r;
    const qpost::SpinVector out = qpost::apply_method(model, samples, method, opt.seed);
    const double e = qpost::energy(model, out);
    qpost::write_samples(qpost::SampleSet({out}), opt.out);
    qpost::json meta{{"method", opt.method},
                     {"input_count", samples.size()},
                     {"energy", e}};
    if (method.kind == qpost::MethodSpec::Kind::Rmqc) {
        meta["r"] = method.r;
        meta["seed"] = opt.seed;
    }
    fs::path meta_path(opt.out);
    meta_path.replace_extension(".meta.json");
    qpost::detail::store_json(meta, meta_path);
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", e);
    std::cout << "energy " << buffer << "\n";
}

struct BenchOptions {
    std::string suite;
    std::vector<std::string> methods{"raw", "sqc", "mqc"};
    std::vector<int> reads_grid{100, 200, 500, 1000};
    int repeats = 50;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string report;
    std::string csv;
    qpost::SamplerConfig sampler;
};

void run_bench_cmd(const BenchOptions& opt) {
    const qpost::SuiteManifest manifest = qpost::read_manifest(opt.suite);
    qpost::BenchConfig config;
    config.methods.clear();
    for (const std::string& token : opt.methods) {
        config.methods.push_back(qpost::parse_method(token));
    }
    config.reads_grid = opt.reads_grid;
    config.repeats = opt.repeats;
    config.master_seed = opt.seed;
    config.sampler = opt.sampler;
    config.workers = opt.workers;
    const qpost::BenchReport report = qpost::run_bench(manifest, config);
    qpost::write_report(report, opt.report);
    if (!opt.csv.empty()) qpost::write_report_csv(report, opt.csv);
    for (const qpost::ComparisonOutcome& c : report.comparisons) {
        char line[256];
        std::snprintf(line, sizeof(line),
                      "s=%-5d %s vs %s: better=%lld worse=%lld tie=%lld p=%.4e (%s)", c.s,
                      c.winner.c_str(), c.baseline.c_str(), c.n_better, c.n_worse, c.n_tie,
                      c.p_value, c.significance.c_str());
        std::cout << line << "\n";
    }
    std::cout << "report written to " << opt.report << "\n";
}

void run_pvalue(long long nb, long long nw) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.4e", qpost::sign_test_p(nb, nw));
    std::cout << buffer << "\n";
}

void run_oracle(const std::string& instance) {
    const qpost::IsingModel model = qpost::read_instance(instance);
    const auto [state, e] = qpost::brute_force_ground(model);
    qpost::json out{{"energy", e}, {"state", qpost::json::array()}};
    for (int i = 0; i < state.size(); ++i) out["state"].push_back(state[i]);
    std::cout << out.dump() << "\n";
}

void run_plot(const std::string& report_path, const std::string& out_dir) {
    const qpost::json report = qpost::detail::load_json(report_path);
    const auto problems = qpost::validate_report_json(report);
    if (!problems.empty()) {
        throw qpost::ParseError(report_path + ": " + problems.front());
    }
    fs::create_directories(out_dir);
    qpost::plot_energy_vs_reads(report, fs::path(out_dir) / "energy_vs_reads.svg");
    qpost::plot_win_rates(report, fs::path(out_dir) / "win_rates.svg");
    std::cout << "wrote energy_vs_reads.svg and win_rates.svg to " << out_dir << "\n";
}

void add_sampler_options(CLI::App* cmd, qpost::SamplerConfig& config) {
    cmd->add_option("--sweeps", config.sweeps_per_read, "Metropolis sweeps per read")
        ->capture_default_str();
    cmd->add_option("--beta-start", config.beta_start, "initial inverse temperature")
        ->capture_default_str();
    cmd->add_option("--beta-end", config.beta_end, "final inverse temperature")
        ->capture_default_str();
    cmd->add_flag("--quantize", config.quantize_coefficients,
                  "quantize coefficients to a 1/256 grid inside the sampler");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qpost: deterministic post-processing and benchmarking for Ising sample sets"};
    app.require_subcommand(1);

    GenerateOptions gen;
    CLI::App* generate = app.add_subcommand("generate", "generate a random benchmark suite");
    generate->add_option("--class", gen.cls, "coefficient class")
        ->required()
        ->check(CLI::IsMember({"binary", "uniform", "normal"}));
    generate->add_option("--spec", gen.spec, "Chimera grid as rows,cols,shore")
        ->delimiter(',')
        ->expected(3)
        ->capture_default_str();
    generate->add_option("--count", gen.count, "number of instances")->capture_default_str();
    generate->add_option("--seed", gen.seed, "master seed")->capture_default_str();
    generate->add_option("--out", gen.out_dir, "output directory")->required();
    generate->callback([&] { run_generate(gen); });

    SampleOptions smp;
    CLI::App* sample = app.add_subcommand("sample", "draw sample sets from an instance");
    sample->add_option("--instance", smp.instance, "instance file")->required();
    sample->add_option("--reads", smp.config.num_reads, "number of reads")
        ->capture_default_str();
    sample->add_option("--mode", smp.mode, "read correlation mode")
        ->check(CLI::IsMember({"independent", "clustered"}))
        ->capture_default_str();
    sample->add_option("--persistence", smp.config.cluster_persistence,
                       "reads per correlated block (clustered mode)")
        ->capture_default_str();
    sample->add_option("--seed", smp.config.seed, "sampler seed")->capture_default_str();
    sample->add_option("--out", smp.out, "output sample file")->required();
    add_sampler_options(sample, smp.config);
    sample->callback([&] { run_sample(smp); });

    CorrectOptions cor;
    CLI::App* correct = app.add_subcommand("correct", "reduce a sample set to one configuration");
    correct->add_option("--instance", cor.instance, "instance file")->required();
    correct->add_option("--samples", cor.samples, "sample file")->required();
    correct->add_option("--method", cor.method, "correction method")
        ->required()
        ->check(CLI::IsMember({"sqc", "mqc", "rmqc"}));
    correct->add_option("--r", cor.r, "RMQC pass count")->capture_default_str();
    correct->add_option("--seed", cor.seed, "RMQC shuffle seed")->capture_default_str();
    correct->add_option("--out", cor.out, "output sample file")->required();
    correct->callback([&] { run_correct(cor); });

    BenchOptions ben;
    CLI::App* bench = app.add_subcommand("bench", "run the statistical comparison harness");
    bench->add_option("--suite", ben.suite, "suite manifest file")->required();
    bench->add_option("--methods", ben.methods, "methods, e.g. raw,sqc,mqc,rmqc:5")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--reads-grid", ben.reads_grid, "sample-set sizes")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--repeats", ben.repeats, "pipeline repeats for robustness")
        ->capture_default_str();
    bench->add_option("--seed", ben.seed, "master seed")->capture_default_str();
    bench->add_option("--workers", ben.workers, "instance-level worker threads")
        ->capture_default_str();
    bench->add_option("--report", ben.report, "output JSON report")->required();
    bench->add_option("--csv", ben.csv, "also export CSV tables to this path");
    add_sampler_options(bench, ben.sampler);
    bench->callback([&] { run_bench_cmd(ben); });

    long long nb = 0, nw = 0;
    CLI::App* pvalue = app.add_subcommand("pvalue", "one-sided sign-test p-value");
    pvalue->add_option("--nb", nb, "wins of the expected winner")->required();
    pvalue->add_option("--nw", nw, "wins of the baseline")->required();
    pvalue->callback([&] { run_pvalue(nb, nw); });

    std::string oracle_instance;
    CLI::App* oracle = app.add_subcommand("oracle", "exhaustive ground state (small N)");
    oracle->add_option("--instance", oracle_instance, "instance file")->required();
    oracle->callback([&] { run_oracle(oracle_instance); });

    std::string plot_report, plot_dir;
    CLI::App* plot = app.add_subcommand("plot", "render SVG charts from a report");
    plot->add_option("--report", plot_report, "JSON report file")->required();
    plot->add_option("--out-dir", plot_dir, "output directory")->required();
    plot->callback([&] { run_plot(plot_report, plot_dir); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const qpost::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qpost::ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qpost::DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
