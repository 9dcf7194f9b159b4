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

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "qpost/errors.hpp"
#include "qpost/ising.hpp"
#include "qpost/rng.hpp"

// Classical stand-in for annealer reads, plus exhaustive ground-truth search.
// The sampler is a Metropolis single-spin-flip chain under a geometric
// inverse-temperature ramp; with few sweeps it lands near — but rarely
// exactly at — a local minimum, which is the regime the correction methods
// are built for. Reads can optionally be correlated in blocks, mimicking
// hardware whose successive measurements cluster into runs of similar states.

namespace qpost {

enum class CorrelationMode {
    Independent,  // every read starts from a fresh random state
    Clustered,    // short runs of reads continue from the previous final state
};

inline std::string to_string(CorrelationMode mode) {
    return mode == CorrelationMode::Independent ? "independent" : "clustered";
}

inline CorrelationMode correlation_mode_from_string(const std::string& name) {
    if (name == "independent") return CorrelationMode::Independent;
    if (name == "clustered") return CorrelationMode::Clustered;
    throw ParseError("unknown correlation mode '" + name + "'");
}

/// Knobs for draw_samples(). sweeps_per_read is the quality dial (the
/// annealing-time analog); beta ramps geometrically from beta_start to
/// beta_end within each read. In Clustered mode every block of
/// cluster_persistence consecutive reads continues from the previous read's
/// final state with the ramp restarted from a midpoint beta (a short reheat).
struct SamplerConfig {
    int num_reads = 100;
    int sweeps_per_read = 50;
    double beta_start = 0.1;
    double beta_end = 5.0;
    CorrelationMode mode = CorrelationMode::Independent;
    int cluster_persistence = 1;
    // Quantize coefficients to a 1/256 grid inside the chain only, imitating
    // limited hardware precision. Energies reported elsewhere always use the
    // exact model.
    bool quantize_coefficients = false;
    std::uint64_t seed = 0;
};

namespace detail {

inline void check_config(const SamplerConfig& config) {
    if (config.num_reads < 1) throw ContractError("sampler: num_reads must be >= 1");
    if (config.sweeps_per_read < 1) throw ContractError("sampler: sweeps_per_read must be >= 1");
    if (!(config.beta_start > 0.0) || !(config.beta_end > 0.0)) {
        throw ContractError("sampler: betas must be positive");
    }
    if (config.beta_start > config.beta_end) {
        throw ContractError("sampler: beta_start must not exceed beta_end");
    }
    if (config.cluster_persistence < 1) {
        throw ContractError("sampler: cluster_persistence must be >= 1");
    }
    const bool independent = config.mode == CorrelationMode::Independent;
    if (independent != (config.cluster_persistence == 1)) {
        throw ContractError("sampler: cluster_persistence must be 1 exactly when mode is "
                            "independent");
    }
}

inline IsingModel quantized_copy(const IsingModel& model) {
    auto grid = [](double x) { return std::round(x * 256.0) / 256.0; };
    std::vector<double> fields = model.fields();
    for (double& h : fields) h = grid(h);
    std::vector<Coupler> couplers;
    couplers.reserve(model.couplers().size());
    for (const Coupler& c : model.couplers()) {
        const double q = grid(c.value);
        if (q != 0.0) couplers.push_back({c.i, c.j, q});  // truncated-away couplers vanish
    }
    return IsingModel(model.num_spins(), std::move(fields), std::move(couplers));
}

// One Metropolis chain segment: `sweeps` full sweeps in ascending spin order
// under a geometric beta ramp from ramp_start to beta_end.
inline void metropolis_ramp(const IsingModel& model, SpinVector& z, int sweeps,
                            double ramp_start, double beta_end, Rng& rng) {
    const double ratio = beta_end / ramp_start;
    for (int t = 0; t < sweeps; ++t) {
        const double beta =
            sweeps == 1 ? beta_end
                        : ramp_start * std::pow(ratio, static_cast<double>(t) /
                                                           static_cast<double>(sweeps - 1));
        for (int i = 0; i < model.num_spins(); ++i) {
            const double delta = energy_delta_flip(model, z, i);
            if (delta <= 0.0) {
                z.flip(i);
            } else if (uniform01(rng) < std::exp(-beta * delta)) {
                z.flip(i);
            }
        }
    }
}

inline SpinVector random_state(int n, Rng& rng) {
    std::vector<std::int8_t> spins(static_cast<std::size_t>(n));
    for (auto& s : spins) s = static_cast<std::int8_t>(bernoulli_pm1(rng));
    return SpinVector(std::move(spins));
}

}  // namespace detail

/// Draws exactly num_reads configurations. Each read owns an independent
/// generator derived from (seed, read index), so the outcome is a pure
/// function of (model, config) no matter how reads are scheduled; within a
/// Clustered block only the chain state carries over between reads.
inline SampleSet draw_samples(const IsingModel& model, const SamplerConfig& config) {
    detail::check_config(config);
    const IsingModel* chain_model = &model;
    IsingModel quantized(1, {0.0}, {});
    if (config.quantize_coefficients) {
        quantized = detail::quantized_copy(model);
        chain_model = &quantized;
    }
    const double beta_mid = std::sqrt(config.beta_start * config.beta_end);
    std::vector<SpinVector> reads;
    reads.reserve(static_cast<std::size_t>(config.num_reads));
    SpinVector state;
    for (int read = 0; read < config.num_reads; ++read) {
        Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(read)));
        const bool block_start = read % config.cluster_persistence == 0;
        double ramp_start = config.beta_start;
        if (block_start) {
            state = detail::random_state(model.num_spins(), rng);
        } else {
            ramp_start = beta_mid;  // reheat partway and re-anneal
        }
        detail::metropolis_ramp(*chain_model, state, config.sweeps_per_read, ramp_start,
                                config.beta_end, rng);
        reads.push_back(state);
    }
    return SampleSet(std::move(reads));
}

/// Default cap on exhaustive search, overridable via the QPOST_BRUTE_FORCE_CAP
/// environment variable.
inline int brute_force_cap() {
    if (const char* env = std::getenv("QPOST_BRUTE_FORCE_CAP")) {
        const int cap = std::atoi(env);
        if (cap > 0) return cap;
    }
    return 24;
}

/// Exhaustive minimum-energy search over all 2^N states, walking a reflected
/// Gray code so each step flips one spin. Ties are broken toward the
/// lexicographically smallest state with -1 before +1. The running energy is
/// delta-updated; candidates near the incumbent are re-evaluated from scratch
/// so the returned energy is the exact canonical sum.
inline std::pair<SpinVector, double> brute_force_ground(const IsingModel& model) {
    const int n = model.num_spins();
    const int cap = brute_force_cap();
    if (n > cap) {
        throw ContractError("brute_force_ground: " + std::to_string(n) +
                            " spins exceeds the cap of " + std::to_string(cap) +
                            " (set QPOST_BRUTE_FORCE_CAP to raise it)");
    }
    SpinVector z = SpinVector::filled(n, -1);
    double best_energy = energy(model, z);
    SpinVector best_state = z;
    long double running = best_energy;
    // Margin for delta-update drift when screening candidates; generous
    // relative to the resync interval below.
    const double margin = 1e-6;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < total; ++step) {
        const int bit = std::countr_zero(step);
        running += static_cast<long double>(energy_delta_flip(model, z, bit));
        z.flip(bit);
        if ((step & 0xffffu) == 0) running = energy(model, z);
        if (static_cast<double>(running) <= best_energy + margin) {
            const double exact = energy(model, z);
            if (exact < best_energy || (exact == best_energy && lex_less(z, best_state))) {
                best_energy = exact;
                best_state = z;
            }
        }
    }
    return {std::move(best_state), best_energy};
}

/// True iff no single flip strictly lowers the energy.
inline bool is_local_minimum(const IsingModel& model, const SpinVector& z) {
    detail::require_same_dimension(model, z);
    for (int i = 0; i < model.num_spins(); ++i) {
        if (energy_delta_flip(model, z, i) < 0.0) return false;
    }
    return true;
}

}  // namespace qpost
