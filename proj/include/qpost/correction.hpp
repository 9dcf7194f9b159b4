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

#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qpost/errors.hpp"
#include "qpost/ising.hpp"
#include "qpost/rng.hpp"

// Deterministic post-processing of annealer sample sets.
//
// Three methods, from weakest to strongest:
//   sqc   - single-qubit correction: strict single-flip descent on one sample.
//   mqc   - multi-qubit correction: a tournament that repeatedly reduces pairs
//           of samples by flipping whole connected groups of disagreeing spins
//           ("sub-tunnels") when doing so lowers the energy.
//   rmqc  - randomized MQC: r MQC passes over reshuffled orderings, followed
//           by one final MQC over the r intermediate results.
//
// All comparisons use exact floating-point `<` / `>`; there is no tolerance
// anywhere in the decision logic, which keeps every method a pure function of
// its inputs.

namespace qpost {

/// The comparison structure of two equally-long samples against a model:
/// where they agree (same_set), where they differ (diff_set), the connected
/// components of the coupling graph restricted to diff_set (sub_tunnels), and
/// each component's influence evaluated against the first sample. Flipping
/// sub-tunnel k as a unit changes the energy by exactly -2 * influences[k].
struct TunnelPartition {
    std::vector<int> same_set;                  // ascending
    std::vector<int> diff_set;                  // ascending
    std::vector<std::vector<int>> sub_tunnels;  // each ascending; ordered by smallest member
    std::vector<double> influences;             // one per sub-tunnel, w.r.t. the first sample
};

/// Splits indices into (same_set, diff_set) by comparing two samples
/// position-wise. Both outputs are ascending.
inline std::pair<std::vector<int>, std::vector<int>> partition_diff(const SpinVector& z1,
                                                                    const SpinVector& z2) {
    if (z1.size() != z2.size()) {
        throw DimensionError("partition_diff: sample lengths " + std::to_string(z1.size()) +
                             " and " + std::to_string(z2.size()) + " differ");
    }
    std::vector<int> same, diff;
    for (int i = 0; i < z1.size(); ++i) {
        (z1[i] == z2[i] ? same : diff).push_back(i);
    }
    return {std::move(same), std::move(diff)};
}

/// Connected components of the graph whose vertices are diff_set and whose
/// edges are the model's couplers with both endpoints in diff_set. Components
/// are listed by smallest member, members ascending.
inline std::vector<std::vector<int>> sub_tunnels(const IsingModel& model,
                                                 const std::vector<int>& diff_set) {
    std::vector<char> in_diff(static_cast<std::size_t>(model.num_spins()), 0);
    for (int i : diff_set) {
        if (i < 0 || i >= model.num_spins()) {
            throw ContractError("sub_tunnels: index " + std::to_string(i) +
                                " out of range for " + std::to_string(model.num_spins()) +
                                " spins");
        }
        in_diff[i] = 1;
    }
    std::vector<char> seen(in_diff.size(), 0);
    std::vector<std::vector<int>> components;
    std::vector<int> stack;
    for (int seed = 0; seed < model.num_spins(); ++seed) {
        if (!in_diff[seed] || seen[seed]) continue;
        std::vector<int> component;
        stack.push_back(seed);
        seen[seed] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            component.push_back(v);
            for (const auto& [w, value] : model.neighbors(v)) {
                (void)value;  // any stored coupler is an edge
                if (in_diff[w] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
    }
    // Seeds are visited in ascending order, so components already appear by
    // smallest member.
    return components;
}

namespace detail {

// Influence of `tunnel` on z: field terms over the tunnel plus coupler terms
// from the tunnel to spins marked in `in_same`. Couplers internal to the
// tunnel cancel under a whole-tunnel flip and are excluded.
inline double influence_masked(const IsingModel& model, const SpinVector& z,
                               const std::vector<char>& in_same,
                               const std::vector<int>& tunnel) {
    double acc = 0.0;
    for (int i : tunnel) acc += model.fields()[i] * z[i];
    for (int i : tunnel) {
        for (const auto& [j, value] : model.neighbors(i)) {
            if (in_same[j]) acc += value * (z[i] * z[j]);
        }
    }
    return acc;
}

}  // namespace detail

/// Signed energy contribution of a tunnel to z1: sum of its field terms plus
/// its couplings into same_set. Flipping every spin of the tunnel changes the
/// total energy by -2 times this value. same_set and tunnel must be disjoint.
inline double influence(const IsingModel& model, const SpinVector& z1,
                        const std::vector<int>& same_set, const std::vector<int>& tunnel) {
    detail::require_same_dimension(model, z1);
    std::vector<char> in_same(static_cast<std::size_t>(model.num_spins()), 0);
    for (int j : same_set) {
        if (j < 0 || j >= model.num_spins()) {
            throw ContractError("influence: same_set index " + std::to_string(j) +
                                " out of range");
        }
        in_same[j] = 1;
    }
    for (int i : tunnel) {
        if (i < 0 || i >= model.num_spins()) {
            throw ContractError("influence: tunnel index " + std::to_string(i) +
                                " out of range");
        }
        if (in_same[i]) {
            throw ContractError("influence: index " + std::to_string(i) +
                                " appears in both same_set and tunnel");
        }
    }
    return detail::influence_masked(model, z1, in_same, tunnel);
}

/// Builds the full comparison structure for a pair of samples, with
/// influences evaluated against z1.
inline TunnelPartition tunnel_partition(const IsingModel& model, const SpinVector& z1,
                                        const SpinVector& z2) {
    detail::require_same_dimension(model, z1);
    auto [same, diff] = partition_diff(z1, z2);
    TunnelPartition part;
    part.same_set = std::move(same);
    part.diff_set = std::move(diff);
    part.sub_tunnels = sub_tunnels(model, part.diff_set);
    std::vector<char> in_same(static_cast<std::size_t>(model.num_spins()), 0);
    for (int j : part.same_set) in_same[j] = 1;
    part.influences.reserve(part.sub_tunnels.size());
    for (const auto& tunnel : part.sub_tunnels) {
        part.influences.push_back(detail::influence_masked(model, z1, in_same, tunnel));
    }
    return part;
}

/// Combines two samples into one of no-higher energy: starting from z1, every
/// sub-tunnel with strictly positive influence is flipped as a unit. The
/// result's energy is at most min(energy(z1), energy(z2)); flipping all
/// sub-tunnels would turn z1 into z2 exactly. Anchored on the first argument:
/// when some sub-tunnel has influence exactly 0, reduce(z1, z2) and
/// reduce(z2, z1) may differ as states while agreeing in energy.
inline SpinVector reduce(const IsingModel& model, const SpinVector& z1, const SpinVector& z2) {
    detail::require_same_dimension(model, z2);
    TunnelPartition part = tunnel_partition(model, z1, z2);
    SpinVector out = z1;
    for (std::size_t k = 0; k < part.sub_tunnels.size(); ++k) {
        if (part.influences[k] > 0.0) {
            for (int i : part.sub_tunnels[k]) out.flip(i);
        }
    }
    return out;
}

/// Single-qubit correction: sweep spins in ascending order, keeping each flip
/// that strictly lowers the energy, and repeat until a full sweep changes
/// nothing. The result is a 1-flip local minimum and is a fixed point of the
/// procedure.
inline SpinVector sqc(const IsingModel& model, SpinVector z) {
    detail::require_same_dimension(model, z);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < model.num_spins(); ++i) {
            if (energy_delta_flip(model, z, i) < 0.0) {
                z.flip(i);
                changed = true;
            }
        }
    }
    return z;
}

/// Counters filled by mqc(); one tournament round halves the sample count.
struct MqcStats {
    int rounds = 0;
    long long reduce_calls = 0;
};

/// Multi-qubit correction: a deterministic tournament. Each round walks the
/// current list in order, reduces adjacent pairs, and carries an odd leftover
/// forward unchanged; the last survivor is returned. For n samples this costs
/// exactly n-1 reduce calls over ceil(log2 n) rounds, and the result's energy
/// is at most the minimum input energy. Pairing is fixed by input order, and
/// reduce is pure, so any `workers` count yields bit-identical output.
inline SpinVector mqc(const IsingModel& model, const SampleSet& samples,
                      MqcStats* stats = nullptr, int workers = 1) {
    if (samples.num_spins() != model.num_spins()) {
        throw DimensionError("mqc: sample length " + std::to_string(samples.num_spins()) +
                             " does not match model with " +
                             std::to_string(model.num_spins()) + " spins");
    }
    if (workers < 1) throw ContractError("mqc: workers must be >= 1");
    MqcStats counters;
    std::vector<SpinVector> current = samples.samples();
    while (current.size() > 1) {
        ++counters.rounds;
        const std::size_t pairs = current.size() / 2;
        std::vector<SpinVector> next(pairs + current.size() % 2);
        auto reduce_range = [&](std::size_t begin, std::size_t end) {
            for (std::size_t k = begin; k < end; ++k) {
                next[k] = reduce(model, current[2 * k], current[2 * k + 1]);
            }
        };
        if (workers == 1 || pairs < 2) {
            reduce_range(0, pairs);
        } else {
            const std::size_t nthreads = std::min<std::size_t>(workers, pairs);
            std::vector<std::thread> pool;
            pool.reserve(nthreads);
            for (std::size_t t = 0; t < nthreads; ++t) {
                const std::size_t begin = pairs * t / nthreads;
                const std::size_t end = pairs * (t + 1) / nthreads;
                pool.emplace_back(reduce_range, begin, end);
            }
            for (auto& th : pool) th.join();
        }
        if (current.size() % 2 != 0) next.back() = std::move(current.back());
        counters.reduce_calls += static_cast<long long>(pairs);
        current = std::move(next);
    }
    if (stats != nullptr) *stats = counters;
    return std::move(current.front());
}

/// Randomized multi-qubit correction: run MQC, append the result to an
/// accumulator, reshuffle the working order, and repeat r times in total (the
/// first pass sees the raw input order); finish with one MQC over the
/// accumulator. Shuffles are seeded Fisher-Yates permutations with one
/// derived seed per pass, so identical (samples, r, seed) inputs give
/// identical outputs and the result's energy never exceeds plain MQC's.
inline SpinVector rmqc(const IsingModel& model, const SampleSet& samples, int r,
                       std::uint64_t seed, int workers = 1) {
    if (r < 1) throw ContractError("rmqc: repetition count r must be >= 1");
    std::vector<SpinVector> order = samples.samples();
    std::vector<SpinVector> accumulator;
    accumulator.reserve(static_cast<std::size_t>(r));
    for (int pass = 0; pass < r; ++pass) {
        if (pass > 0) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(pass)));
            fisher_yates(order, rng);
        }
        accumulator.push_back(mqc(model, SampleSet(order), nullptr, workers));
    }
    return mqc(model, SampleSet(std::move(accumulator)), nullptr, workers);
}

}  // namespace qpost
