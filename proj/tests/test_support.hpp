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
#include <limits>
#include <utility>
#include <vector>

#include "qpost/generate.hpp"
#include "qpost/ising.hpp"
#include "qpost/rng.hpp"

// Test-only oracles. These recompute results by direct definition (plain
// term sums, full enumeration) and stay independent of the library paths
// they are used to check.

namespace qpost::testing {

// Energy by direct term-by-term summation over the stored coefficients.
inline double naive_energy(const IsingModel& model, const SpinVector& z) {
    double acc = 0.0;
    for (int i = 0; i < model.num_spins(); ++i) acc += model.fields()[i] * z[i];
    for (const Coupler& c : model.couplers()) {
        acc += c.value * static_cast<double>(z[c.i]) * static_cast<double>(z[c.j]);
    }
    return acc;
}

inline SpinVector state_from_bits(int n, std::uint64_t bits) {
    std::vector<std::int8_t> spins(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) spins[i] = (bits >> i) & 1 ? +1 : -1;
    return SpinVector(std::move(spins));
}

// Exhaustive scan of all 2^N states; first minimum in bit order.
inline std::pair<SpinVector, double> enumerate_ground(const IsingModel& model) {
    const int n = model.num_spins();
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t best_bits = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        const double e = naive_energy(model, state_from_bits(n, bits));
        if (e < best) {
            best = e;
            best_bits = bits;
        }
    }
    return {state_from_bits(n, best_bits), best};
}

// The four-spin chain used across these tests: J(0,1) = -1, J(1,2) = +1,
// J(2,3) = -1, no fields.
inline IsingModel chain4() {
    return IsingModel(4, {0.0, 0.0, 0.0, 0.0}, {{0, 1, -1.0}, {1, 2, 1.0}, {2, 3, -1.0}});
}

inline SpinVector sv(std::vector<std::int8_t> spins) { return SpinVector(std::move(spins)); }

inline SpinVector random_state(int n, Rng& rng) {
    std::vector<std::int8_t> spins(static_cast<std::size_t>(n));
    for (auto& s : spins) s = static_cast<std::int8_t>(bernoulli_pm1(rng));
    return SpinVector(std::move(spins));
}

// Random instance on a ring plus a few chords; small, connected, mixed sign.
inline IsingModel random_model(int n, CoefficientClass cls, std::uint64_t seed) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    for (int i = 0; n >= 4 && i + n / 2 < n; i += 3) edges.push_back({i, i + n / 2});
    if (n == 2) edges = {{0, 1}};
    return generate_instance(edges, n, cls, seed);
}

}  // namespace qpost::testing
