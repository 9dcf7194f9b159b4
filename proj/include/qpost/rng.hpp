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

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

// Deterministic randomness for the whole library. Everything that consumes
// randomness (instance generation, sampling, RMQC shuffles) goes through the
// generators in this header so that results are reproducible across platforms
// and across runs. std::random distributions are deliberately avoided: their
// output is implementation-defined.

namespace qpost {

// SplitMix64 finalizer (Steele/Lea/Vigna). Bijective 64-bit mixer.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// One step of the SplitMix64 sequence; advances `state`.
inline constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    state += 0x9e3779b97f4a7c15ULL;
    return mix64(state);
}

// Derives an independent stream seed from a master seed and a stream index.
// Used for counter-based per-read / per-pass / per-instance seeding, so work
// can be scheduled in any order without changing results.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    return mix64(mix64(master + 0x9e3779b97f4a7c15ULL) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

// xoshiro256** by Blackman and Vigna. Small, fast, and fully specified, so
// the same seed yields the same stream everywhere.
class Xoshiro256 {
  public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256(std::uint64_t seed) noexcept {
        // Seed expansion through SplitMix64, as recommended by the authors.
        std::uint64_t s = seed;
        for (auto& word : state_) word = splitmix64_next(s);
    }

    constexpr std::uint64_t operator()() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

using Rng = Xoshiro256;

// Uniform double in [0, 1) with 53-bit resolution.
inline double uniform01(Rng& rng) noexcept {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in [-1, 1].
inline double uniform_pm1(Rng& rng) noexcept { return 2.0 * uniform01(rng) - 1.0; }

// Fair draw from {-1, +1} (top bit of one word).
inline int bernoulli_pm1(Rng& rng) noexcept { return (rng() >> 63) ? +1 : -1; }

// Standard normal via the basic Box-Muller transform. Consumes exactly two
// words per call; the sine branch is discarded.
inline double gaussian(Rng& rng) noexcept {
    const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Bounded integer in [0, n) via Lemire's multiply-shift. The mapping is fixed
// and portable; the bias for n far below 2^64 is negligible.
inline std::uint64_t bounded(Rng& rng, std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(rng()) * static_cast<unsigned __int128>(n)) >> 64);
}

// In-place Fisher-Yates shuffle driven by `rng`.
template <typename T>
void fisher_yates(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::uint64_t j = bounded(rng, i);
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace qpost
