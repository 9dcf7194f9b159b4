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

#include <algorithm>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qpost/errors.hpp"

namespace qpost {

/// One pairwise coupling term. Variable indices are 0-based; the canonical
/// form keeps i < j and a nonzero value (a zero coupler is simply absent).
struct Coupler {
    int i = 0;
    int j = 0;
    double value = 0.0;

    friend bool operator==(const Coupler&, const Coupler&) = default;
};

/// Outcome of IsingModel::validate-style checks. Converts to bool; carries a
/// diagnostic naming the first offending entry when invalid.
struct ValidationResult {
    bool ok = true;
    std::string message;

    explicit operator bool() const { return ok; }
};

/// Problem Hamiltonian over N spins in {-1,+1}: a linear field per spin plus
/// a sparse set of pairwise couplers. Immutable after construction; couplers
/// are stored sorted by (i, j) so every summation below has one fixed order
/// and repeated evaluations are bit-identical.
///
/// Construction only rejects what would be memory-unsafe to store (negative
/// sizes, indices outside [0, N)). Semantic invariants — canonical i < j
/// order, nonzero values, no duplicate pairs — are checked by validate(), so
/// malformed models can be represented and diagnosed.
class IsingModel {
  public:
    IsingModel(int num_spins, std::vector<double> fields, std::vector<Coupler> couplers)
        : num_spins_(num_spins), h_(std::move(fields)), couplers_(std::move(couplers)) {
        if (num_spins_ < 1) throw ContractError("IsingModel: num_spins must be positive");
        if (static_cast<int>(h_.size()) != num_spins_) {
            throw DimensionError("IsingModel: field vector length " +
                                 std::to_string(h_.size()) + " does not match num_spins " +
                                 std::to_string(num_spins_));
        }
        for (const Coupler& c : couplers_) {
            if (c.i < 0 || c.i >= num_spins_ || c.j < 0 || c.j >= num_spins_) {
                throw DimensionError("IsingModel: coupler (" + std::to_string(c.i) + ", " +
                                     std::to_string(c.j) + ") out of range for " +
                                     std::to_string(num_spins_) + " spins");
            }
        }
        std::stable_sort(couplers_.begin(), couplers_.end(),
                         [](const Coupler& a, const Coupler& b) {
                             return std::pair(a.i, a.j) < std::pair(b.i, b.j);
                         });
        build_adjacency();
    }

    int num_spins() const { return num_spins_; }
    const std::vector<double>& fields() const { return h_; }

    /// Couplers in ascending (i, j) order.
    const std::vector<Coupler>& couplers() const { return couplers_; }

    /// Neighbors of spin i as (other endpoint, coupling value), ascending by
    /// the other endpoint. Each stored coupler appears in both endpoint rows.
    std::span<const std::pair<int, double>> neighbors(int i) const {
        return {adj_.data() + adj_offset_[i],
                adj_.data() + adj_offset_[static_cast<std::size_t>(i) + 1]};
    }

    /// Checks the canonical-form invariants; reports the first violation.
    ValidationResult validate() const {
        for (const Coupler& c : couplers_) {
            if (c.i >= c.j) {
                return {false, "non-canonical coupler pair (" + std::to_string(c.i) + ", " +
                                   std::to_string(c.j) + "): expected i < j"};
            }
            if (c.value == 0.0) {
                return {false, "zero-valued coupler at pair (" + std::to_string(c.i) + ", " +
                                   std::to_string(c.j) + ")"};
            }
        }
        for (std::size_t k = 1; k < couplers_.size(); ++k) {
            if (couplers_[k].i == couplers_[k - 1].i && couplers_[k].j == couplers_[k - 1].j) {
                return {false, "duplicate coupler pair (" + std::to_string(couplers_[k].i) +
                                   ", " + std::to_string(couplers_[k].j) + ")"};
            }
        }
        return {};
    }

    friend bool operator==(const IsingModel& a, const IsingModel& b) {
        return a.num_spins_ == b.num_spins_ && a.h_ == b.h_ && a.couplers_ == b.couplers_;
    }

  private:
    void build_adjacency() {
        adj_offset_.assign(static_cast<std::size_t>(num_spins_) + 1, 0);
        for (const Coupler& c : couplers_) {
            ++adj_offset_[static_cast<std::size_t>(c.i) + 1];
            ++adj_offset_[static_cast<std::size_t>(c.j) + 1];
        }
        for (int i = 0; i < num_spins_; ++i) adj_offset_[i + 1] += adj_offset_[i];
        adj_.resize(adj_offset_.back());
        std::vector<int> cursor(adj_offset_.begin(), adj_offset_.end() - 1);
        for (const Coupler& c : couplers_) {
            adj_[cursor[c.i]++] = {c.j, c.value};
            adj_[cursor[c.j]++] = {c.i, c.value};
        }
        // Each row mixes both endpoint roles; sort once for a fixed order.
        for (int i = 0; i < num_spins_; ++i) {
            std::sort(adj_.begin() + adj_offset_[i], adj_.begin() + adj_offset_[i + 1]);
        }
    }

    int num_spins_;
    std::vector<double> h_;
    std::vector<Coupler> couplers_;
    std::vector<int> adj_offset_;
    std::vector<std::pair<int, double>> adj_;
};

/// One candidate configuration: a sequence of spins, each exactly -1 or +1.
/// Value type; copies are independent.
class SpinVector {
  public:
    SpinVector() = default;

    explicit SpinVector(std::vector<std::int8_t> spins) : spins_(std::move(spins)) {
        for (std::size_t k = 0; k < spins_.size(); ++k) {
            if (spins_[k] != -1 && spins_[k] != 1) {
                throw ContractError("SpinVector: entry " + std::to_string(k) + " is " +
                                    std::to_string(int(spins_[k])) + ", expected -1 or +1");
            }
        }
    }

    static SpinVector filled(int n, int value) {
        return SpinVector(std::vector<std::int8_t>(static_cast<std::size_t>(n),
                                                   static_cast<std::int8_t>(value)));
    }

    int size() const { return static_cast<int>(spins_.size()); }
    int operator[](int i) const { return spins_[static_cast<std::size_t>(i)]; }
    void flip(int i) { spins_[static_cast<std::size_t>(i)] = -spins_[static_cast<std::size_t>(i)]; }

    const std::vector<std::int8_t>& spins() const { return spins_; }

    friend bool operator==(const SpinVector&, const SpinVector&) = default;

    /// Lexicographic order with -1 before +1; used for deterministic ties.
    friend bool lex_less(const SpinVector& a, const SpinVector& b) {
        return a.spins_ < b.spins_;
    }

  private:
    std::vector<std::int8_t> spins_;
};

/// Ordered list of configurations of one common length. Order matters: the
/// tournament reduction pairs samples by position. Duplicates are permitted.
class SampleSet {
  public:
    explicit SampleSet(std::vector<SpinVector> samples) : samples_(std::move(samples)) {
        if (samples_.empty()) throw ContractError("SampleSet: at least one sample required");
        const int n = samples_.front().size();
        for (std::size_t k = 1; k < samples_.size(); ++k) {
            if (samples_[k].size() != n) {
                throw DimensionError("SampleSet: sample " + std::to_string(k) + " has length " +
                                     std::to_string(samples_[k].size()) + ", expected " +
                                     std::to_string(n));
            }
        }
    }

    int size() const { return static_cast<int>(samples_.size()); }
    int num_spins() const { return samples_.front().size(); }
    const SpinVector& operator[](int k) const { return samples_[static_cast<std::size_t>(k)]; }
    const std::vector<SpinVector>& samples() const { return samples_; }

  private:
    std::vector<SpinVector> samples_;
};

namespace detail {
inline void require_same_dimension(const IsingModel& model, const SpinVector& z) {
    if (z.size() != model.num_spins()) {
        throw DimensionError("spin vector length " + std::to_string(z.size()) +
                             " does not match model with " +
                             std::to_string(model.num_spins()) + " spins");
    }
}
}  // namespace detail

/// Total energy sum_i h_i z_i + sum_{i<j} J_ij z_i z_j. Fields are summed in
/// ascending spin order, then couplers in ascending (i, j) order, so the
/// result is bit-identical across calls and coupler storage orders.
inline double energy(const IsingModel& model, const SpinVector& z) {
    detail::require_same_dimension(model, z);
    double acc = 0.0;
    const std::vector<double>& h = model.fields();
    for (int i = 0; i < model.num_spins(); ++i) acc += h[i] * z[i];
    for (const Coupler& c : model.couplers()) acc += c.value * (z[c.i] * z[c.j]);
    return acc;
}

/// Energy change from flipping spin i, computed locally in O(deg(i)):
/// -2 z_i (h_i + sum_j J_ij z_j). Agrees with a full re-evaluation up to
/// floating-point roundoff.
inline double energy_delta_flip(const IsingModel& model, const SpinVector& z, int i) {
    detail::require_same_dimension(model, z);
    if (i < 0 || i >= model.num_spins()) {
        throw DimensionError("spin index " + std::to_string(i) + " out of range for " +
                             std::to_string(model.num_spins()) + " spins");
    }
    double local = model.fields()[i];
    for (const auto& [j, value] : model.neighbors(i)) local += value * z[j];
    return -2.0 * z[i] * local;
}

/// Free-function form of IsingModel::validate.
inline ValidationResult validate(const IsingModel& model) { return model.validate(); }

}  // namespace qpost
