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
#include <string>
#include <utility>
#include <vector>

#include "qpost/chimera.hpp"
#include "qpost/errors.hpp"
#include "qpost/ising.hpp"
#include "qpost/rng.hpp"

namespace qpost {

/// Coefficient families for random benchmark instances.
enum class CoefficientClass {
    Binary,   // fair draws from {-1, +1}
    Uniform,  // uniform doubles in [-1, +1]
    Normal,   // standard Gaussian draws
};

inline std::string to_string(CoefficientClass cls) {
    switch (cls) {
        case CoefficientClass::Binary: return "binary";
        case CoefficientClass::Uniform: return "uniform";
        case CoefficientClass::Normal: return "normal";
    }
    throw ContractError("unknown coefficient class");
}

inline CoefficientClass coefficient_class_from_string(const std::string& name) {
    if (name == "binary") return CoefficientClass::Binary;
    if (name == "uniform") return CoefficientClass::Uniform;
    if (name == "normal") return CoefficientClass::Normal;
    throw ParseError("unknown coefficient class '" + name + "'");
}

namespace detail {

inline double draw_coefficient(CoefficientClass cls, Rng& rng) {
    switch (cls) {
        case CoefficientClass::Binary: return static_cast<double>(bernoulli_pm1(rng));
        case CoefficientClass::Uniform: return uniform_pm1(rng);
        case CoefficientClass::Normal: return gaussian(rng);
    }
    throw ContractError("unknown coefficient class");
}

}  // namespace detail

/// Random instance over the given graph: one field per vertex and one coupler
/// per edge, all drawn from `cls`. Draws are consumed in a fixed order — all
/// fields by ascending vertex, then all couplers by ascending canonical edge —
/// so an identical (edges, num_vertices, cls, seed) tuple reproduces the
/// instance byte for byte. Coupler draws of exactly 0.0 are redrawn, keeping
/// zero couplers impossible.
inline IsingModel generate_instance(const std::vector<Edge>& edges, int num_vertices,
                                    CoefficientClass cls, std::uint64_t seed) {
    if (num_vertices < 1) throw ContractError("generate_instance: num_vertices must be positive");
    std::vector<Edge> canonical;
    canonical.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= num_vertices || e.v < 0 || e.v >= num_vertices) {
            throw ContractError("generate_instance: edge (" + std::to_string(e.u) + ", " +
                                std::to_string(e.v) + ") out of range for " +
                                std::to_string(num_vertices) + " vertices");
        }
        if (e.u == e.v) {
            throw ContractError("generate_instance: self-loop at vertex " +
                                std::to_string(e.u));
        }
        canonical.push_back(e.u < e.v ? e : Edge{e.v, e.u});
    }
    std::sort(canonical.begin(), canonical.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    for (std::size_t k = 1; k < canonical.size(); ++k) {
        if (canonical[k] == canonical[k - 1]) {
            throw ContractError("generate_instance: duplicate edge (" +
                                std::to_string(canonical[k].u) + ", " +
                                std::to_string(canonical[k].v) + ")");
        }
    }

    Rng rng(seed);
    std::vector<double> fields(static_cast<std::size_t>(num_vertices));
    for (double& h : fields) h = detail::draw_coefficient(cls, rng);
    std::vector<Coupler> couplers;
    couplers.reserve(canonical.size());
    for (const Edge& e : canonical) {
        double value = detail::draw_coefficient(cls, rng);
        while (value == 0.0) value = detail::draw_coefficient(cls, rng);
        couplers.push_back({e.u, e.v, value});
    }
    return IsingModel(num_vertices, std::move(fields), std::move(couplers));
}

}  // namespace qpost
