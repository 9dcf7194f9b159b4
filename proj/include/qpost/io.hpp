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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qpost/chimera.hpp"
#include "qpost/errors.hpp"
#include "qpost/generate.hpp"
#include "qpost/ising.hpp"
#include "qpost/sampler.hpp"

// JSON file formats. Spin/vertex indices are 1-based in every file; the
// in-memory API is 0-based. Doubles are serialized with shortest round-trip
// precision and objects with sorted keys, so write -> read -> write is byte
// identical.
//
//   instance:  {"num_spins": N, "h": [..N..], "couplers": [[i, j, value], ...]}
//   samples:   {"num_spins": N, "samples": [[+-1, ...], ...]}   (order kept)
//   manifest:  {"class": "...", "spec": [M, C, K], "seeds": [...]}

namespace qpost {

using json = nlohmann::json;

namespace detail {

inline json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open for reading");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return j;
}

inline void store_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path.string() + ": cannot open for writing");
    out << j.dump(2) << '\n';
}

inline const json& field(const json& j, const char* name, const std::string& where) {
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(where + ": missing field '" + name + "'");
    return *it;
}

}  // namespace detail

/// Parses an instance. Pairs given as (i, j) with i > j are canonicalized to
/// (j, i); a pair seen twice after canonicalization, a self pair, an index
/// outside 1..N, or a coupler value of exactly 0 is an error.
inline IsingModel read_instance_json(const json& j, const std::string& where) {
    const json& jn = detail::field(j, "num_spins", where);
    if (!jn.is_number_integer() || jn.get<long long>() < 1) {
        throw ParseError(where + ": num_spins must be a positive integer");
    }
    const int n = jn.get<int>();

    const json& jh = detail::field(j, "h", where);
    if (!jh.is_array() || static_cast<int>(jh.size()) != n) {
        throw ParseError(where + ": h must be an array of num_spins numbers");
    }
    std::vector<double> fields;
    fields.reserve(jh.size());
    for (const auto& v : jh) {
        if (!v.is_number()) throw ParseError(where + ": h entries must be numbers");
        fields.push_back(v.get<double>());
    }

    const json& jc = detail::field(j, "couplers", where);
    if (!jc.is_array()) throw ParseError(where + ": couplers must be an array");
    std::vector<Coupler> couplers;
    couplers.reserve(jc.size());
    for (std::size_t k = 0; k < jc.size(); ++k) {
        const auto& entry = jc[k];
        const std::string at = where + ": couplers[" + std::to_string(k) + "]";
        if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
            !entry[1].is_number_integer() || !entry[2].is_number()) {
            throw ParseError(at + ": expected [i, j, value]");
        }
        long long i = entry[0].get<long long>();
        long long jdx = entry[1].get<long long>();
        const double value = entry[2].get<double>();
        if (i < 1 || i > n || jdx < 1 || jdx > n) {
            throw ParseError(at + ": index out of range 1.." + std::to_string(n));
        }
        if (i == jdx) throw ParseError(at + ": self pair (" + std::to_string(i) + ")");
        if (i > jdx) std::swap(i, jdx);
        if (value == 0.0) {
            throw ParseError(at + ": zero coupler at pair (" + std::to_string(i) + ", " +
                             std::to_string(jdx) + ")");
        }
        couplers.push_back({static_cast<int>(i - 1), static_cast<int>(jdx - 1), value});
    }
    {
        auto sorted = couplers;
        std::sort(sorted.begin(), sorted.end(), [](const Coupler& a, const Coupler& b) {
            return std::pair(a.i, a.j) < std::pair(b.i, b.j);
        });
        for (std::size_t k = 1; k < sorted.size(); ++k) {
            if (sorted[k].i == sorted[k - 1].i && sorted[k].j == sorted[k - 1].j) {
                throw ParseError(where + ": duplicate coupler pair (" +
                                 std::to_string(sorted[k].i + 1) + ", " +
                                 std::to_string(sorted[k].j + 1) + ") after canonicalization");
            }
        }
    }
    return IsingModel(n, std::move(fields), std::move(couplers));
}

inline IsingModel read_instance(const std::filesystem::path& path) {
    return read_instance_json(detail::load_json(path), path.string());
}

inline json instance_to_json(const IsingModel& model) {
    if (ValidationResult check = model.validate(); !check) {
        throw ContractError("write_instance: invalid model: " + check.message);
    }
    json couplers = json::array();
    for (const Coupler& c : model.couplers()) {
        couplers.push_back(json::array({c.i + 1, c.j + 1, c.value}));
    }
    return json{{"num_spins", model.num_spins()},
                {"h", model.fields()},
                {"couplers", std::move(couplers)}};
}

inline void write_instance(const IsingModel& model, const std::filesystem::path& path) {
    detail::store_json(instance_to_json(model), path);
}

inline SampleSet read_samples_json(const json& j, const std::string& where) {
    const json& jn = detail::field(j, "num_spins", where);
    if (!jn.is_number_integer() || jn.get<long long>() < 1) {
        throw ParseError(where + ": num_spins must be a positive integer");
    }
    const int n = jn.get<int>();
    const json& js = detail::field(j, "samples", where);
    if (!js.is_array() || js.empty()) {
        throw ParseError(where + ": samples must be a non-empty array");
    }
    std::vector<SpinVector> samples;
    samples.reserve(js.size());
    for (std::size_t k = 0; k < js.size(); ++k) {
        const auto& row = js[k];
        const std::string at = where + ": samples[" + std::to_string(k) + "]";
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw ParseError(at + ": expected an array of " + std::to_string(n) + " spins");
        }
        std::vector<std::int8_t> spins;
        spins.reserve(row.size());
        for (const auto& v : row) {
            if (!v.is_number_integer() ||
                (v.get<long long>() != -1 && v.get<long long>() != 1)) {
                throw ParseError(at + ": spin values must be -1 or +1");
            }
            spins.push_back(static_cast<std::int8_t>(v.get<int>()));
        }
        samples.emplace_back(std::move(spins));
    }
    return SampleSet(std::move(samples));
}

inline SampleSet read_samples(const std::filesystem::path& path) {
    return read_samples_json(detail::load_json(path), path.string());
}

inline json samples_to_json(const SampleSet& set) {
    json rows = json::array();
    for (const SpinVector& z : set.samples()) {
        json row = json::array();
        for (int i = 0; i < z.size(); ++i) row.push_back(z[i]);
        rows.push_back(std::move(row));
    }
    return json{{"num_spins", set.num_spins()}, {"samples", std::move(rows)}};
}

inline void write_samples(const SampleSet& set, const std::filesystem::path& path) {
    detail::store_json(samples_to_json(set), path);
}

/// A benchmark suite: one coefficient class, one graph, one seed per instance.
struct SuiteManifest {
    CoefficientClass cls = CoefficientClass::Uniform;
    ChimeraSpec spec;
    std::vector<std::uint64_t> seeds;
};

inline SuiteManifest read_manifest_json(const json& j, const std::string& where) {
    SuiteManifest manifest;
    const json& jc = detail::field(j, "class", where);
    if (!jc.is_string()) throw ParseError(where + ": class must be a string");
    manifest.cls = coefficient_class_from_string(jc.get<std::string>());
    const json& js = detail::field(j, "spec", where);
    if (!js.is_array() || js.size() != 3 || !js[0].is_number_integer() ||
        !js[1].is_number_integer() || !js[2].is_number_integer()) {
        throw ParseError(where + ": spec must be [rows, cols, shore]");
    }
    manifest.spec = {js[0].get<int>(), js[1].get<int>(), js[2].get<int>()};
    const json& jseeds = detail::field(j, "seeds", where);
    if (!jseeds.is_array() || jseeds.empty()) {
        throw ParseError(where + ": seeds must be a non-empty array");
    }
    for (const auto& s : jseeds) {
        if (!s.is_number_unsigned() && !s.is_number_integer()) {
            throw ParseError(where + ": seeds must be integers");
        }
        manifest.seeds.push_back(s.get<std::uint64_t>());
    }
    return manifest;
}

inline SuiteManifest read_manifest(const std::filesystem::path& path) {
    return read_manifest_json(detail::load_json(path), path.string());
}

inline json manifest_to_json(const SuiteManifest& manifest) {
    return json{{"class", to_string(manifest.cls)},
                {"spec", {manifest.spec.grid_rows, manifest.spec.grid_cols,
                          manifest.spec.shore_size}},
                {"seeds", manifest.seeds}};
}

inline void write_manifest(const SuiteManifest& manifest, const std::filesystem::path& path) {
    detail::store_json(manifest_to_json(manifest), path);
}

/// Instance ids within a suite: "<class>_<index>", zero-padded.
inline std::string instance_id(const SuiteManifest& manifest, std::size_t index) {
    std::ostringstream out;
    out << to_string(manifest.cls) << '_';
    const std::string digits = std::to_string(index);
    for (std::size_t k = digits.size(); k < 3; ++k) out << '0';
    out << digits;
    return out.str();
}

/// Reconstructs instance `index` of a suite. Generation is deterministic in
/// (spec, class, seed), so the manifest alone identifies every instance; the
/// files written next to it by `generate` hold exactly these models.
inline IsingModel suite_instance(const SuiteManifest& manifest, std::size_t index) {
    if (index >= manifest.seeds.size()) {
        throw ContractError("suite_instance: index " + std::to_string(index) +
                            " out of range for " + std::to_string(manifest.seeds.size()) +
                            " seeds");
    }
    return generate_instance(chimera_edges(manifest.spec), manifest.spec.num_vertices(),
                             manifest.cls, manifest.seeds[index]);
}

inline json sampler_config_to_json(const SamplerConfig& config) {
    return json{{"num_reads", config.num_reads},
                {"sweeps_per_read", config.sweeps_per_read},
                {"beta_start", config.beta_start},
                {"beta_end", config.beta_end},
                {"mode", to_string(config.mode)},
                {"cluster_persistence", config.cluster_persistence},
                {"quantize_coefficients", config.quantize_coefficients},
                {"seed", config.seed}};
}

}  // namespace qpost
