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
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qpost/bench.hpp"
#include "qpost/io.hpp"

// Report emission: canonical JSON (validated against docs/report_schema.json
// before writing), CSV export, and static SVG charts. Energies carry full
// precision plus a 4-decimal display column.

namespace qpost {

inline std::string format_energy_display(double e) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.4f", e);
    return buffer;
}

inline json report_to_json(const BenchReport& report) {
    json methods = json::array();
    for (const MethodSpec& m : report.config.methods) methods.push_back(method_id(m));
    json rows = json::array();
    for (const PerInstanceRow& row : report.rows) {
        rows.push_back({{"instance", row.instance},
                        {"method", row.method},
                        {"s", row.s},
                        {"best_energy", row.best_energy},
                        {"best_energy_display", format_energy_display(row.best_energy)},
                        {"wall_seconds", row.wall_seconds}});
    }
    json comparisons = json::array();
    for (const ComparisonOutcome& c : report.comparisons) {
        comparisons.push_back({{"winner", c.winner},
                               {"baseline", c.baseline},
                               {"s", c.s},
                               {"n_better", c.n_better},
                               {"n_worse", c.n_worse},
                               {"n_tie", c.n_tie},
                               {"p_value", c.p_value},
                               {"significance", c.significance}});
    }
    json robustness = json::array();
    for (const RobustnessRow& r : report.robustness) {
        robustness.push_back({{"class", r.cls},
                              {"s", r.s},
                              {"method", r.method},
                              {"mean_variance", r.mean_variance},
                              {"per_instance_variance", r.per_instance}});
    }
    return json{{"suite", manifest_to_json(report.suite)},
                {"config",
                 {{"methods", std::move(methods)},
                  {"reads_grid", report.config.reads_grid},
                  {"repeats", report.config.repeats},
                  {"master_seed", report.config.master_seed},
                  {"workers", report.config.workers},
                  {"sampler", sampler_config_to_json(report.config.sampler)}}},
                {"per_instance", std::move(rows)},
                {"comparisons", std::move(comparisons)},
                {"robustness", std::move(robustness)}};
}

/// Structural check mirroring docs/report_schema.json. Returns the problems
/// found; an empty list means the document conforms.
inline std::vector<std::string> validate_report_json(const json& j) {
    std::vector<std::string> problems;
    auto need = [&](const json& obj, const char* key, const char* where,
                    bool (json::*pred)() const) -> const json* {
        auto it = obj.find(key);
        if (it == obj.end()) {
            problems.push_back(std::string(where) + ": missing '" + key + "'");
            return nullptr;
        }
        if (!((*it).*pred)()) {
            problems.push_back(std::string(where) + ": '" + key + "' has the wrong type");
            return nullptr;
        }
        return &*it;
    };
    if (!j.is_object()) return {"report: not a JSON object"};
    need(j, "suite", "report", &json::is_object);
    need(j, "config", "report", &json::is_object);
    if (const json* rows = need(j, "per_instance", "report", &json::is_array)) {
        for (const auto& row : *rows) {
            if (!row.is_object()) {
                problems.push_back("per_instance: entry is not an object");
                continue;
            }
            need(row, "instance", "per_instance", &json::is_string);
            need(row, "method", "per_instance", &json::is_string);
            need(row, "s", "per_instance", &json::is_number_integer);
            need(row, "best_energy", "per_instance", &json::is_number);
            need(row, "best_energy_display", "per_instance", &json::is_string);
            need(row, "wall_seconds", "per_instance", &json::is_number);
        }
    }
    if (const json* comparisons = need(j, "comparisons", "report", &json::is_array)) {
        for (const auto& c : *comparisons) {
            if (!c.is_object()) {
                problems.push_back("comparisons: entry is not an object");
                continue;
            }
            need(c, "winner", "comparisons", &json::is_string);
            need(c, "baseline", "comparisons", &json::is_string);
            need(c, "s", "comparisons", &json::is_number_integer);
            need(c, "n_better", "comparisons", &json::is_number_integer);
            need(c, "n_worse", "comparisons", &json::is_number_integer);
            need(c, "n_tie", "comparisons", &json::is_number_integer);
            need(c, "p_value", "comparisons", &json::is_number);
            need(c, "significance", "comparisons", &json::is_string);
        }
    }
    if (const json* robustness = need(j, "robustness", "report", &json::is_array)) {
        for (const auto& r : *robustness) {
            if (!r.is_object()) {
                problems.push_back("robustness: entry is not an object");
                continue;
            }
            need(r, "class", "robustness", &json::is_string);
            need(r, "s", "robustness", &json::is_number_integer);
            need(r, "method", "robustness", &json::is_string);
            need(r, "mean_variance", "robustness", &json::is_number);
            need(r, "per_instance_variance", "robustness", &json::is_array);
        }
    }
    return problems;
}

/// Validates and writes the canonical JSON report.
inline void write_report(const BenchReport& report, const std::filesystem::path& path) {
    const json j = report_to_json(report);
    const std::vector<std::string> problems = validate_report_json(j);
    if (!problems.empty()) {
        throw ContractError("report failed schema validation: " + problems.front());
    }
    detail::store_json(j, path);
}

/// CSV export: per-instance rows at `path`, comparisons and robustness next
/// to it with "_comparisons" / "_robustness" suffixes.
inline void write_report_csv(const BenchReport& report, const std::filesystem::path& path) {
    auto open = [](const std::filesystem::path& p) {
        std::ofstream out(p);
        if (!out) throw ParseError(p.string() + ": cannot open for writing");
        return out;
    };
    {
        std::ofstream out = open(path);
        out << "instance,method,s,best_energy,best_energy_display,wall_seconds\n";
        for (const PerInstanceRow& row : report.rows) {
            char line[256];
            std::snprintf(line, sizeof(line), "%s,%s,%d,%.17g,%s,%.6f", row.instance.c_str(),
                          row.method.c_str(), row.s, row.best_energy,
                          format_energy_display(row.best_energy).c_str(), row.wall_seconds);
            out << line << '\n';
        }
    }
    std::filesystem::path stem = path;
    stem.replace_extension();
    {
        std::ofstream out = open(stem.string() + "_comparisons.csv");
        out << "winner,baseline,s,n_better,n_worse,n_tie,p_value,significance\n";
        for (const ComparisonOutcome& c : report.comparisons) {
            char line[256];
            std::snprintf(line, sizeof(line), "%s,%s,%d,%lld,%lld,%lld,%.6e,%s",
                          c.winner.c_str(), c.baseline.c_str(), c.s, c.n_better, c.n_worse,
                          c.n_tie, c.p_value, c.significance.c_str());
            out << line << '\n';
        }
    }
    {
        std::ofstream out = open(stem.string() + "_robustness.csv");
        out << "class,s,method,mean_variance\n";
        for (const RobustnessRow& r : report.robustness) {
            char line[256];
            std::snprintf(line, sizeof(line), "%s,%d,%s,%.17g", r.cls.c_str(), r.s,
                          r.method.c_str(), r.mean_variance);
            out << line << '\n';
        }
    }
}

namespace detail {

struct SvgCanvas {
    int width = 760;
    int height = 480;
    std::string body;

    void line(double x1, double y1, double x2, double y2, const char* stroke,
              double stroke_width = 1.0) {
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "<line x1='%.1f' y1='%.1f' x2='%.1f' y2='%.1f' stroke='%s' "
                      "stroke-width='%.1f'/>\n",
                      x1, y1, x2, y2, stroke, stroke_width);
        body += buf;
    }
    void rect(double x, double y, double w, double h, const char* fill) {
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "<rect x='%.1f' y='%.1f' width='%.1f' height='%.1f' fill='%s'/>\n", x, y,
                      w, h, fill);
        body += buf;
    }
    void circle(double x, double y, double r, const char* fill) {
        char buf[192];
        std::snprintf(buf, sizeof(buf), "<circle cx='%.1f' cy='%.1f' r='%.1f' fill='%s'/>\n", x,
                      y, r, fill);
        body += buf;
    }
    void text(double x, double y, const std::string& s, int size = 12,
              const char* anchor = "start") {
        char buf[384];
        std::snprintf(buf, sizeof(buf),
                      "<text x='%.1f' y='%.1f' font-size='%d' font-family='sans-serif' "
                      "text-anchor='%s'>%s</text>\n",
                      x, y, size, anchor, s.c_str());
        body += buf;
    }
    void save(const std::filesystem::path& path) const {
        std::ofstream out(path);
        if (!out) throw ParseError(path.string() + ": cannot open for writing");
        out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='"
            << height << "'>\n<rect width='100%' height='100%' fill='white'/>\n"
            << body << "</svg>\n";
    }
};

inline const char* plot_color(std::size_t k) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return palette[k % (sizeof(palette) / sizeof(palette[0]))];
}

}  // namespace detail

/// Mean best energy per method as a function of the sample count s.
inline void plot_energy_vs_reads(const json& report, const std::filesystem::path& path) {
    std::set<int> sizes;
    std::vector<std::string> methods;
    std::map<std::pair<std::string, int>, std::pair<double, int>> sums;
    for (const auto& row : report.at("per_instance")) {
        const std::string method = row.at("method").get<std::string>();
        const int s = row.at("s").get<int>();
        sizes.insert(s);
        if (std::find(methods.begin(), methods.end(), method) == methods.end()) {
            methods.push_back(method);
        }
        auto& cell = sums[{method, s}];
        cell.first += row.at("best_energy").get<double>();
        cell.second += 1;
    }
    if (sizes.empty()) throw ContractError("plot: report has no per-instance rows");
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto& [key, cell] : sums) {
        const double mean = cell.first / cell.second;
        lo = first ? mean : std::min(lo, mean);
        hi = first ? mean : std::max(hi, mean);
        first = false;
    }
    if (hi == lo) hi = lo + 1.0;
    const double pad = 0.08 * (hi - lo);
    lo -= pad;
    hi += pad;

    detail::SvgCanvas svg;
    const double left = 70, right = 600, top = 30, bottom = 430;
    svg.line(left, bottom, right, bottom, "#000");
    svg.line(left, top, left, bottom, "#000");
    const std::vector<int> xs(sizes.begin(), sizes.end());
    auto x_of = [&](std::size_t idx) {
        return xs.size() == 1 ? (left + right) / 2
                              : left + (right - left) * static_cast<double>(idx) /
                                    static_cast<double>(xs.size() - 1);
    };
    auto y_of = [&](double v) { return bottom - (bottom - top) * (v - lo) / (hi - lo); };
    for (std::size_t i = 0; i < xs.size(); ++i) {
        svg.text(x_of(i), bottom + 18, std::to_string(xs[i]), 12, "middle");
        svg.line(x_of(i), bottom, x_of(i), bottom + 4, "#000");
    }
    for (int tick = 0; tick <= 4; ++tick) {
        const double v = lo + (hi - lo) * tick / 4.0;
        svg.line(left - 4, y_of(v), left, y_of(v), "#000");
        svg.text(left - 8, y_of(v) + 4, format_energy_display(v), 11, "end");
    }
    svg.text((left + right) / 2, bottom + 40, "samples (s)", 13, "middle");
    svg.text(left, top - 10, "mean best energy", 13);
    for (std::size_t m = 0; m < methods.size(); ++m) {
        const char* color = detail::plot_color(m);
        double px = 0.0, py = 0.0;
        bool have_prev = false;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            auto it = sums.find({methods[m], xs[i]});
            if (it == sums.end()) continue;
            const double y = y_of(it->second.first / it->second.second);
            if (have_prev) svg.line(px, py, x_of(i), y, color, 2.0);
            svg.circle(x_of(i), y, 3.5, color);
            px = x_of(i);
            py = y;
            have_prev = true;
        }
        svg.rect(620, 40.0 + 20.0 * m, 12, 12, color);
        svg.text(638, 50.0 + 20.0 * m, methods[m], 12);
    }
    svg.save(path);
}

/// Win rate (wins over instances) for every expected-winner comparison.
inline void plot_win_rates(const json& report, const std::filesystem::path& path) {
    struct Bar {
        std::string label;
        double rate;
        double p;
    };
    std::vector<Bar> bars;
    for (const auto& c : report.at("comparisons")) {
        const double nb = c.at("n_better").get<double>();
        const double nw = c.at("n_worse").get<double>();
        const double nt = c.at("n_tie").get<double>();
        const double total = nb + nw + nt;
        bars.push_back({c.at("winner").get<std::string>() + " > " +
                            c.at("baseline").get<std::string>() + " (s=" +
                            std::to_string(c.at("s").get<int>()) + ")",
                        total > 0 ? nb / total : 0.0, c.at("p_value").get<double>()});
    }
    if (bars.empty()) throw ContractError("plot: report has no comparisons");
    detail::SvgCanvas svg;
    svg.height = 60 + static_cast<int>(bars.size()) * 26;
    const double left = 280, right = 640;
    for (int tick = 0; tick <= 4; ++tick) {
        const double x = left + (right - left) * tick / 4.0;
        svg.line(x, 30, x, svg.height - 30, "#ddd");
        svg.text(x, svg.height - 14, std::to_string(25 * tick) + "%", 11, "middle");
    }
    for (std::size_t k = 0; k < bars.size(); ++k) {
        const double y = 40.0 + 26.0 * k;
        svg.text(left - 10, y + 11, bars[k].label, 11, "end");
        svg.rect(left, y, (right - left) * bars[k].rate, 14,
                 bars[k].p < 0.05 ? "#2ca02c" : "#ff7f0e");
        char pbuf[48];
        std::snprintf(pbuf, sizeof(pbuf), "p=%.3g", bars[k].p);
        svg.text(left + (right - left) * bars[k].rate + 6, y + 11, pbuf, 10);
    }
    svg.text(left, 20, "win rate over instances (green: p < 0.05)", 12);
    svg.save(path);
}

}  // namespace qpost
