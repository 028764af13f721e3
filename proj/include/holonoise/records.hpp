// Copyright 2026 The holonoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "holonoise/config.hpp"
#include "holonoise/ensemble.hpp"

#ifndef HOLONOISE_VERSION
#define HOLONOISE_VERSION "unversioned"
#endif

namespace holonoise {

inline constexpr std::string_view kVersion = HOLONOISE_VERSION;

/// One simulation: the config that produced it plus the flattened result.
struct RunRecord {
    ExperimentConfig config;
    EnsembleResult result;
    ComparisonReport comparison;
    double wall_time_s = 0.0;
    std::string version{kVersion};
};

inline RunRecord make_record(const ExperimentConfig &cfg, const EnsembleResult &r, double wall_time_s) {
    return {cfg, r, compare(r), wall_time_s, std::string(kVersion)};
}

// ---- CSV -------------------------------------------------------------------

inline const std::array<std::string_view, 12> kCsvColumns{
    "sigma_x", "gamma_x", "l_x",  "n_real",   "seed",       "F_mc",
    "F_stderr", "F_analytic", "I_mc", "I_stderr", "I_analytic", "f_mc"};

/// The fixed CSV columns, in header order.
struct CsvRow {
    double sigma_x = 0.0;
    double gamma_x = 0.0;
    double l_x = 0.0;
    std::uint64_t n_real = 0;
    std::uint64_t seed = 0;
    double F_mc = 0.0;
    double F_stderr = 0.0;
    double F_analytic = 0.0;
    double I_mc = 0.0;
    double I_stderr = 0.0;
    double I_analytic = 0.0;
    double f_mc = 0.0;

    friend bool operator==(const CsvRow &, const CsvRow &) = default;
};

inline CsvRow csv_row(const RunRecord &rec) {
    const EnsembleResult &r = rec.result;
    return {rec.config.ou_x.sigma, rec.config.ou_x.gamma, rec.config.lx, r.n_used, rec.config.seed,
            r.F_mc, r.F_stderr, r.F_analytic, r.I_mc, r.I_stderr, r.I_analytic, r.f_mc};
}

inline void write_csv_header(std::ostream &out) {
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) out << (i ? "," : "") << kCsvColumns[i];
    out << '\n';
}

inline void write_csv_row(std::ostream &out, const CsvRow &r) {
    out << format_double(r.sigma_x) << ',' << format_double(r.gamma_x) << ','
        << format_double(r.l_x) << ',' << r.n_real << ',' << r.seed << ','
        << format_double(r.F_mc) << ',' << format_double(r.F_stderr) << ','
        << format_double(r.F_analytic) << ',' << format_double(r.I_mc) << ','
        << format_double(r.I_stderr) << ',' << format_double(r.I_analytic) << ','
        << format_double(r.f_mc) << '\n';
}

/// Reads a file written by write_csv_header / write_csv_row.
inline std::vector<CsvRow> read_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("csv: missing header");
    std::ostringstream expected;
    write_csv_header(expected);
    if (line + '\n' != expected.str()) throw ConfigError("csv: unexpected header '" + line + "'");

    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        if (cells.size() != kCsvColumns.size()) throw ConfigError("csv: wrong column count");
        CsvRow r;
        r.sigma_x = parse_double(cells[0], "sigma_x");
        r.gamma_x = parse_double(cells[1], "gamma_x");
        r.l_x = parse_double(cells[2], "l_x");
        r.n_real = parse_uint(cells[3], "n_real");
        r.seed = parse_uint(cells[4], "seed");
        r.F_mc = parse_double(cells[5], "F_mc");
        r.F_stderr = parse_double(cells[6], "F_stderr");
        r.F_analytic = parse_double(cells[7], "F_analytic");
        r.I_mc = parse_double(cells[8], "I_mc");
        r.I_stderr = parse_double(cells[9], "I_stderr");
        r.I_analytic = parse_double(cells[10], "I_analytic");
        r.f_mc = parse_double(cells[11], "f_mc");
        rows.push_back(r);
    }
    return rows;
}

// ---- JSON lines ------------------------------------------------------------

namespace detail {

inline nlohmann::json matrix_json(const C2Matrix &m) {
    nlohmann::json a = nlohmann::json::array();
    for (const cd &z : m.entries()) a.push_back({z.real(), z.imag()});
    return a;
}

} // namespace detail

/// Full record. Keys under "result" and "comparison" are the stochastic fields;
/// "wall_time_s" is the only field that varies between identical runs.
inline nlohmann::json to_json(const RunRecord &rec) {
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto &[k, v] : settings_from_config(rec.config)) cfg[k] = v;

    const EnsembleResult &r = rec.result;
    nlohmann::json res{{"F_mc", r.F_mc},
                       {"F_stderr", r.F_stderr},
                       {"F_analytic", r.F_analytic},
                       {"I_mc", r.I_mc},
                       {"I_stderr", r.I_stderr},
                       {"I_analytic", r.I_analytic},
                       {"f_mc", r.f_mc},
                       {"F_realization_mean", r.F_realization_mean},
                       {"n_used", r.n_used},
                       {"analytic_extrapolated", r.analytic_extrapolated},
                       {"rho_avg", detail::matrix_json(r.rho_avg.matrix())},
                       {"rho_analytic", detail::matrix_json(r.rho_analytic)}};

    const ComparisonReport &c = rec.comparison;
    const auto finite_or_null = [](double v) {
        return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
    };
    nlohmann::json cmp{{"analytic_applicable", c.analytic_applicable},
                       {"z_fidelity", finite_or_null(c.z_fidelity)},
                       {"z_purity", finite_or_null(c.z_purity)},
                       {"small_error_residual", c.small_error_residual},
                       {"small_error_bound", c.small_error_bound},
                       {"purity_deficit", c.purity_deficit},
                       {"fidelity_ok", c.fidelity_ok},
                       {"purity_ok", c.purity_ok},
                       {"small_error_ok", c.small_error_ok},
                       {"pass", c.pass}};

    return {{"version", rec.version}, {"seed", rec.config.seed}, {"config", cfg},
            {"result", res},         {"comparison", cmp},      {"wall_time_s", rec.wall_time_s}};
}

/// Rebuilds the config embedded in a JSON record, for replay.
inline ExperimentConfig config_from_json(const nlohmann::json &record) {
    Settings s;
    for (const auto &[k, v] : record.at("config").items()) s[k] = v.get<std::string>();
    return config_from_settings(s);
}

inline void write_jsonl(std::ostream &out, const RunRecord &rec) { out << to_json(rec).dump() << '\n'; }

// ---- sweeps ----------------------------------------------------------------

enum class SweepAxis { sigma_x, gamma_x, l_x, n_realizations };

inline SweepAxis parse_axis(const std::string &name) {
    if (name == "sigma_x") return SweepAxis::sigma_x;
    if (name == "gamma_x") return SweepAxis::gamma_x;
    if (name == "l_x") return SweepAxis::l_x;
    if (name == "n_realizations") return SweepAxis::n_realizations;
    throw ConfigError("unknown sweep axis '" + name + "' (sigma_x, gamma_x, l_x, n_realizations)");
}

struct SweepSpec {
    SweepAxis axis = SweepAxis::sigma_x;
    std::vector<double> values;
    ExperimentConfig base;

    /// Config for point `i`; throws ConfigError naming the index if invalid.
    ExperimentConfig point(std::size_t i) const {
        ExperimentConfig cfg = base;
        const double v = values.at(i);
        try {
            switch (axis) {
            case SweepAxis::sigma_x: cfg.ou_x.sigma = v; break;
            case SweepAxis::gamma_x: cfg.ou_x.gamma = v; break;
            case SweepAxis::l_x: cfg.lx = v; break;
            case SweepAxis::n_realizations:
                if (!(v >= 1.0) || v != std::floor(v)) throw ConfigError("n must be a positive integer");
                cfg.n_realizations = static_cast<std::uint64_t>(v);
                break;
            }
            cfg.validate();
        } catch (const ConfigError &e) {
            throw ConfigError("sweep point " + std::to_string(i) + " (" + format_double(v) + "): " + e.what());
        }
        return cfg;
    }

    /// Checks every point in order; the first invalid one aborts.
    void validate() const {
        if (values.empty()) throw ConfigError("sweep needs at least one axis value");
        for (std::size_t i = 0; i < values.size(); ++i) (void)point(i);
    }
};

/// `count` values from start to stop inclusive, linearly or log-spaced.
inline std::vector<double> axis_range(double start, double stop, std::size_t count, bool log_spaced) {
    if (count == 0) throw ConfigError("sweep range needs count >= 1");
    if (log_spaced && !(start > 0.0 && stop > 0.0)) throw ConfigError("log range needs positive ends");
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        v[i] = log_spaced ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                          : start + t * (stop - start);
    }
    v.front() = start;
    if (count > 1) v.back() = stop;
    return v;
}

} // namespace holonoise
