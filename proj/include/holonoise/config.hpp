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

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "holonoise/ensemble.hpp"

namespace holonoise {

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text, std::string_view what) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ConfigError(std::string(what) + ": cannot parse '" + std::string(text) + "' as a number");
    }
    return v;
}

inline std::uint64_t parse_uint(std::string_view text, std::string_view what) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ConfigError(std::string(what) + ": cannot parse '" + std::string(text) +
                          "' as a non-negative integer");
    }
    return v;
}

/// Setting keys, identical to the CLI flag names without the leading dashes.
inline const std::vector<std::string> &setting_keys() {
    static const std::vector<std::string> keys{
        "lx", "ly", "gamma-x", "gamma-y", "sigma-x", "sigma-y", "n", "seed",
        "grid-dx", "j", "mode", "offset-x", "offset-y", "threads"};
    return keys;
}

using Settings = std::map<std::string, std::string>;

/// Apply one `key = value` setting.
inline void apply_setting(ExperimentConfig &cfg, const std::string &key, const std::string &value) {
    if (key == "lx") cfg.lx = parse_double(value, key);
    else if (key == "ly") cfg.ly = parse_double(value, key);
    else if (key == "gamma-x") cfg.ou_x.gamma = parse_double(value, key);
    else if (key == "gamma-y") cfg.ou_y.gamma = parse_double(value, key);
    else if (key == "sigma-x") cfg.ou_x.sigma = parse_double(value, key);
    else if (key == "sigma-y") cfg.ou_y.sigma = parse_double(value, key);
    else if (key == "n") cfg.n_realizations = parse_uint(value, key);
    else if (key == "seed") cfg.seed = parse_uint(value, key);
    else if (key == "grid-dx") {
        if (value == "auto") cfg.grid_dx.reset();
        else cfg.grid_dx = parse_double(value, key);
    } else if (key == "j") {
        if (value == "0") cfg.j = Basis::zero;
        else if (value == "1") cfg.j = Basis::one;
        else throw ConfigError("j must be 0 or 1");
    } else if (key == "mode") {
        if (value == "stochastic") cfg.mode = NoiseMode::stochastic;
        else if (value == "systematic") cfg.mode = NoiseMode::systematic;
        else throw ConfigError("mode must be stochastic or systematic");
    } else if (key == "offset-x") cfg.offset_x = parse_double(value, key);
    else if (key == "offset-y") cfg.offset_y = parse_double(value, key);
    else if (key == "threads") cfg.threads = static_cast<unsigned>(parse_uint(value, key));
    else throw ConfigError("unknown setting '" + key + "'");
}

inline ExperimentConfig config_from_settings(const Settings &settings, ExperimentConfig base = {}) {
    for (const auto &[k, v] : settings) apply_setting(base, k, v);
    return base;
}

inline Settings settings_from_config(const ExperimentConfig &cfg) {
    return {{"lx", format_double(cfg.lx)},
            {"ly", format_double(cfg.ly)},
            {"gamma-x", format_double(cfg.ou_x.gamma)},
            {"gamma-y", format_double(cfg.ou_y.gamma)},
            {"sigma-x", format_double(cfg.ou_x.sigma)},
            {"sigma-y", format_double(cfg.ou_y.sigma)},
            {"n", std::to_string(cfg.n_realizations)},
            {"seed", std::to_string(cfg.seed)},
            {"grid-dx", cfg.grid_dx ? format_double(*cfg.grid_dx) : "auto"},
            {"j", std::to_string(index(cfg.j))},
            {"mode", std::string(to_string(cfg.mode))},
            {"offset-x", format_double(cfg.offset_x)},
            {"offset-y", format_double(cfg.offset_y)},
            {"threads", std::to_string(cfg.threads)}};
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace detail

/// Flat key-value text: one `key = value` (or `key value`) per line, `#` comments.
inline Settings parse_settings(std::istream &in) {
    Settings out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = line;
        if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = detail::trim(s);
        if (s.empty()) continue;
        auto sep = s.find('=');
        if (sep == std::string_view::npos) sep = s.find_first_of(" \t");
        if (sep == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        std::string key(detail::trim(s.substr(0, sep)));
        if (key.starts_with("--")) key = key.substr(2);
        const std::string value(detail::trim(s.substr(sep + 1)));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        out[key] = value;
    }
    return out;
}

inline Settings load_settings(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_settings(in);
}

} // namespace holonoise
