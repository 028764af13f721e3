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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "holonoise/common.hpp"

namespace holonoise {

/// Stationary Ornstein-Uhlenbeck law: <dr(x) dr(x')> = sigma * exp(-gamma |x - x'|).
/// `sigma` is the variance itself, not a standard deviation.
struct OUParams {
    double sigma = 0.0;
    double gamma = 1.0;

    void validate() const {
        if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw DomainError("OU variance must be >= 0");
        if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("OU bandwidth must be > 0");
    }
};

/// Uniform grid request over [start, end]. The realized step is shrunk so
/// that an integer number of intervals lands exactly on `end`.
struct GridSpec {
    double start = 0.0;
    double end = 1.0;
    double step = 0.01;

    void validate() const {
        if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("grid step must be > 0");
        if (!(end > start) || !std::isfinite(start) || !std::isfinite(end)) {
            throw DomainError("grid end must exceed grid start");
        }
    }

    std::size_t intervals() const {
        validate();
        const double raw = (end - start) / step;
        return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw - 1e-9)));
    }

    double realized_step() const { return (end - start) / static_cast<double>(intervals()); }

    std::vector<double> points() const {
        const std::size_t n = intervals();
        const double h = (end - start) / static_cast<double>(n);
        std::vector<double> g(n + 1);
        for (std::size_t k = 0; k < n; ++k) g[k] = start + static_cast<double>(k) * h;
        g[n] = end;
        return g;
    }
};

/// Default spacing min(0.01, 0.1 / gamma): ten points per correlation length.
inline double default_grid_step(const OUParams &p) { return std::min(0.01, 0.1 / p.gamma); }

/// Noise samples dr(.) on a uniform grid of the transverse loop coordinate.
struct NoisePath {
    std::vector<double> grid;
    std::vector<double> values;

    std::size_t size() const { return grid.size(); }
    double step() const { return (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1); }

    void validate() const {
        if (grid.size() < 2 || grid.size() != values.size()) {
            throw GridMismatch("noise path needs >= 2 samples and one value per grid point");
        }
        const double h = step();
        for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
            if (!(grid[k + 1] > grid[k]) || std::abs(grid[k + 1] - grid[k] - h) > 1e-12 * std::max(1.0, std::abs(grid[k]))) {
                throw GridMismatch("noise grid must be strictly increasing and uniform");
            }
        }
        for (double v : values) {
            if (!std::isfinite(v)) throw GridMismatch("noise values must be finite");
        }
    }
};

/// Identifies one independent random stream: (seed, realization, plane).
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t realization = 0;
    Plane plane = Plane::x;

    std::mt19937_64 engine() const {
        const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
        const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
        std::seed_seq seq{lo(seed), hi(seed), lo(realization), hi(realization),
                          static_cast<std::uint32_t>(plane == Plane::x ? 0x78u : 0x79u)};
        return std::mt19937_64(seq);
    }
};

/// Exact stationary OU recursion on the grid:
///   dr_0 ~ N(0, sigma),  dr_{k+1} = e^{-gamma h} dr_k + sqrt(sigma (1 - e^{-2 gamma h})) xi_k.
inline NoisePath sample_ou(const OUParams &params, const GridSpec &spec, const RngStream &stream) {
    params.validate();
    NoisePath path{spec.points(), {}};
    const std::size_t n = path.grid.size();
    path.values.resize(n);

    auto rng = stream.engine();
    std::normal_distribution<double> normal(0.0, 1.0);
    const double h = spec.realized_step();
    const double decay = std::exp(-params.gamma * h);
    const double kick = std::sqrt(params.sigma * -std::expm1(-2.0 * params.gamma * h));

    path.values[0] = std::sqrt(params.sigma) * normal(rng);
    for (std::size_t k = 1; k < n; ++k) {
        path.values[k] = decay * path.values[k - 1] + kick * normal(rng);
    }
    return path;
}

inline double autocovariance(const OUParams &params, double lag) {
    return params.sigma * std::exp(-params.gamma * std::abs(lag));
}

/// Integral over [0,l]^2 of the OU autocovariance:
///   (2 sigma / gamma) (l - (1 - e^{-gamma l}) / gamma).
inline double covariance_double_integral(const OUParams &params, double l) {
    if (!(l > 0.0)) throw DomainError("covariance integral needs l > 0");
    const double g = params.gamma;
    // l - (1 - e^{-gl})/g loses digits for small g*l; use the series there.
    const double gl = g * l;
    double bracket;
    if (gl < 1e-3) {
        bracket = l * (gl / 2.0 - gl * gl / 6.0 + gl * gl * gl / 24.0);
    } else {
        bracket = l + std::expm1(-gl) / g;
    }
    return 2.0 * params.sigma / g * bracket;
}

/// Constant path dr = offset: the systematic (realization-independent) error.
inline NoisePath systematic_path(double offset, const GridSpec &spec) {
    NoisePath path{spec.points(), {}};
    path.values.assign(path.grid.size(), offset);
    return path;
}

/// Trapezoid rule on uniform spacing h.
inline double trapezoid(std::span<const double> f, double h) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t k = 1; k + 1 < f.size(); ++k) s += f[k];
    return s * h;
}

} // namespace holonoise
