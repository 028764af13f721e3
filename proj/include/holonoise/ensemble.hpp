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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "holonoise/gatelab.hpp"
#include "holonoise/loops.hpp"
#include "holonoise/ounoise.hpp"
#include "holonoise/qmath.hpp"

namespace holonoise {

class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class NoiseMode { stochastic, systematic };

inline constexpr std::string_view to_string(NoiseMode m) {
    return m == NoiseMode::stochastic ? "stochastic" : "systematic";
}

/// Number of batches used for batch-means standard errors.
inline constexpr std::uint64_t kBatches = 20;
/// Above this x-plane variance the small-noise expansions are flagged as extrapolated.
inline constexpr double kSmallNoiseLimit = 1e-2;

struct ExperimentConfig {
    double lx = 1.0;
    double ly = 1.0;
    OUParams ou_x{0.0, 5.0};
    OUParams ou_y{0.0, 5.0};
    std::uint64_t n_realizations = 20000;
    std::uint64_t seed = 42;
    /// Requested grid spacing; unset means min(0.01, 0.1 / gamma) per plane.
    std::optional<double> grid_dx;
    Basis j = Basis::zero;
    NoiseMode mode = NoiseMode::stochastic;
    double offset_x = 0.0;
    double offset_y = 0.0;
    unsigned threads = 1;

    void validate() const {
        if (!(lx >= kPi / 4.0 + kLxMargin) || !std::isfinite(lx)) {
            throw ConfigError("lx = " + std::to_string(lx) +
                              ": loop I length must satisfy l_x > pi/4 (d_x = -ln(1 - pi/(4 l_x))/2)");
        }
        if (!(ly > 0.0) || !std::isfinite(ly)) throw ConfigError("ly must be > 0");
        try {
            ou_x.validate();
            ou_y.validate();
        } catch (const DomainError &e) {
            throw ConfigError(e.what());
        }
        if (n_realizations < 1) throw ConfigError("n must be >= 1");
        if (grid_dx && (!(*grid_dx > 0.0) || !std::isfinite(*grid_dx))) {
            throw ConfigError("grid-dx must be > 0");
        }
        if (!std::isfinite(offset_x) || !std::isfinite(offset_y)) throw ConfigError("offsets must be finite");
        if (threads < 1) throw ConfigError("threads must be >= 1");
    }

    GridSpec grid(const RectLoop &loop) const {
        const OUParams &p = loop.plane == Plane::x ? ou_x : ou_y;
        return {loop.a, loop.b, grid_dx.value_or(default_grid_step(p))};
    }
};

struct EnsembleResult {
    DensityMatrix rho_avg = DensityMatrix::maximally_mixed();
    double F_mc = 0.0;
    double F_stderr = 0.0;
    double I_mc = 0.0;
    double I_stderr = 0.0;
    double f_mc = 0.0;
    /// Sample mean of per-realization tr(rho_0j rho~_j); equals F_mc by linearity.
    double F_realization_mean = 0.0;
    /// Truncated small-noise expansion; may leave the state space when extrapolated.
    C2Matrix rho_analytic;
    double F_analytic = 1.0;
    double I_analytic = 1.0;
    std::uint64_t n_used = 0;
    NoiseMode mode = NoiseMode::stochastic;
    /// True when sigma_x is beyond the small-noise regime of the analytic columns.
    bool analytic_extrapolated = false;
};

/// Averaged output state to first non-vanishing order in the x-plane noise;
/// y-plane noise is neglected. `diagonal_sign` selects the sign of the
/// population shift; -1 is what the ensemble produces (<e^{-2 dr}> = e^{2 sigma}).
inline C2Matrix analytic_rho(const ExperimentConfig &config, Basis j, int diagonal_sign = -1) {
    const double l = config.lx;
    const double dx = solve_dx(l);
    const double pop = 2.0 * std::exp(-2.0 * dx) * l * config.ou_x.sigma * (diagonal_sign < 0 ? -1.0 : 1.0);
    const double coherence_loss = 4.0 * std::exp(-4.0 * dx) * covariance_double_integral(config.ou_x, l);
    const double s = parity_sign(j);

    C2Matrix m;
    const int a = index(j);
    const int b = index(complement(j));
    m(a, a) = 0.5 + pop;
    m(b, b) = 0.5 - pop;
    m(a, b) = s * (0.5 - coherence_loss);
    m(b, a) = m(a, b);
    return m;
}

/// F = 1 - (4 sigma/(gamma l)) (l sqrt2 - pi/(2 sqrt2))^2 [1 - (1 - e^{-gamma l})/(gamma l)].
inline double analytic_fidelity(const ExperimentConfig &config) {
    const double l = config.lx;
    const double g = config.ou_x.gamma;
    const double gl = g * l;
    const double lever = l * std::numbers::sqrt2 - kPi / (2.0 * std::numbers::sqrt2);
    const double memory = gl < 1e-3 ? gl / 2.0 - gl * gl / 6.0 : 1.0 + std::expm1(-gl) / gl;
    return 1.0 - 4.0 * config.ou_x.sigma / gl * lever * lever * memory;
}

struct PurityPrediction {
    double exact;       ///< 1/2 + (1 - 2F)^2 / 2
    double small_error; ///< 2F - 1, valid for 1 - F << 1
};

inline PurityPrediction analytic_purity(double F) {
    const double t = 1.0 - 2.0 * F;
    return {0.5 + 0.5 * t * t, 2.0 * F - 1.0};
}

namespace detail {

struct BatchSum {
    C2Matrix rho;
    double fidelity = 0.0;
    std::uint64_t count = 0;
};

inline double batch_stderr(const std::vector<double> &values) {
    const std::size_t b = values.size();
    if (b < 2) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(b);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(b - 1) / static_cast<double>(b));
}

} // namespace detail

/// Monte Carlo average of rho~_j over noise realizations.
///
/// Realization i draws its x- and y-plane paths from streams (seed, i, plane),
/// so the result does not depend on `threads`. Realizations are summed per
/// batch in index order, then batches in batch order.
inline EnsembleResult run_ensemble(const ExperimentConfig &config) {
    config.validate();
    const HadamardLoopPair pair = HadamardLoopPair::make(config.lx, config.ly);
    const GridSpec grid_x = config.grid(pair.loop_I);
    const GridSpec grid_y = config.grid(pair.loop_II);
    const DensityMatrix rho0 = ideal_density(config.j);
    const std::uint64_t n = config.n_realizations;

    std::optional<DensityMatrix> fixed_state;
    if (config.mode == NoiseMode::systematic) {
        const double alpha = perturbed_alpha(pair.loop_I, systematic_path(config.offset_x, grid_x));
        const double beta = perturbed_beta(pair.loop_II, systematic_path(config.offset_y, grid_y));
        fixed_state = realization_density(config.j, alpha, beta);
    }

    const auto realization = [&](std::uint64_t i) {
        if (fixed_state) return *fixed_state;
        const NoisePath nx = sample_ou(config.ou_x, grid_x, {config.seed, i, Plane::x});
        const NoisePath ny = sample_ou(config.ou_y, grid_y, {config.seed, i, Plane::y});
        return realization_density(config.j, perturbed_alpha(pair.loop_I, nx),
                                   perturbed_beta(pair.loop_II, ny));
    };

    const std::uint64_t batches = std::min(kBatches, n);
    std::vector<detail::BatchSum> sums(batches);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto worker = [&] {
        try {
            for (std::uint64_t b = next++; b < batches; b = next++) {
                detail::BatchSum &acc = sums[b];
                for (std::uint64_t i = n * b / batches; i < n * (b + 1) / batches; ++i) {
                    const DensityMatrix rho = realization(i);
                    acc.rho += rho.matrix();
                    acc.fidelity += fidelity(rho0, rho);
                    ++acc.count;
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(config.threads, batches));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    C2Matrix total;
    double fidelity_total = 0.0;
    std::vector<double> batch_f, batch_i;
    for (const detail::BatchSum &s : sums) {
        total += s.rho;
        fidelity_total += s.fidelity;
        const DensityMatrix rb = DensityMatrix::from_matrix(cd{1.0 / static_cast<double>(s.count)} * s.rho, 1e-10);
        batch_f.push_back(fidelity(rho0, rb));
        batch_i.push_back(purity(rb));
    }

    EnsembleResult r;
    r.mode = config.mode;
    r.n_used = n;
    r.rho_avg = DensityMatrix::from_matrix(cd{1.0 / static_cast<double>(n)} * total, 1e-10);
    r.F_mc = fidelity(rho0, r.rho_avg);
    r.I_mc = purity(r.rho_avg);
    r.f_mc = std::sqrt(std::max(0.0, r.F_mc));
    r.F_stderr = detail::batch_stderr(batch_f);
    r.I_stderr = detail::batch_stderr(batch_i);
    r.F_realization_mean = fidelity_total / static_cast<double>(n);

    if (fixed_state) {
        r.rho_analytic = fixed_state->matrix();
        r.F_analytic = fidelity(rho0, *fixed_state);
        r.I_analytic = 1.0;
    } else {
        r.rho_analytic = analytic_rho(config, config.j);
        r.F_analytic = analytic_fidelity(config);
        r.I_analytic = analytic_purity(r.F_analytic).exact;
        r.analytic_extrapolated = config.ou_x.sigma > kSmallNoiseLimit;
    }
    return r;
}

struct ComparisonThresholds {
    double max_z = 3.0;
    /// Small-error residual bound: stat_k (I_se + 2 F_se) + quad_k (1 - F)^2.
    double stat_k = 3.0;
    double quad_k = 10.0;
    double exact_tol = 1e-12;
};

struct ComparisonReport {
    NoiseMode mode = NoiseMode::stochastic;
    /// False when the stochastic closed forms do not apply (systematic mode or
    /// noise beyond the small-error regime).
    bool analytic_applicable = true;
    double z_fidelity = 0.0;
    double z_purity = 0.0;
    /// |I_mc - (2 F_mc - 1)|
    double small_error_residual = 0.0;
    double small_error_bound = 0.0;
    /// |1 - I_mc|
    double purity_deficit = 0.0;
    bool fidelity_ok = true;
    bool purity_ok = true;
    bool small_error_ok = true;
    bool pass = true;
};

namespace detail {

inline double zscore(double diff, double stderr_) {
    diff = std::abs(diff);
    if (diff == 0.0) return 0.0;
    return stderr_ > 0.0 ? diff / stderr_ : std::numeric_limits<double>::infinity();
}

} // namespace detail

inline ComparisonReport compare(const EnsembleResult &result, const ComparisonThresholds &t = {}) {
    ComparisonReport c;
    c.mode = result.mode;
    c.purity_deficit = std::abs(1.0 - result.I_mc);
    c.small_error_residual = std::abs(result.I_mc - (2.0 * result.F_mc - 1.0));
    const double infidelity = 1.0 - result.F_mc;
    c.small_error_bound =
        t.stat_k * (result.I_stderr + 2.0 * result.F_stderr) + t.quad_k * infidelity * infidelity;

    if (result.mode == NoiseMode::systematic) {
        c.analytic_applicable = false;
        c.purity_ok = c.purity_deficit <= t.exact_tol;
        c.fidelity_ok = std::abs(result.F_mc - result.F_analytic) <= t.exact_tol;
        c.small_error_ok = true;
    } else {
        c.analytic_applicable = !result.analytic_extrapolated;
        c.z_fidelity = detail::zscore(result.F_mc - result.F_analytic, result.F_stderr);
        c.z_purity = detail::zscore(result.I_mc - result.I_analytic, result.I_stderr);
        c.fidelity_ok = c.z_fidelity <= t.max_z;
        c.purity_ok = c.z_purity <= t.max_z;
        c.small_error_ok = c.small_error_residual <= c.small_error_bound;
    }
    c.pass = c.fidelity_ok && c.purity_ok && c.small_error_ok;
    return c;
}

} // namespace holonoise
