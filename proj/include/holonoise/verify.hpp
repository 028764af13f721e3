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

#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "holonoise/ensemble.hpp"
#include "holonoise/gatelab.hpp"
#include "holonoise/holonomy.hpp"
#include "holonoise/loops.hpp"
#include "holonoise/qmath.hpp"

namespace holonoise {

struct CheckResult {
    std::string name;
    std::string detail;
    bool pass = false;
};

struct VerifyOptions {
    /// Fault injection: traverse both Hadamard loops clockwise.
    bool flip_orientation = false;
    std::uint64_t seed = 2026;
};

namespace detail {

inline std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace detail

/// Structural self-checks across all modules. Every check is deterministic.
inline std::vector<CheckResult> run_verification(const VerifyOptions &opt = {}) {
    std::vector<CheckResult> out;
    const auto record = [&](std::string name, bool pass, std::string detail) {
        out.push_back({std::move(name), std::move(detail), pass});
    };
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);

    {
        const C2Matrix id = C2Matrix::identity();
        double worst = 0.0;
        for (Axis a : {Axis::x, Axis::y, Axis::z}) {
            const C2Matrix p = pauli(a);
            worst = std::max({worst, max_abs_diff(p * p, id), std::abs(p.trace()),
                              max_abs_diff(p, p.adjoint())});
        }
        worst = std::max(worst, max_abs_diff(pauli(Axis::x) * pauli(Axis::y),
                                             cd{0.0, 1.0} * pauli(Axis::z)));
        record("pauli algebra", worst == 0.0, "max deviation " + detail::fmt_double(worst));
    }

    {
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const double cx = angle(rng), cy = angle(rng), cz = angle(rng);
            const C2Matrix u = su2_exp(cx, cy, cz).matrix();
            const C2Matrix v = su2_exp(-cx, -cy, -cz).matrix();
            worst = std::max({worst, max_abs_diff(u.adjoint() * u, C2Matrix::identity()),
                              std::abs(u.determinant() - 1.0),
                              max_abs_diff(u * v, C2Matrix::identity())});
        }
        record("su(2) exponential unitarity", worst <= kStructuralTol,
               "max deviation " + detail::fmt_double(worst));
    }

    {
        std::uniform_real_distribution<double> lx_dist(kPi / 4.0 + 0.05, 10.0);
        std::uniform_real_distribution<double> ly_dist(0.05, 10.0);
        double worst_I = 0.0, worst_II = 0.0;
        for (int k = 0; k < 100; ++k) {
            const double lx = lx_dist(rng);
            const double ly = ly_dist(rng);
            worst_I = std::max(worst_I, std::abs(area_sigma(Plane::x, lx, solve_dx(lx)) - kSigmaI));
            worst_II = std::max(worst_II, std::abs(area_sigma(Plane::y, ly, solve_dy(ly)) - kSigmaII));
        }
        const HadamardLoopPair unit = HadamardLoopPair::make(1.0, 1.0);
        record("loop I area round trip", worst_I <= kStructuralTol,
               "Sigma_I = " + detail::fmt_double(area_sigma(unit.loop_I)) + " (pi/4 = " +
                   detail::fmt_double(kSigmaI) + "), max error " + detail::fmt_double(worst_I));
        record("loop II area round trip", worst_II <= kStructuralTol,
               "Sigma_II = " + detail::fmt_double(area_sigma(unit.loop_II)) + " (pi/2 = " +
                   detail::fmt_double(kSigmaII) + "), max error " + detail::fmt_double(worst_II));
    }

    {
        HadamardLoopPair pair = HadamardLoopPair::make(1.0, 1.0);
        if (opt.flip_orientation) {
            pair.loop_I.orientation = Orientation::clockwise;
            pair.loop_II.orientation = Orientation::clockwise;
        }
        const UnitaryGate h = rect_holonomy(pair.loop_II, 1) * rect_holonomy(pair.loop_I, 1);
        const double s = 1.0 / std::numbers::sqrt2;
        const C2Matrix target = cd{0.0, -1.0} * C2Matrix{s, s, s, -s};
        const double err = max_abs_diff(h.matrix(), target);
        record("two-loop holonomy equals -i H0", err <= kStructuralTol,
               "max deviation " + detail::fmt_double(err));
    }

    {
        const HadamardLoopPair pair = HadamardLoopPair::make(1.3, 0.7);
        double worst = 0.0;
        for (int steps : {1, 10, 1000}) {
            worst = std::max(worst, max_abs_diff(rect_holonomy(pair.loop_I, steps).matrix(),
                                                 su2_exp(0.0, kSigmaI, 0.0).matrix()));
            worst = std::max(worst, max_abs_diff(rect_holonomy(pair.loop_II, steps).matrix(),
                                                 su2_exp(kSigmaII, 0.0, 0.0).matrix()));
        }
        record("path-ordered integrator exactness", worst <= kStructuralTol,
               "max deviation over steps {1,10,1000}: " + detail::fmt_double(worst));
    }

    {
        const HadamardLoopPair pair = HadamardLoopPair::make(1.0, 1.0);
        const OUParams p{1e-3, 5.0};
        const GridSpec g{pair.loop_I.a, pair.loop_I.b, default_grid_step(p)};
        const NoisePath noise = sample_ou(p, g, {opt.seed, 0, Plane::x});
        const UnitaryGate fwd = noisy_rect_holonomy(pair.loop_I, noise, 4);
        RectLoop reversed = pair.loop_I;
        reversed.orientation = Orientation::clockwise;
        const UnitaryGate back = noisy_rect_holonomy(reversed, noise, 4);
        const double rev_err = max_abs_diff(back.matrix(), fwd.adjoint().matrix());
        const double alpha = perturbed_alpha(pair.loop_I, noise);
        const double area_err =
            max_abs_diff(fwd.matrix(), su2_exp(0.0, kSigmaI + alpha, 0.0).matrix());
        record("noisy holonomy matches perturbed area", area_err <= 1e-8,
               "max deviation " + detail::fmt_double(area_err));
        record("orientation reversal inverts holonomy", rev_err <= 1e-10,
               "max deviation " + detail::fmt_double(rev_err));
    }

    {
        std::uniform_real_distribution<double> small(-0.5, 0.5);
        double worst = 0.0, worst_purity = 0.0;
        for (int k = 0; k < 200; ++k) {
            const double a = small(rng), b = small(rng);
            for (Basis j : {Basis::zero, Basis::one}) {
                const DensityMatrix closed = realization_density(j, a, b);
                const DensityMatrix built = conjugate_state(perturbed_gate(a, b), j);
                worst = std::max(worst, max_abs_diff(closed.matrix(), built.matrix()));
                worst_purity = std::max(worst_purity, std::abs(purity(closed) - 1.0));
            }
        }
        record("closed-form output state matches gate", worst <= kStructuralTol,
               "max deviation " + detail::fmt_double(worst));
        record("single realizations are pure", worst_purity <= kStructuralTol,
               "max |1 - purity| " + detail::fmt_double(worst_purity));
    }

    {
        ExperimentConfig cfg;
        cfg.mode = NoiseMode::systematic;
        cfg.offset_x = 0.05;
        cfg.offset_y = 0.02;
        cfg.n_realizations = 100;
        const EnsembleResult r = run_ensemble(cfg);
        const bool ok = std::abs(r.I_mc - 1.0) <= kStructuralTol && 1.0 - r.F_mc >= 1e-4;
        record("systematic error keeps purity 1", ok,
               "I = " + detail::fmt_double(r.I_mc) + ", 1 - F = " + detail::fmt_double(1.0 - r.F_mc));
    }
    return out;
}

} // namespace holonoise
