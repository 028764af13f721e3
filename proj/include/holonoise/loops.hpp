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
#include <numbers>
#include <string>
#include <vector>

#include "holonoise/common.hpp"
#include "holonoise/ounoise.hpp"

namespace holonoise {

inline constexpr double kPi = std::numbers::pi;
/// Geometric area of loop I for the Hadamard construction.
inline constexpr double kSigmaI = kPi / 4.0;
/// Geometric area of loop II for the Hadamard construction.
inline constexpr double kSigmaII = kPi / 2.0;
/// Configuration-level margin above l_x = pi/4, where d_x diverges.
inline constexpr double kLxMargin = 1e-6;

/// Point of the control manifold: eta = x + iy, nu = r1 e^{i theta1}.
struct ControlPoint {
    double x = 0.0;
    double y = 0.0;
    double r1 = 0.0;
    double theta1 = 0.0;
};

enum class Orientation { counterclockwise, clockwise };

/// Axis-parallel rectangle in one control plane with its lower side on r1 = 0.
/// Spans [a, b] in the transverse coordinate and [0, d] in r1.
struct RectLoop {
    Plane plane = Plane::x;
    double a = 0.0;
    double b = 1.0;
    double d = 0.0;
    Orientation orientation = Orientation::counterclockwise;

    double length() const { return b - a; }

    void validate() const {
        if (!(b > a)) throw DomainError("rectangle needs b > a");
        if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("rectangle needs height d > 0");
    }

    ControlPoint point(double transverse, double r1) const {
        return plane == Plane::x ? ControlPoint{transverse, 0.0, r1, 0.0}
                                 : ControlPoint{0.0, transverse, r1, 0.0};
    }
};

/// Height of loop I such that its area is pi/4; requires l_x > pi/4.
inline double solve_dx(double lx) {
    if (!(lx > kPi / 4.0)) {
        throw DomainError("l_x = " + std::to_string(lx) +
                          " violates l_x > pi/4 (loop I cannot enclose area pi/4)");
    }
    return -0.5 * std::log1p(-kPi / (4.0 * lx));
}

/// Height of loop II such that its area is pi/2.
inline double solve_dy(double ly) {
    if (!(ly > 0.0)) throw DomainError("l_y must be > 0");
    return 0.5 * std::log1p(kPi / (2.0 * ly));
}

/// Weighted area: x-plane  int 2 e^{-2 r1} dx dr1 = l (1 - e^{-2d}),
///                y-plane  int 2 e^{+2 r1} dy dr1 = l (e^{2d} - 1).
inline double area_sigma(Plane plane, double l, double d) {
    return plane == Plane::x ? -l * std::expm1(-2.0 * d) : l * std::expm1(2.0 * d);
}

inline double area_sigma(const RectLoop &loop) {
    return area_sigma(loop.plane, loop.length(), loop.d);
}

/// Loop I in (x, r1) and loop II in (y, r1) with areas pi/4 and pi/2.
struct HadamardLoopPair {
    RectLoop loop_I;
    RectLoop loop_II;

    static HadamardLoopPair make(double lx, double ly, double ax = 0.0, double ay = 0.0) {
        HadamardLoopPair pair{{Plane::x, ax, ax + lx, solve_dx(lx), Orientation::counterclockwise},
                              {Plane::y, ay, ay + ly, solve_dy(ly), Orientation::counterclockwise}};
        return pair;
    }
};

namespace detail {

inline void check_span(const RectLoop &loop, const NoisePath &noise) {
    noise.validate();
    const double tol = 1e-9 * std::max(1.0, std::abs(loop.b));
    if (std::abs(noise.grid.front() - loop.a) > tol || std::abs(noise.grid.back() - loop.b) > tol) {
        throw GridMismatch("noise grid [" + std::to_string(noise.grid.front()) + ", " +
                           std::to_string(noise.grid.back()) + "] does not span loop [" +
                           std::to_string(loop.a) + ", " + std::to_string(loop.b) + "]");
    }
}

} // namespace detail

/// Area change of loop I when its top edge moves to d + dr(x):
///   alpha = e^{-2 d} int_a^b (1 - e^{-2 dr(x)}) dx, trapezoid on the noise grid.
inline double perturbed_alpha(const RectLoop &loop, const NoisePath &noise) {
    if (loop.plane != Plane::x) throw DomainError("alpha is defined for the x-plane loop");
    detail::check_span(loop, noise);
    std::vector<double> integrand(noise.size());
    for (std::size_t k = 0; k < noise.size(); ++k) integrand[k] = -std::expm1(-2.0 * noise.values[k]);
    return std::exp(-2.0 * loop.d) * trapezoid(integrand, noise.step());
}

/// Area change of loop II: beta = e^{2 d} int_a^b (e^{2 dr(y)} - 1) dy.
inline double perturbed_beta(const RectLoop &loop, const NoisePath &noise) {
    if (loop.plane != Plane::y) throw DomainError("beta is defined for the y-plane loop");
    detail::check_span(loop, noise);
    std::vector<double> integrand(noise.size());
    for (std::size_t k = 0; k < noise.size(); ++k) integrand[k] = std::expm1(2.0 * noise.values[k]);
    return std::exp(2.0 * loop.d) * trapezoid(integrand, noise.step());
}

} // namespace holonoise
