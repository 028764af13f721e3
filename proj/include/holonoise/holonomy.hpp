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
#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

#include "holonoise/loops.hpp"
#include "holonoise/ounoise.hpp"
#include "holonoise/qmath.hpp"

namespace holonoise {

/// Coordinate directions of the control manifold at fixed mode.
enum class Direction { x, y, r1, theta1 };

inline constexpr std::array<Direction, 4> kDirections{Direction::x, Direction::y, Direction::r1,
                                                      Direction::theta1};

/// Matrix-valued one-form A_mu(lambda). Components must be anti-Hermitian.
struct ConnectionField {
    std::function<C2Matrix(const ControlPoint &, Direction)> component;

    C2Matrix operator()(const ControlPoint &p, Direction mu) const { return component(p, mu); }

    static ConnectionField zero() {
        return {[](const ControlPoint &, Direction) { return C2Matrix::zero(); }};
    }
};

/// Piecewise-straight path through the control manifold.
struct PolylinePath {
    std::vector<ControlPoint> vertices;

    bool closed(double tol = 1e-12) const {
        if (vertices.size() < 2) return false;
        const ControlPoint &f = vertices.front();
        const ControlPoint &l = vertices.back();
        return std::abs(f.x - l.x) <= tol && std::abs(f.y - l.y) <= tol &&
               std::abs(f.r1 - l.r1) <= tol && std::abs(f.theta1 - l.theta1) <= tol;
    }

    PolylinePath reversed() const {
        PolylinePath r{vertices};
        std::reverse(r.vertices.begin(), r.vertices.end());
        return r;
    }
};

/// Per-plane connection whose loop integral is the weighted area law:
///   x-plane: A_x = -i e^{-2 r1} sigma_y;  y-plane: A_y = +i e^{2 r1} sigma_x.
/// Each plane's components commute, so ordering only matters across planes.
inline ConnectionField effective_connection(Plane plane) {
    if (plane == Plane::x) {
        return {[](const ControlPoint &p, Direction mu) {
            if (mu != Direction::x) return C2Matrix::zero();
            return cd{0.0, -std::exp(-2.0 * p.r1)} * pauli(Axis::y);
        }};
    }
    return {[](const ControlPoint &p, Direction mu) {
        if (mu != Direction::y) return C2Matrix::zero();
        return cd{0.0, std::exp(2.0 * p.r1)} * pauli(Axis::x);
    }};
}

/// Ordered product of exp(A_mu(midpoint) dlambda_mu) over `steps_per_segment`
/// equal steps per edge; later steps multiply on the left.
inline UnitaryGate path_ordered_exp(const ConnectionField &field, const PolylinePath &path,
                                    int steps_per_segment) {
    if (path.vertices.size() < 2) throw std::invalid_argument("path needs at least two vertices");
    if (steps_per_segment < 1) throw std::invalid_argument("steps_per_segment must be >= 1");

    C2Matrix u = C2Matrix::identity();
    const double inv_steps = 1.0 / steps_per_segment;
    for (std::size_t v = 0; v + 1 < path.vertices.size(); ++v) {
        const ControlPoint &p = path.vertices[v];
        const ControlPoint &q = path.vertices[v + 1];
        const std::array<double, 4> delta{(q.x - p.x) * inv_steps, (q.y - p.y) * inv_steps,
                                          (q.r1 - p.r1) * inv_steps,
                                          (q.theta1 - p.theta1) * inv_steps};
        if (delta == std::array<double, 4>{}) continue;
        for (int s = 0; s < steps_per_segment; ++s) {
            const double t = (s + 0.5) * inv_steps;
            const ControlPoint mid{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y),
                                   p.r1 + t * (q.r1 - p.r1), p.theta1 + t * (q.theta1 - p.theta1)};
            C2Matrix generator;
            for (std::size_t mu = 0; mu < kDirections.size(); ++mu) {
                if (delta[mu] == 0.0) continue;
                const C2Matrix a = field(mid, kDirections[mu]);
                if (!is_anti_hermitian(a, kStructuralTol * std::max(1.0, a.max_abs()))) {
                    throw MalformedState("connection component is not anti-Hermitian");
                }
                generator += cd{delta[mu], 0.0} * a;
            }
            u = exp_anti_hermitian(generator).matrix() * u;
        }
    }
    return UnitaryGate::from_matrix(u, 1e-10);
}

/// Closed rectangle starting at (a, 0): bottom edge, right side, top edge, left side
/// for counterclockwise traversal.
inline PolylinePath rect_path(const RectLoop &loop) {
    PolylinePath path{{loop.point(loop.a, 0.0), loop.point(loop.b, 0.0), loop.point(loop.b, loop.d),
                       loop.point(loop.a, loop.d), loop.point(loop.a, 0.0)}};
    return loop.orientation == Orientation::counterclockwise ? path : path.reversed();
}

/// How the sampled top edge d + dr(.) is joined between grid points.
enum class BoundaryShape {
    /// Each sample holds over the half-cells around its grid point. The
    /// loop integral of this staircase is exactly the trapezoid rule.
    sample_hold,
    /// Straight segments between consecutive samples.
    linear,
};

/// Rectangle whose top edge follows r1 = d + dr(.) sampled on `noise`; the
/// r1 = 0 edge stays clean.
inline PolylinePath noisy_rect_path(const RectLoop &loop, const NoisePath &noise,
                                    BoundaryShape shape = BoundaryShape::sample_hold) {
    detail::check_span(loop, noise);
    const std::size_t n = noise.size();
    const auto top = [&](std::size_t k) {
        const double r = loop.d + noise.values[k];
        if (r < 0.0) throw DomainError("perturbed loop height went below r1 = 0");
        return r;
    };

    PolylinePath path;
    path.vertices.reserve(3 * n + 4);
    path.vertices.push_back(loop.point(loop.a, 0.0));
    path.vertices.push_back(loop.point(loop.b, 0.0));
    // top edge runs from b back to a
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = n - 1 - i;
        const double xk = i == 0 ? loop.b : (k == 0 ? loop.a : noise.grid[k]);
        if (shape == BoundaryShape::linear) {
            path.vertices.push_back(loop.point(xk, top(k)));
            continue;
        }
        const double right = k + 1 < n ? 0.5 * (noise.grid[k] + noise.grid[k + 1]) : loop.b;
        const double left = k > 0 ? 0.5 * (noise.grid[k - 1] + noise.grid[k]) : loop.a;
        path.vertices.push_back(loop.point(right, top(k)));
        path.vertices.push_back(loop.point(left, top(k)));
    }
    path.vertices.push_back(loop.point(loop.a, 0.0));
    return loop.orientation == Orientation::counterclockwise ? path : path.reversed();
}

/// Holonomy of the rectangle with a noisy top edge, through the effective connection.
inline UnitaryGate noisy_rect_holonomy(const RectLoop &loop, const NoisePath &noise,
                                       int steps_per_segment,
                                       BoundaryShape shape = BoundaryShape::sample_hold) {
    return path_ordered_exp(effective_connection(loop.plane), noisy_rect_path(loop, noise, shape),
                            steps_per_segment);
}

inline UnitaryGate rect_holonomy(const RectLoop &loop, int steps_per_segment) {
    return path_ordered_exp(effective_connection(loop.plane), rect_path(loop), steps_per_segment);
}

} // namespace holonoise
