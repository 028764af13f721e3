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

// Independent reference computations for the test suites. Nothing here calls
// into the closed forms it is used to check.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "holonoise/qmath.hpp"

namespace holonoise::oracle {

/// exp(A) by scaling and squaring a truncated Taylor series.
inline C2Matrix expm(const C2Matrix &a) {
    int squarings = 0;
    double norm = a.max_abs() * 2.0;
    while (norm > 0.25) {
        norm *= 0.5;
        ++squarings;
    }
    const cd scale = std::pow(0.5, squarings);
    const C2Matrix x = scale * a;
    C2Matrix term = C2Matrix::identity();
    C2Matrix sum = C2Matrix::identity();
    for (int k = 1; k <= 30; ++k) {
        term = cd{1.0 / k} * (term * x);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

/// exp(-i (c . sigma)) through the series oracle.
inline C2Matrix su2_series(double cx, double cy, double cz) {
    const C2Matrix gen = cx * pauli(Axis::x) + cy * pauli(Axis::y) + cz * pauli(Axis::z);
    return expm(cd{0.0, -1.0} * gen);
}

/// The perturbed two-loop gate, expanded by hand into Pauli components:
///   -(cos a - sin a)(sin b + i sx cos b)/sqrt2 - i (cos a + sin a)(sz cos b - sy sin b)/sqrt2
inline C2Matrix expanded_perturbed_gate(double a, double b) {
    const double r = 1.0 / std::sqrt(2.0);
    const C2Matrix id = C2Matrix::identity();
    const cd i{0.0, 1.0};
    const C2Matrix first = cd{-(std::cos(a) - std::sin(a)) * r} *
                           (cd{std::sin(b)} * id + (i * std::cos(b)) * pauli(Axis::x));
    const C2Matrix second = (-i * ((std::cos(a) + std::sin(a)) * r)) *
                            (cd{std::cos(b)} * pauli(Axis::z) - cd{std::sin(b)} * pauli(Axis::y));
    return first + second;
}

/// Composite Simpson over the piecewise-linear interpolant of samples `f` on
/// spacing h, each cell split into `sub` (even) panels.
inline double simpson_of_interpolant(const std::vector<double> &f, double h, int sub = 8) {
    double total = 0.0;
    const double q = h / sub;
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
        const auto g = [&](int m) { return f[k] + (f[k + 1] - f[k]) * m / sub; };
        double s = g(0) + g(sub);
        for (int m = 1; m < sub; ++m) s += (m % 2 ? 4.0 : 2.0) * g(m);
        total += s * q / 3.0;
    }
    return total;
}

/// Trapezoid rule on an n x n grid over [0,l]^2 of sigma exp(-gamma |x - x'|).
inline double brute_force_covariance_integral(double sigma, double gamma, double l, int n = 2000) {
    const double h = l / n;
    std::vector<double> table(n + 1);
    for (int k = 0; k <= n; ++k) table[k] = sigma * std::exp(-gamma * k * h);
    const auto w = [n](int i) { return (i == 0 || i == n) ? 0.5 : 1.0; };
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
        double row = 0.0;
        for (int j = 0; j <= n; ++j) row += w(j) * table[std::abs(i - j)];
        s += w(i) * row;
    }
    return s * h * h;
}

} // namespace holonoise::oracle
