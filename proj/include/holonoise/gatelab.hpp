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

#include "holonoise/loops.hpp"
#include "holonoise/ounoise.hpp"
#include "holonoise/qmath.hpp"

namespace holonoise {

/// Gate from the two loops with areas pi/4 + alpha and pi/2 + beta:
///   exp(-i sigma_x (pi/2 + beta)) exp(-i sigma_y (pi/4 + alpha)).
inline UnitaryGate perturbed_gate(double alpha, double beta) {
    return su2_exp(kSigmaII + beta, 0.0, 0.0) * su2_exp(0.0, kSigmaI + alpha, 0.0);
}

/// -i H0 with H0 the Hadamard matrix.
inline UnitaryGate ideal_hadamard() { return perturbed_gate(0.0, 0.0); }

/// Output state for input |j> after the gate perturbed by (alpha, beta), in
/// closed form with gamma = alpha - pi/4:
///   <j|rho|j>   = 1/2 + cos(2 gamma) cos(2 beta) / 2
///   <j|rho|nj>  = (i/2) sin(2 beta) cos(2 gamma) - (-1)^j sin(2 gamma) / 2
inline DensityMatrix realization_density(Basis j, double alpha, double beta) {
    const double gamma = alpha - kPi / 4.0;
    const double c2g = std::cos(2.0 * gamma);
    const double diag = 0.5 * c2g * std::cos(2.0 * beta);
    const cd coherence{-0.5 * parity_sign(j) * std::sin(2.0 * gamma), 0.5 * std::sin(2.0 * beta) * c2g};

    C2Matrix m;
    const int a = index(j);
    const int b = index(complement(j));
    m(a, a) = 0.5 + diag;
    m(b, b) = 0.5 - diag;
    m(a, b) = coherence;
    m(b, a) = std::conj(coherence);
    return DensityMatrix::from_matrix(m);
}

/// Error-free output state rho_0j: all populations 1/2, coherence (-1)^j / 2.
inline DensityMatrix ideal_density(Basis j) { return realization_density(j, 0.0, 0.0); }

/// One noise realization pushed through the gate.
struct GateRealization {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = -kPi / 4.0;
    UnitaryGate gate;
    std::array<DensityMatrix, 2> per_state{DensityMatrix::basis_state(Basis::zero),
                                           DensityMatrix::basis_state(Basis::one)};

    const DensityMatrix &state(Basis j) const { return per_state[index(j)]; }
};

inline GateRealization realize(const HadamardLoopPair &pair, const NoisePath &noise_x,
                               const NoisePath &noise_y) {
    GateRealization r;
    r.alpha = perturbed_alpha(pair.loop_I, noise_x);
    r.beta = perturbed_beta(pair.loop_II, noise_y);
    r.gamma = r.alpha - kPi / 4.0;
    r.gate = perturbed_gate(r.alpha, r.beta);
    r.per_state = {realization_density(Basis::zero, r.alpha, r.beta),
                   realization_density(Basis::one, r.alpha, r.beta)};
    return r;
}

} // namespace holonoise
