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

// Builds the Hadamard gate from its two loops, then perturbs loop I's top
// edge with one Ornstein-Uhlenbeck realization and prints the output state.

#include <iostream>

#include "holonoise/holonoise.hpp"

int main() {
    using namespace holonoise;

    const HadamardLoopPair pair = HadamardLoopPair::make(1.0, 1.0);
    std::cout << "d_x = " << pair.loop_I.d << ", d_y = " << pair.loop_II.d << '\n';

    const UnitaryGate h = rect_holonomy(pair.loop_II, 1) * rect_holonomy(pair.loop_I, 1);
    std::cout << "holonomy product:\n";
    for (int r = 0; r < 2; ++r) std::cout << "  " << h.matrix()(r, 0) << "  " << h.matrix()(r, 1) << '\n';

    const OUParams noise{1e-3, 5.0};
    const GridSpec grid{pair.loop_I.a, pair.loop_I.b, default_grid_step(noise)};
    const NoisePath path = sample_ou(noise, grid, {7, 0, Plane::x});
    const NoisePath clean = systematic_path(0.0, {pair.loop_II.a, pair.loop_II.b, 0.01});
    const GateRealization g = realize(pair, path, clean);

    std::cout << "alpha = " << g.alpha << ", beta = " << g.beta << '\n';
    std::cout << "fidelity = " << fidelity(ideal_density(Basis::zero), g.state(Basis::zero))
              << ", purity = " << purity(g.state(Basis::zero)) << '\n';
}
