// Copyright 2026 The maxent-sb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Weak-coupling Jaynes-Cummings demo: exact and perturbative maximum-entropy
// states for a qubit coupled to a thermal mode, and how far they sit from
// the uncorrelated product.

#include <cstdio>

#include "maxent_sb/maxent_sb.hpp"

int main() {
  using namespace maxent_sb;
  const double beta = 1.0;
  const DensityOperator rho_s = BlochState::from_vector({0.3, -0.2, 0.5}).density();

  std::printf("%-8s %-12s %-12s %-12s %-12s\n", "J", "||ex-pt||", "||ex-prod||", "corr", "iters");
  for (double j : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}) {
    const HamiltonianModel model = build_jaynes_cummings({1.0, 1.0, j, default_fock_cutoff(beta, 1.0)});
    const Constraint c(rho_s, beta, model);
    const MaxEntSolution exact = solve_exact(c);
    const MaxEntSolution pert = assignment_perturbative(c);
    const MaxEntSolution prod = assignment_factorized_thermal(c);
    std::printf("%-8.0e %-12.3e %-12.3e %-12.3e %-12d\n", j,
                trace_norm(exact.joint_state.op() - pert.joint_state.op()),
                trace_norm(exact.joint_state.op() - prod.joint_state.op()),
                correlation_norm(exact.joint_state, model.layout()), exact.iterations);
  }
  return 0;
}
