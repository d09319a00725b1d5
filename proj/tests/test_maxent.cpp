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


#include <cmath>

#include "test_support.hpp"

namespace maxent_sb {
namespace {

using testing::max_diff;

Constraint jc_constraint(double j, const Eigen::Vector3d& s, double beta = 1.0) {
  return Constraint(BlochState::from_vector(s).density(), beta,
                    build_jaynes_cummings({1.0, 1.0, j, default_fock_cutoff(beta, 1.0)}));
}

TEST(Lambda0, MaximallyMixedQubit) {
  const double beta = 0.8, omega_a = 1.3;
  const Operator h_s = 0.5 * omega_a * pauli::z();
  const Operator l0 = lambda0(DensityOperator::maximally_mixed(2), h_s, beta);
  EXPECT_LT(max_diff(l0, std::log(2.0) * Operator::identity(2) - 0.5 * beta * omega_a * pauli::z()), 1e-14);
}

TEST(Lambda0, InfiniteTemperatureIsMinusLogRho) {
  const auto rho = random_density(3, 8);
  EXPECT_LT(max_diff(lambda0(rho, Operator::zero(3), 0.0), -herm_logm_support(rho.op(), 1e-12)), 1e-14);
}

TEST(DeltaLambda, VanishesForJaynesCummings) {
  for (double beta : {0.2, 1.0, 4.0})
    for (int n_max : {2, 7, 30}) EXPECT_LT(trace_norm(delta_lambda(build_jaynes_cummings({1.0, 1.3, 0.05, n_max}), beta)), 1e-13);
}

TEST(DeltaLambda, VanishesWithoutCoupling) {
  EXPECT_EQ(delta_lambda(build_random_model(3, 2, 0.1, 4).with_coupling_scaled(0.0), 1.0).max_abs(), 0.0);
}

TEST(DeltaLambda, CentralSpinClosedForm) {
  // tr_B{rho_th sum_i sigma_z^(i)} = -tanh(beta) for one bath spin with H_B = sigma_z.
  const double g = 0.01, beta = 0.7;
  const Operator dl = delta_lambda(build_central_spin({1, g}), beta);
  EXPECT_LT(max_diff(dl, -beta * g * (-std::tanh(beta)) * pauli::z()), 1e-15);
  EXPECT_TRUE(dl.is_hermitian(0.0));
}

TEST(Factorized, ThermalAndUniformProducts) {
  const auto rho = random_density(2, 3);
  const auto m = build_random_model(2, 3, 0.02, 9);
  const Constraint c(rho, 2.0, m);
  const auto th = assignment_factorized_thermal(c);
  EXPECT_LT(max_diff(th.joint_state.op(), kron(rho.op(), thermal_state(m.h_b(), 2.0).op())), 1e-14);
  const auto un = assignment_uniform(c);
  EXPECT_LT(max_diff(un.joint_state.op(), kron(rho.op(), Operator::identity(3) / 3.0)), 1e-15);
  const auto hot = assignment_factorized_thermal(Constraint(rho, 1e-12, m));
  EXPECT_LT(max_diff(partial_trace_S(hot.joint_state.op(), m.layout()), Operator::identity(3) / 3.0), 1e-11);
}

TEST(Perturbative, DecoupledIsThermalProduct) {
  const auto rho = random_density(3, 13);
  const auto m = build_random_model(3, 2, 0.05, 14).with_coupling_scaled(0.0);
  const auto sol = assignment_perturbative(Constraint(rho, 1.2, m));
  EXPECT_LT(max_diff(sol.joint_state.op(), kron(rho.op(), thermal_state(m.h_b(), 1.2).op())), 1e-13);
}

TEST(Perturbative, PureJcStateIsNearlyProduct) {
  for (double j : {1e-2, 1e-3}) {
    const auto c = jc_constraint(j, {0.0, 0.6, 0.8});
    const auto sol = assignment_perturbative(c);
    const Operator rs = partial_trace_B(sol.joint_state.op(), c.layout());
    EXPECT_LT(trace_norm(rs - c.rho_s().op()), 20.0 * j * j);
  }
}

TEST(SolveExact, DecoupledConvergesImmediately) {
  const auto rho = random_density(2, 31);
  const auto m = build_random_model(2, 4, 0.01, 32).with_coupling_scaled(0.0);
  const auto sol = solve_exact(Constraint(rho, 3.0, m));
  EXPECT_LE(sol.iterations, 2);
  EXPECT_LE(sol.residual, 1e-10);
  EXPECT_LT(trace_norm(sol.joint_state.op() - kron(rho.op(), thermal_state(m.h_b(), 3.0).op())), 1e-10);
}

TEST(SolveExact, ZeroBetaIsUniform) {
  const auto rho = random_density(3, 41);
  const auto sol = solve_exact(Constraint(rho, 0.0, build_random_model(3, 2, 0.05, 42)));
  EXPECT_EQ(sol.method, AssignmentMethod::factorized_uniform);
  EXPECT_LT(max_diff(sol.joint_state.op(), kron(rho.op(), Operator::identity(2) / 2.0)), 1e-15);
}

TEST(SolveExact, SatisfiesConstraintAndGauge) {
  const auto rho = random_density(3, 51);
  const auto m = build_random_model(3, 3, 0.05, 52);
  const auto sol = solve_exact(Constraint(rho, 2.5, m));
  EXPECT_LE(sol.residual, 1e-10);
  EXPECT_NEAR(trace_norm(partial_trace_B(sol.joint_state.op(), m.layout()) - rho.op()), sol.residual, 1e-14);
  EXPECT_TRUE(sol.lambda_op.is_hermitian(1e-12));
  EXPECT_LT(max_diff(sol.lambda_op, sol.lambda0_op + sol.delta_lambda), 1e-14);
  EXPECT_NEAR((sol.lambda_op - sol.lambda0_op - delta_lambda(m, 2.5)).trace().real(), 0.0, 1e-12);
  // The joint state is the Gibbs state of Lambda (x) 1 + beta H.
  EXPECT_LT(max_diff(joint_state_from_multiplier(sol.lambda_op, m, 2.5).op(), sol.joint_state.op()), 1e-12);
}

TEST(SolveExact, ClampsNearPureStates) {
  const auto c = jc_constraint(1e-3, {0.0, 0.0, 1.0});
  const auto sol = solve_exact(c);
  EXPECT_FALSE(sol.warnings.empty());
  EXPECT_LE(sol.residual, 1e-10);
}

TEST(SolveExact, IterationCapRaisesConvergenceError) {
  const auto rho = random_density(2, 61);
  const Constraint c(rho, 5.0, build_random_model(2, 3, 0.3, 62));
  SolverOptions opts;
  opts.max_iter = 1;
  opts.tol = 1e-15;
  try {
    solve_exact(c, opts);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.best_residual(), 0.0);
    EXPECT_EQ(e.iterations(), 1);
  }
}

TEST(SolveExact, OverdampedStepDivergesEarly) {
  const auto rho = random_density(2, 71);
  const Constraint c(rho, 5.0, build_random_model(2, 3, 0.3, 72));
  SolverOptions opts;
  opts.damping = 2.5;  // overshoots; halvings only bring it back to 0.156
  opts.max_halvings = 0;
  EXPECT_THROW(solve_exact(c, opts), DivergenceError);
}

// Feasible directions X keep tr_B and the energy fixed: tr_B X = 0 and
// tr(X H) = 0. The exact state must have the largest entropy along all of them.
TEST(SolveExact, IsEntropyMaximalAmongFeasibleDeformations) {
  const BipartiteLayout layout(2, 3);
  const auto m = build_random_model(2, 3, 0.05, 81);
  const auto rho = random_density(2, 82);
  const double beta = 1.5;
  const auto sol = solve_exact(Constraint(rho, beta, m));
  const double s_star = von_neumann_entropy(sol.joint_state);
  const Operator h = m.full();
  const Operator h_t = h - kron(partial_trace_B(h, layout), Operator::identity(3) / 3.0);

  Rng rng(83);
  double worst_margin = 1e300;
  for (int k = 0; k < 200; ++k) {
    Operator x = gue(6, rng);
    x = x - kron(partial_trace_B(x, layout), Operator::identity(3) / 3.0);
    x = x - (hs_inner(h_t, x) / hs_inner(h_t, h_t)) * h_t;
    ASSERT_LT(partial_trace_B(x, layout).max_abs(), 1e-14);
    ASSERT_LT(std::abs(hs_inner(h, x)), 1e-14);
    const double eps = 1e-3 * std::uniform_real_distribution<double>(0.1, 1.0)(rng);
    const auto candidate = DensityOperator::normalized(sol.joint_state.op() + eps * x.hermitian_part());
    worst_margin = std::min(worst_margin, s_star - von_neumann_entropy(candidate));
  }
  EXPECT_GE(worst_margin, -1e-9);

  // Energy-matched product: rho_S (x) rho_th(beta') with beta' chosen by bisection.
  const double energy = hs_inner(h, sol.joint_state.op()).real();
  auto product_energy = [&](double b) { return hs_inner(h, kron(rho.op(), thermal_state(m.h_b(), b).op())).real(); };
  double lo = 1e-3, hi = 50.0;
  ASSERT_GT(product_energy(lo), energy);
  ASSERT_LT(product_energy(hi), energy);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (product_energy(mid) > energy ? lo : hi) = mid;
  }
  const auto product = DensityOperator::normalized(kron(rho.op(), thermal_state(m.h_b(), lo).op()));
  EXPECT_GE(s_star - von_neumann_entropy(product), -1e-9);
  // The perturbative state is not exactly feasible, so only compare within O(coupling^2).
  EXPECT_GE(s_star - von_neumann_entropy(assignment_perturbative(Constraint(rho, beta, m)).joint_state), -1e-4);
}

TEST(AssignmentMap, IsNonlinearWithCoupling) {
  const auto m = build_random_model(2, 2, 0.1, 91);
  const auto a = random_density(2, 92), b = random_density(2, 93);
  const double p = 0.3;
  auto map = [&](const DensityOperator& r) { return solve_exact(Constraint(r, 2.0, m)).joint_state.op(); };
  const auto mix = DensityOperator::normalized(p * a.op() + (1 - p) * b.op());
  EXPECT_GT(trace_norm(map(mix) - p * map(a) - (1 - p) * map(b)), 10.0 * 1e-10);

  const auto m0 = m.with_coupling_scaled(0.0);
  auto map0 = [&](const DensityOperator& r) { return solve_exact(Constraint(r, 2.0, m0)).joint_state.op(); };
  EXPECT_LT(trace_norm(map0(mix) - p * map0(a) - (1 - p) * map0(b)), 1e-10);
}

TEST(Proposition, ExactMinusPerturbativeIsQuadratic) {
  const std::vector<double> couplings{1e-1, 1e-2, 1e-3, 1e-4};
  const auto rho = random_density(2, 101);
  for (const auto& unit : {build_central_spin({3, 1.0}), build_jaynes_cummings({1.0, 1.0, 1.0, default_fock_cutoff(1.0, 1.0)})}) {
    std::vector<double> gap;
    for (double g : couplings) {
      const Constraint c(rho, 1.0, unit.with_coupling_scaled(g));
      gap.push_back(trace_norm(solve_exact(c).joint_state.op() - assignment_perturbative(c).joint_state.op()));
    }
    EXPECT_NEAR(testing::slope_of(couplings, gap), 2.0, 0.2);
  }
}

TEST(Proposition, MultiplierCorrectionIsQuadraticForJaynesCummings) {
  const std::vector<double> couplings{4e-2, 2e-2, 1e-2, 5e-3};
  std::vector<double> gap;
  for (double j : couplings) {
    const auto c = jc_constraint(j, {0.2, -0.3, 0.4});
    const auto sol = solve_exact(c);
    gap.push_back(trace_norm(sol.lambda_op - sol.lambda0_op - delta_lambda(c.model(), c.beta())));
  }
  for (std::size_t k = 1; k < gap.size(); ++k) EXPECT_NEAR(gap[k - 1] / gap[k], 4.0, 0.2);
}

TEST(Proposition, SignMutationBreaksScaling) {
  const std::vector<double> couplings{1e-1, 1e-2, 1e-3, 1e-4};
  const auto rho = random_density(2, 111);
  const auto unit = build_central_spin({2, 1.0});
  EXPECT_NEAR(proposition_slope(unit, rho, 1.0, couplings, 1.0), 2.0, 0.2);
  EXPECT_LT(proposition_slope(unit, rho, 1.0, couplings, -1.0), 1.5);
}

TEST(AssignmentMethod, ParsesNames) {
  EXPECT_EQ(parse_assignment_method("factorized-thermal"), AssignmentMethod::factorized_thermal);
  EXPECT_EQ(parse_assignment_method("exact"), AssignmentMethod::exact);
  EXPECT_EQ(to_string(AssignmentMethod::factorized_uniform), "factorized-uniform");
  EXPECT_THROW(parse_assignment_method("newton"), PreconditionError);
}

}  // namespace
}  // namespace maxent_sb
