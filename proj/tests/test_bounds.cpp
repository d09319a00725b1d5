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

TEST(Corollary1, DecoupledHasZeroSlack) {
  const auto m = build_random_model(2, 3, 0.05, 1).with_coupling_scaled(0.0);
  const auto r = corollary1_check(Constraint(random_density(2, 2), 1.0, m), AssignmentMethod::exact);
  EXPECT_NEAR(r.lhs, 0.0, 1e-10);
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_TRUE(r.satisfied);
}

TEST(Corollary1, CentralSpinSweepOverBathSize) {
  const auto rho = random_density(2, 3);
  std::vector<BoundReport> rows;
  for (int n = 1; n <= 6; ++n) rows.push_back(corollary1_check(Constraint(rho, 1.0, build_central_spin({n, 1e-3})),
                                                               AssignmentMethod::perturbative));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_TRUE(rows[k].satisfied);
    if (k > 0) {
      EXPECT_GT(rows[k].rhs, rows[k - 1].rhs);
      EXPECT_GT(rows[k].rhs - rows[k - 1].rhs, rows[k].lhs - rows[k - 1].lhs);
    }
  }
}

TEST(Corollary1, RatioIsCouplingIndependent) {
  const auto rho = random_density(2, 4);
  std::vector<double> ratios;
  for (double g : {1e-2, 1e-3, 1e-4}) {
    const auto r = corollary1_check(Constraint(rho, 1.0, build_central_spin({1, g})), AssignmentMethod::perturbative);
    ratios.push_back(r.lhs / r.rhs);
  }
  EXPECT_NEAR(ratios[1] / ratios[0], 1.0, 0.05);
  EXPECT_NEAR(ratios[2] / ratios[1], 1.0, 0.05);
}

TEST(Corollary1, HoldsOnRandomInstances) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto inst = random_instance(17, i);
    const Constraint c(inst.rho_s, inst.beta, inst.model);
    for (auto method : {AssignmentMethod::exact, AssignmentMethod::perturbative})
      EXPECT_TRUE(corollary1_check(c, method).satisfied) << inst.descriptor;
  }
}

TEST(ConditionalEntropy, ExtremesOfTheBand) {
  const auto rho = random_density(2, 5);
  const BipartiteLayout layout(2, 3);
  EXPECT_NEAR(conditional_entropy(DensityOperator::normalized(kron(rho.op(), Operator::identity(3) / 3.0)), layout),
              std::log(3.0), 1e-12);
  Vector e = Vector::Zero(3);
  e(1) = 1.0;
  EXPECT_NEAR(conditional_entropy(DensityOperator::normalized(kron(rho.op(), Operator::projector(e))), layout), 0.0,
              1e-12);
  EXPECT_NEAR(conditional_entropy(purify(rho, 3), layout), -von_neumann_entropy(rho), 1e-12);
}

TEST(ConditionalEntropy, ExactStateIsNearlyMaximal) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto inst = random_instance(23, i);
    const Constraint c(inst.rho_s, inst.beta, inst.model);
    const double exact = conditional_entropy(solve_exact(c).joint_state, inst.model.layout());
    const double product = conditional_entropy(assignment_factorized_thermal(c).joint_state, inst.model.layout());
    EXPECT_GE(exact, product - 1.0 * inst.beta * trace_norm(inst.model.h_sb())) << inst.descriptor;
  }
}

TEST(Purify, PureInputGivesProductPureState) {
  Vector psi(2);
  psi << Complex(0.8, 0.0), Complex(0.0, 0.6);
  const auto joint = purify(DensityOperator::pure(psi), 3);
  EXPECT_NEAR(von_neumann_entropy(joint), 0.0, 1e-12);
  EXPECT_NEAR(correlation_norm(joint, BipartiteLayout(2, 3)), 0.0, 1e-12);
}

TEST(Purify, MaximallyMixedQubitGivesBellState) {
  const auto joint = purify(DensityOperator::maximally_mixed(2), 2);
  EXPECT_NEAR(conditional_entropy(joint, BipartiteLayout(2, 2)), -std::log(2.0), 1e-12);
}

TEST(Purify, ReproducesMarginal) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto rho = random_density(3, 100 + s);
    const auto joint = purify(rho, 4);
    EXPECT_LT(max_diff(partial_trace_B(joint.op(), BipartiteLayout(3, 4)), rho.op()), 1e-12);
  }
  EXPECT_THROW(purify(random_density(3, 1), 2), DimensionError);
}

TEST(HaarAverage, TrivialBathIsExact) {
  const auto rho = random_density(3, 7);
  EXPECT_LT(max_diff(haar_average_mc(rho, 1, 3, 8).op(), rho.op()), 1e-14);
}

TEST(HaarAverage, MarginalIsExactAndBathTendsToUniform) {
  const auto rho = random_density(2, 9);
  const auto mean = haar_average_mc(rho, 3, 4000, 10);
  EXPECT_LT(max_diff(partial_trace_B(mean.op(), BipartiteLayout(2, 3)), rho.op()), 1e-12);
  EXPECT_LT(trace_norm(mean.op() - kron(rho.op(), Operator::identity(3) / 3.0)), 0.05);
}

TEST(CorrelationNorm, ProductIsZeroAndBellIsThreeHalves) {
  const BipartiteLayout layout(2, 2);
  EXPECT_NEAR(correlation_norm(DensityOperator::normalized(kron(random_density(2, 1).op(), random_density(2, 2).op())),
                               layout),
              0.0, 1e-14);
  // Oracle: rho_Bell - I/4 has eigenvalues {3/4, -1/4, -1/4, -1/4}.
  const Operator diff = testing::bell_projector() - Operator::identity(4) / 4.0;
  EXPECT_NEAR(testing::hermitian_trace_norm_oracle(diff.matrix()), 1.5, 1e-14);
  EXPECT_NEAR(correlation_norm(DensityOperator(testing::bell_projector()), layout), 1.5, 1e-14);
}

TEST(CorrelationNorm, WeakCouplingBound) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto inst = random_instance(29, i);
    const auto sol = solve_exact(Constraint(inst.rho_s, inst.beta, inst.model));
    EXPECT_LE(correlation_norm(sol.joint_state, inst.model.layout()),
              8.0 * inst.beta * trace_norm(inst.model.h_sb()) + 1e-9)
        << inst.descriptor;
  }
}

}  // namespace
}  // namespace maxent_sb
