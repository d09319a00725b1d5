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


#pragma once

// Bound checks for the deviation and distinguishability corollaries,
// correlation measures, conditional entropy and the Haar-average
// construction of the uniform assignment.

#include <cstdint>
#include <string>
#include <utility>

#include "maxent_sb/dynamics.hpp"
#include "maxent_sb/random.hpp"

namespace maxent_sb {

/// lhs <= rhs check with slack reported. satisfied iff lhs <= rhs + 1e-9.
struct BoundReport {
  static constexpr double kSlackTol = 1e-9;

  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = true;
  double slack = 0.0;
  std::string instance;

  static BoundReport make(double lhs, double rhs, std::string instance = {}) {
    return {lhs, rhs, lhs <= rhs + kSlackTol, rhs - lhs, std::move(instance)};
  }
};

/// ||rho^(ME) - rho_S (x) rho_B^th||_1 against 4 beta ||H_SB||_1.
inline BoundReport corollary1_check(const Constraint& c, AssignmentMethod method, const SolverOptions& opts = {},
                                    std::string instance = {}) {
  if (!(c.beta() > 0.0)) throw PreconditionError("corollary1_check needs beta > 0");
  const MaxEntSolution sol = assign(c, method, opts);
  const Operator rho0 = kron(c.rho_s().op(), thermal_state(c.model().h_b(), c.beta()).op());
  const double lhs = trace_norm(sol.joint_state.op() - rho0);
  const double rhs = 4.0 * c.beta() * trace_norm(c.model().h_sb());
  return BoundReport::make(lhs, rhs, std::move(instance));
}

/// max_t Delta(t) against the series' 8 beta ||H_SB||_1.
inline BoundReport corollary2_check(const WitnessSeries& series, std::string instance = {}) {
  return BoundReport::make(series.max_delta(), series.bound, std::move(instance));
}

/// S(B|S) = S(rho_SB) - S(rho_S)
inline double conditional_entropy(const DensityOperator& joint, const BipartiteLayout& layout) {
  const DensityOperator rho_s = DensityOperator::normalized(partial_trace_B(joint.op(), layout));
  return von_neumann_entropy(joint) - von_neumann_entropy(rho_s);
}

inline double correlation_norm(const DensityOperator& joint, const BipartiteLayout& layout) {
  const Operator rs = partial_trace_B(joint.op(), layout);
  const Operator rb = partial_trace_S(joint.op(), layout);
  return trace_norm(joint.op() - kron(rs, rb));
}

/// Purification vector sum_i sqrt(p_i) |v_i>_S |i>_B over the support of rho_S.
inline Vector purification_vector(const DensityOperator& rho_s, Index d_b, double support_floor = 1e-14) {
  const HermitianSpectrum sp = eigh(rho_s.op());
  const Index ds = rho_s.dim();
  Index rank = 0;
  for (Index k = 0; k < ds; ++k) rank += sp.values(k) > support_floor ? 1 : 0;
  if (d_b < rank) {
    throw DimensionError("purify: bath dimension " + std::to_string(d_b) + " is smaller than rank " +
                         std::to_string(rank));
  }
  const BipartiteLayout layout(ds, d_b);
  Vector psi = Vector::Zero(layout.total());
  Index slot = 0;
  // Largest eigenvalues first so a rank-r state only touches bath levels < r.
  for (Index k = ds; k-- > 0;) {
    if (sp.values(k) <= support_floor) continue;
    const double amp = std::sqrt(sp.values(k));
    for (Index s = 0; s < ds; ++s) psi(layout.joint_index(s, slot)) += amp * sp.vectors(s, k);
    ++slot;
  }
  return psi / psi.norm();
}

inline DensityOperator purify(const DensityOperator& rho_s, Index d_b) {
  return DensityOperator::pure(purification_vector(rho_s, d_b));
}

/// Monte-Carlo mean of (1 (x) U_B) F (1 (x) U_B^dagger) over Haar U_B. The
/// fiducial F is a purification of rho_S when the bath is large enough, and
/// rho_S (x) |0><0| otherwise; both average to rho_S (x) 1/d_B.
inline DensityOperator haar_average_mc(const DensityOperator& rho_s, Index d_b, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw PreconditionError("haar_average_mc needs n_samples >= 1");
  const Index ds = rho_s.dim();
  Rng rng(seed);
  Matrix acc = Matrix::Zero(ds * d_b, ds * d_b);

  Index rank = 0;
  const RealVector p = eigh(rho_s.op()).values;
  for (Index k = 0; k < ds; ++k) rank += p(k) > 1e-14 ? 1 : 0;
  if (d_b < rank) {
    for (int n = 0; n < n_samples; ++n) {
      const Vector col = haar_unitary(d_b, rng).matrix().col(0);
      acc.noalias() += kron(rho_s.op(), Operator(col * col.adjoint())).matrix();
    }
    return DensityOperator::normalized(Operator(acc / static_cast<double>(n_samples)));
  }

  const Vector psi = purification_vector(rho_s, d_b);
  // psi reshaped as a d_S x d_B coefficient matrix: (1 (x) U)psi <-> C U^T.
  Matrix coeff(ds, d_b);
  for (Index s = 0; s < ds; ++s)
    for (Index b = 0; b < d_b; ++b) coeff(s, b) = psi(s * d_b + b);

  for (int n = 0; n < n_samples; ++n) {
    const Operator u = haar_unitary(d_b, rng);
    const Matrix rotated = coeff * u.matrix().transpose();
    Vector joint(ds * d_b);
    for (Index s = 0; s < ds; ++s)
      for (Index b = 0; b < d_b; ++b) joint(s * d_b + b) = rotated(s, b);
    acc.noalias() += joint * joint.adjoint();
  }
  return DensityOperator::normalized(Operator(acc / static_cast<double>(n_samples)));
}

}  // namespace maxent_sb
