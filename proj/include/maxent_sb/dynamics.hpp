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

// Joint unitary evolution, the reduced maps Phi_t and the trace-distance
// witness Delta(t) = ||rho_S(t) - rho_S'(t)|| - ||rho_S - rho_S'||.

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "maxent_sb/maxent.hpp"

namespace maxent_sb {

/// Largest |eigenvalue| of H_S; the unit of energy for time grids.
inline double system_energy_scale(const HamiltonianModel& model) {
  const RealVector ev = eigh(model.h_s()).values;
  const double e = ev.cwiseAbs().maxCoeff();
  if (!(e > 0.0)) throw PreconditionError("H_S has no nonzero eigenvalue to set the time unit");
  return e;
}

/// Evenly spaced grid 0, t_max/(n-1), ..., t_max.
inline std::vector<double> uniform_time_grid(double t_max, int n_points) {
  if (n_points < 2 || !(t_max > 0.0)) throw PreconditionError("time grid needs >= 2 points and t_max > 0");
  std::vector<double> t(static_cast<std::size_t>(n_points));
  for (int k = 0; k < n_points; ++k) t[static_cast<std::size_t>(k)] = t_max * k / (n_points - 1);
  return t;
}

/// Model, time grid (units of 1/E_max, E_max = system_energy_scale) and the
/// assignment used to build initial joint states.
class EvolutionSpec {
 public:
  EvolutionSpec(HamiltonianModel model, std::vector<double> t_grid, AssignmentMethod assignment)
      : model_(std::move(model)), t_grid_(std::move(t_grid)), assignment_(assignment) {
    if (t_grid_.empty() || t_grid_.front() != 0.0) throw PreconditionError("time grid must start at 0");
    for (std::size_t k = 1; k < t_grid_.size(); ++k) {
      if (!(t_grid_[k] > t_grid_[k - 1])) throw PreconditionError("time grid must be strictly increasing");
    }
    time_unit_ = 1.0 / system_energy_scale(model_);
  }

  const HamiltonianModel& model() const { return model_; }
  const std::vector<double>& t_grid() const { return t_grid_; }
  AssignmentMethod assignment() const { return assignment_; }
  /// Physical time per grid unit (hbar / E_max).
  double time_unit() const { return time_unit_; }

 private:
  HamiltonianModel model_;
  std::vector<double> t_grid_;
  AssignmentMethod assignment_;
  double time_unit_ = 1.0;
};

/// exp(-iHt) from a single eigendecomposition of H, reused for every t.
class Propagator {
 public:
  explicit Propagator(const Operator& h) : spectrum_(eigh(h)) {}
  explicit Propagator(const HamiltonianModel& model) : Propagator(model.full()) {}

  Operator at(double t) const { return Operator(spectrum_.vectors * phases(t).asDiagonal() * spectrum_.vectors.adjoint()); }

  /// U(t) rho U(t)^dagger, computed in the eigenbasis of H.
  Operator evolve(const Operator& rho, double t) const {
    const Vector ph = phases(t);
    Matrix in_eig = spectrum_.vectors.adjoint() * rho.matrix() * spectrum_.vectors;
    in_eig = ph.asDiagonal() * in_eig * ph.conjugate().asDiagonal();
    return Operator(spectrum_.vectors * in_eig * spectrum_.vectors.adjoint());
  }

 private:
  Vector phases(double t) const {
    Vector ph(spectrum_.dim());
    for (Index k = 0; k < spectrum_.dim(); ++k) ph(k) = std::polar(1.0, -spectrum_.values(k) * t);
    return ph;
  }

  HermitianSpectrum spectrum_;
};

inline Operator propagator(const HamiltonianModel& model, double t) {
  if (!(t >= 0.0)) throw PreconditionError("propagator needs t >= 0");
  return Propagator(model).at(t);
}

/// Reduced states tr_B{U(t) rho_joint U(t)^dagger} over the grid.
inline std::vector<DensityOperator> evolve_reduced(const EvolutionSpec& spec, const DensityOperator& joint,
                                                   const Propagator& u) {
  const auto& layout = spec.model().layout();
  std::vector<DensityOperator> out;
  out.reserve(spec.t_grid().size());
  for (double t : spec.t_grid()) {
    out.push_back(DensityOperator::normalized(partial_trace_B(u.evolve(joint.op(), t * spec.time_unit()), layout), 1e-9));
  }
  return out;
}

/// Phi_t(rho_S) for every t in the grid.
inline std::vector<DensityOperator> reduced_map(const EvolutionSpec& spec, const DensityOperator& rho_s, double beta,
                                                const SolverOptions& opts = {}) {
  const MaxEntSolution sol = assign(Constraint(rho_s, beta, spec.model()), spec.assignment(), opts);
  return evolve_reduced(spec, sol.joint_state, Propagator(spec.model()));
}

struct WitnessSeries {
  std::vector<double> t;
  std::vector<double> delta;
  double bound = 0.0;             // 8 beta ||H_SB||_1
  double initial_distance = 0.0;  // ||rho_S - rho_S'||_1

  double max_delta() const { return delta.empty() ? 0.0 : *std::max_element(delta.begin(), delta.end()); }
};

inline double corollary2_bound(const HamiltonianModel& model, double beta) { return 8.0 * beta * trace_norm(model.h_sb()); }

/// Witness series from precomputed joint states (shares one propagator).
inline WitnessSeries witness_from_joint(const EvolutionSpec& spec, const DensityOperator& joint,
                                        const DensityOperator& joint_prime, const DensityOperator& rho_s,
                                        const DensityOperator& rho_s_prime, double beta, const Propagator& u) {
  WitnessSeries w;
  w.t = spec.t_grid();
  w.bound = corollary2_bound(spec.model(), beta);
  w.initial_distance = trace_norm(rho_s.op() - rho_s_prime.op());
  const auto& layout = spec.model().layout();
  w.delta.reserve(w.t.size());
  for (std::size_t k = 0; k < w.t.size(); ++k) {
    if (k == 0) {
      w.delta.push_back(0.0);
      continue;
    }
    const double t = w.t[k] * spec.time_unit();
    const Operator a = partial_trace_B(u.evolve(joint.op(), t), layout);
    const Operator b = partial_trace_B(u.evolve(joint_prime.op(), t), layout);
    w.delta.push_back(trace_norm(a - b) - w.initial_distance);
  }
  return w;
}

/// Delta(rho_S, rho_S'; t) over the grid. Delta(0) is zero by definition.
inline WitnessSeries witness_delta(const EvolutionSpec& spec, const DensityOperator& rho_s,
                                   const DensityOperator& rho_s_prime, double beta, const SolverOptions& opts = {}) {
  if (rho_s.dim() != rho_s_prime.dim()) throw DimensionError("witness_delta: states differ in dimension");
  const MaxEntSolution a = assign(Constraint(rho_s, beta, spec.model()), spec.assignment(), opts);
  const MaxEntSolution b = assign(Constraint(rho_s_prime, beta, spec.model()), spec.assignment(), opts);
  return witness_from_joint(spec, a.joint_state, b.joint_state, rho_s, rho_s_prime, beta, Propagator(spec.model()));
}

}  // namespace maxent_sb
