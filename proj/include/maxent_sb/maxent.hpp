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

// Maximum-entropy system-bath states at fixed temperature.
//
// The joint state has the form rho = exp(-Lambda (x) 1 - beta H)/tr with a
// system-only multiplier Lambda fixed by tr_B rho = rho_S. Four routes are
// provided: the exact fixed-point solve, the linear-order formula
// Lambda = Lambda_0 + dLambda, and the two factorized assignments.

#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "maxent_sb/density.hpp"
#include "maxent_sb/models.hpp"

namespace maxent_sb {

enum class AssignmentMethod { exact, perturbative, factorized_thermal, factorized_uniform };

inline std::string_view to_string(AssignmentMethod m) {
  switch (m) {
    case AssignmentMethod::exact: return "exact";
    case AssignmentMethod::perturbative: return "perturbative";
    case AssignmentMethod::factorized_thermal: return "factorized-thermal";
    case AssignmentMethod::factorized_uniform: return "factorized-uniform";
  }
  return "unknown";
}

inline AssignmentMethod parse_assignment_method(std::string_view s) {
  if (s == "exact") return AssignmentMethod::exact;
  if (s == "perturbative") return AssignmentMethod::perturbative;
  if (s == "factorized-thermal") return AssignmentMethod::factorized_thermal;
  if (s == "factorized-uniform") return AssignmentMethod::factorized_uniform;
  throw PreconditionError("unknown assignment method '" + std::string(s) + "'");
}

/// Tomographic target plus temperature. beta == 0 means no temperature
/// constraint.
class Constraint {
 public:
  Constraint(DensityOperator rho_s, double beta, HamiltonianModel model)
      : rho_s_(std::move(rho_s)), beta_(beta), model_(std::move(model)) {
    if (rho_s_.dim() != model_.layout().d_s()) {
      throw LayoutError("constraint: rho_S dimension does not match the model's system dimension");
    }
    if (!(beta_ >= 0.0)) throw PreconditionError("constraint: beta must be >= 0");
  }

  const DensityOperator& rho_s() const { return rho_s_; }
  double beta() const { return beta_; }
  const HamiltonianModel& model() const { return model_; }
  const BipartiteLayout& layout() const { return model_.layout(); }

 private:
  DensityOperator rho_s_;
  double beta_;
  HamiltonianModel model_;
};

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 500;
  double damping = 1.0;
  double eigen_floor = kDefaultEigenFloor;
  int max_halvings = 4;
  int divergence_window = 10;
};

struct MaxEntSolution {
  Operator lambda_op;     // Lambda
  Operator lambda0_op;    // Lambda_0 = -log rho_S - beta H_S
  Operator delta_lambda;  // Lambda - Lambda_0
  DensityOperator joint_state;
  double residual = 0.0;  // trace_norm(tr_B joint - rho_S)
  int iterations = 0;
  AssignmentMethod method = AssignmentMethod::exact;
  double gauge_shift = 0.0;  // tr(Lambda - Lambda_0 - dLambda_formula)/d_S before gauge fixing
  double damping_used = 1.0;
  std::vector<std::string> warnings;
};

/// Lambda_0 = -log rho_S - beta H_S, logarithm taken on the (floored) support.
inline Operator lambda0(const DensityOperator& rho_s, const Operator& h_s, double beta,
                        double eigen_floor = kDefaultEigenFloor) {
  if (h_s.dim() != rho_s.dim()) throw DimensionError("lambda0: rho_S and H_S differ in dimension");
  return (-herm_logm_support(rho_s.op(), eigen_floor) - beta * h_s).hermitian_part();
}

/// dLambda = -beta tr_B{(1 (x) rho_B^th) H_SB}; independent of rho_S.
inline Operator delta_lambda(const HamiltonianModel& model, double beta) {
  const auto& layout = model.layout();
  const Operator rho_th = thermal_state(model.h_b(), beta).op();
  return (-beta * partial_trace_B(embed_bath(rho_th, layout) * model.h_sb(), layout)).hermitian_part();
}

/// trace_norm(tr_B joint - rho_s)
inline double marginal_residual(const DensityOperator& joint, const DensityOperator& rho_s,
                                const BipartiteLayout& layout) {
  return trace_norm(partial_trace_B(joint.op(), layout) - rho_s.op());
}

/// exp(-Lambda (x) 1 - beta H)/tr
inline DensityOperator joint_state_from_multiplier(const Operator& lambda, const HamiltonianModel& model, double beta) {
  return gibbs_state(embed_system(lambda, model.layout()) + beta * model.full());
}

/// rho_S (x) e^{-beta H_B}/tr
inline MaxEntSolution assignment_factorized_thermal(const Constraint& c,
                                                    double eigen_floor = kDefaultEigenFloor) {
  if (!(c.beta() > 0.0)) throw PreconditionError("factorized-thermal assignment needs beta > 0");
  const Operator l0 = lambda0(c.rho_s(), c.model().h_s(), c.beta(), eigen_floor);
  DensityOperator joint = DensityOperator::normalized(kron(c.rho_s().op(), thermal_state(c.model().h_b(), c.beta()).op()));
  MaxEntSolution sol{l0, l0, Operator::zero(l0.dim()), joint, 0.0, 0, AssignmentMethod::factorized_thermal, 0.0, 1.0, {}};
  sol.residual = marginal_residual(sol.joint_state, c.rho_s(), c.layout());
  return sol;
}

/// rho_S (x) 1/d_B; beta is ignored.
inline MaxEntSolution assignment_uniform(const Constraint& c, double eigen_floor = kDefaultEigenFloor) {
  const Operator l0 = lambda0(c.rho_s(), c.model().h_s(), 0.0, eigen_floor);
  const Index db = c.layout().d_b();
  DensityOperator joint = DensityOperator::normalized(kron(c.rho_s().op(), Operator::identity(db) / static_cast<double>(db)));
  MaxEntSolution sol{l0, l0, Operator::zero(l0.dim()), joint, 0.0, 0, AssignmentMethod::factorized_uniform, 0.0, 1.0, {}};
  sol.residual = marginal_residual(sol.joint_state, c.rho_s(), c.layout());
  return sol;
}

/// exp[log rho_S - dLambda - beta(H_B + H_SB)]/tr. Satisfies the marginal
/// constraint only up to second order in beta H_SB; the residual is reported.
inline MaxEntSolution assignment_perturbative(const Constraint& c, double eigen_floor = kDefaultEigenFloor,
                                              double delta_lambda_sign = 1.0) {
  if (!(c.beta() > 0.0)) throw PreconditionError("perturbative assignment needs beta > 0");
  const auto& model = c.model();
  const auto& layout = c.layout();
  const Operator log_rho = herm_logm_support(c.rho_s().op(), eigen_floor);
  const Operator dl = delta_lambda_sign * delta_lambda(model, c.beta());
  const Operator exponent = embed_system(log_rho - dl, layout) - c.beta() * (embed_bath(model.h_b(), layout) + model.h_sb());
  DensityOperator joint = DensityOperator::normalized(normalized_expm(exponent));
  const Operator l0 = lambda0(c.rho_s(), model.h_s(), c.beta(), eigen_floor);
  MaxEntSolution sol{l0 + dl, l0, dl, joint, 0.0, 0, AssignmentMethod::perturbative, 0.0, 1.0, {}};
  sol.residual = marginal_residual(sol.joint_state, c.rho_s(), layout);
  return sol;
}

namespace detail {
inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}
}  // namespace detail

/// Damped fixed-point iteration on the system multiplier,
///   Lambda <- Lambda + eta (log sigma(Lambda) - log rho_S),
/// seeded with Lambda_0 + dLambda. Ten consecutive residual increases halve
/// eta and restart from the best iterate; after max_halvings a
/// DivergenceError is thrown. Exhausting max_iter throws ConvergenceError.
inline MaxEntSolution solve_exact(const Constraint& c, const SolverOptions& opts = {}) {
  if (c.beta() == 0.0) return assignment_uniform(c, opts.eigen_floor);

  const auto& model = c.model();
  const auto& layout = c.layout();
  const double beta = c.beta();

  std::vector<std::string> warnings;
  bool clamped = false;
  const DensityOperator target = clamp_spectrum(c.rho_s(), opts.eigen_floor, &clamped);
  if (clamped) {
    warnings.push_back("rho_S has eigenvalues below eigen_floor; the marginal constraint is enforced on the clamped state");
  }
  const Operator log_target = herm_logm_support(target.op(), opts.eigen_floor);
  const Operator dl_formula = delta_lambda(model, beta);
  const Operator generator_h = beta * model.full();

  Operator lambda = lambda0(target, model.h_s(), beta, opts.eigen_floor) + dl_formula;

  auto evaluate = [&](const Operator& l, DensityOperator* joint_out) {
    DensityOperator joint = gibbs_state(embed_system(l, layout) + generator_h);
    Operator sigma = partial_trace_B(joint.op(), layout);
    const double res = trace_norm(sigma - target.op());
    if (joint_out != nullptr) *joint_out = std::move(joint);
    return std::pair{res, sigma};
  };

  DensityOperator joint = target;  // placeholder, overwritten below
  double residual = 0.0;
  Operator sigma;
  std::tie(residual, sigma) = evaluate(lambda, &joint);

  Operator best_lambda = lambda;
  DensityOperator best_joint = joint;
  double best_residual = residual;
  double eta = opts.damping;
  int halvings = 0;
  int growth_streak = 0;
  int iterations = 0;

  while (residual > opts.tol) {
    if (iterations >= opts.max_iter) {
      throw ConvergenceError("exact solver did not converge in " + std::to_string(opts.max_iter) +
                                 " iterations (best residual " + detail::sci(best_residual) + ")",
                             best_residual, iterations);
    }
    lambda = (lambda + eta * (herm_logm_support(sigma, opts.eigen_floor) - log_target)).hermitian_part();
    ++iterations;
    const double previous = residual;
    std::tie(residual, sigma) = evaluate(lambda, &joint);

    if (residual < best_residual) {
      best_residual = residual;
      best_lambda = lambda;
      best_joint = joint;
    }
    growth_streak = residual > previous ? growth_streak + 1 : 0;
    if (growth_streak >= opts.divergence_window) {
      if (halvings >= opts.max_halvings) {
        throw DivergenceError("exact solver diverged after " + std::to_string(halvings) +
                                  " damping halvings; try a smaller --damping (best residual " +
                                  detail::sci(best_residual) + ")",
                              best_residual, iterations);
      }
      ++halvings;
      eta *= 0.5;
      growth_streak = 0;
      lambda = best_lambda;
      std::tie(residual, sigma) = evaluate(lambda, &joint);
    }
  }

  // Gauge: fix the additive constant so tr(Lambda - Lambda_0 - dLambda_formula) = 0.
  const Operator l0 = lambda0(c.rho_s(), model.h_s(), beta, opts.eigen_floor);
  const Index ds = layout.d_s();
  const double shift = (lambda - l0 - dl_formula).trace().real() / static_cast<double>(ds);
  lambda = lambda - shift * Operator::identity(ds);

  MaxEntSolution sol{lambda, l0, lambda - l0, joint, residual, iterations, AssignmentMethod::exact, 0.0, 1.0, {}};
  sol.gauge_shift = shift;
  sol.damping_used = eta;
  sol.warnings = std::move(warnings);
  return sol;
}

/// Dispatch on the assignment method.
inline MaxEntSolution assign(const Constraint& c, AssignmentMethod method, const SolverOptions& opts = {}) {
  switch (method) {
    case AssignmentMethod::exact: return solve_exact(c, opts);
    case AssignmentMethod::perturbative: return assignment_perturbative(c, opts.eigen_floor);
    case AssignmentMethod::factorized_thermal: return assignment_factorized_thermal(c, opts.eigen_floor);
    case AssignmentMethod::factorized_uniform: return assignment_uniform(c, opts.eigen_floor);
  }
  throw PreconditionError("unknown assignment method");
}

}  // namespace maxent_sb
