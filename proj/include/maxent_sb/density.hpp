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

#include <cmath>
#include <string>
#include <utility>

#include "maxent_sb/operator.hpp"

namespace maxent_sb {

/// A validated Hermitian, positive-semidefinite, unit-trace operator.
///
/// Construction checks the three invariants and throws PreconditionError on
/// violation. `psd_tolerance` is the tolerance context: the most negative
/// eigenvalue accepted.
class DensityOperator {
 public:
  static constexpr double kHermTol = 1e-12;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kPsdTol = 1e-10;

  explicit DensityOperator(Operator op, double psd_tolerance = kPsdTol)
      : op_(std::move(op)), tol_(psd_tolerance) {
    const double scale = std::max(1.0, op_.max_abs());
    const double defect = op_.hermiticity_defect();
    if (defect > kHermTol * scale) {
      throw PreconditionError("density operator is not Hermitian (defect " + std::to_string(defect) + ")");
    }
    const Complex tr = op_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
      throw PreconditionError("density operator trace is " + std::to_string(tr.real()) + "+" +
                              std::to_string(tr.imag()) + "i, expected 1");
    }
    const double lo = eigh(op_).values.minCoeff();
    if (lo < -tol_) {
      throw PreconditionError("density operator has negative eigenvalue " + std::to_string(lo));
    }
  }

  /// Symmetrizes and rescales to unit trace before validating.
  static DensityOperator normalized(const Operator& x, double psd_tolerance = kPsdTol) {
    Operator h = x.hermitian_part();
    const double tr = h.trace().real();
    if (!(tr > 0.0)) throw PreconditionError("cannot normalize an operator with non-positive trace");
    return DensityOperator(h / tr, psd_tolerance);
  }

  static DensityOperator maximally_mixed(Index d) {
    return DensityOperator(Operator::identity(d) / static_cast<double>(d));
  }

  static DensityOperator pure(const Vector& psi) {
    const double n2 = psi.squaredNorm();
    if (!(n2 > 0.0)) throw PreconditionError("pure state needs a nonzero vector");
    return normalized(Operator::projector(psi / std::sqrt(n2)));
  }

  const Operator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  Index dim() const { return op_.dim(); }
  double tolerance() const { return tol_; }

  operator const Operator&() const { return op_; }  // NOLINT(google-explicit-constructor)

 private:
  Operator op_;
  double tol_;
};

inline double von_neumann_entropy(const DensityOperator& rho) {
  return entropy_of_spectrum(eigh(rho.op()).values);
}

/// e^{-x} / tr e^{-x} as a validated state (the Gibbs map f(x)).
inline DensityOperator gibbs_state(const Operator& generator) {
  return DensityOperator::normalized(normalized_expm(-generator));
}

/// Thermal state e^{-beta h}/tr of a Hermitian operator.
inline DensityOperator thermal_state(const Operator& h, double beta) { return gibbs_state(beta * h); }

/// Eigenvalues below eigen_floor are raised to the floor and the trace is
/// restored to one. `changed` reports whether any eigenvalue moved.
inline DensityOperator clamp_spectrum(const DensityOperator& rho, double eigen_floor, bool* changed = nullptr) {
  const HermitianSpectrum sp = eigh(rho.op());
  bool moved = false;
  Operator clamped = sp.apply([&](double v) {
    if (v < eigen_floor) {
      moved = true;
      return eigen_floor;
    }
    return v;
  });
  if (changed != nullptr) *changed = moved;
  if (!moved) return rho;
  return DensityOperator::normalized(clamped);
}

}  // namespace maxent_sb
