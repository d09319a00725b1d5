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

// Hamiltonian builders: Jaynes-Cummings (truncated Fock space), central spin,
// random GUE models, plus the Jaynes-Cummings first-order correction operator.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "maxent_sb/density.hpp"
#include "maxent_sb/random.hpp"

namespace maxent_sb {

namespace pauli {

// Basis: index 0 = spin up (sigma_z = +1), index 1 = spin down.
inline Operator x() { return Operator((Matrix(2, 2) << 0, 1, 1, 0).finished()); }
inline Operator y() { return Operator((Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished()); }
inline Operator z() { return Operator((Matrix(2, 2) << 1, 0, 0, -1).finished()); }
/// sigma_+ = |up><down|
inline Operator plus() { return Operator((Matrix(2, 2) << 0, 1, 0, 0).finished()); }
/// sigma_- = |down><up|
inline Operator minus() { return Operator((Matrix(2, 2) << 0, 0, 1, 0).finished()); }

/// c . sigma for a complex 3-vector c.
inline Operator dot(const Eigen::Vector3cd& c) { return c(0) * x() + c(1) * y() + c(2) * z(); }

}  // namespace pauli

/// Annihilation operator on the Fock space {|0>, ..., |n_max>}.
inline Operator annihilation(int n_max) {
  Matrix a = Matrix::Zero(n_max + 1, n_max + 1);
  for (int n = 0; n < n_max; ++n) a(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
  return Operator(std::move(a));
}

inline Operator creation(int n_max) { return annihilation(n_max).adjoint(); }

inline Operator number_operator(int n_max) {
  std::vector<double> d(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) d[static_cast<std::size_t>(n)] = n;
  return Operator::diagonal(d);
}

/// H = H_S (x) I + I (x) H_B + H_SB on a fixed bipartite layout.
class HamiltonianModel {
 public:
  HamiltonianModel(Operator h_s, Operator h_b, Operator h_sb)
      : h_s_(std::move(h_s)), h_b_(std::move(h_b)), h_sb_(std::move(h_sb)), layout_(h_s_.dim(), h_b_.dim()) {
    layout_.require_joint(h_sb_, "HamiltonianModel h_sb");
    require_hermitian(h_s_, "h_s");
    require_hermitian(h_b_, "h_b");
    require_hermitian(h_sb_, "h_sb");
  }

  const Operator& h_s() const { return h_s_; }
  const Operator& h_b() const { return h_b_; }
  const Operator& h_sb() const { return h_sb_; }
  const BipartiteLayout& layout() const { return layout_; }

  /// H_S (x) I_B + I_S (x) H_B
  Operator free() const { return embed_system(h_s_, layout_) + embed_bath(h_b_, layout_); }
  Operator full() const { return free() + h_sb_; }

  /// Same model with the interaction rescaled by `factor`.
  HamiltonianModel with_coupling_scaled(double factor) const { return {h_s_, h_b_, factor * h_sb_}; }

 private:
  static void require_hermitian(const Operator& h, const char* name) {
    const double scale = std::max(1.0, h.max_abs());
    if (h.hermiticity_defect() > 1e-12 * scale) {
      throw PreconditionError(std::string("Hamiltonian part ") + name + " is not Hermitian");
    }
  }

  Operator h_s_;
  Operator h_b_;
  Operator h_sb_;
  BipartiteLayout layout_;
};

// ---------------------------------------------------------------------------
// Jaynes-Cummings

struct JaynesCummingsParams {
  double omega_a = 1.0;     // spin splitting
  double omega = 1.0;       // mode frequency
  double j_coupling = 0.0;  // real coupling J
  int n_max = 30;           // Fock truncation
};

/// Smallest n_max >= 2 with exp(-beta omega n_max) / (1 - exp(-beta omega)) < tail.
inline int default_fock_cutoff(double beta, double omega, double tail = 1e-12) {
  const double x = beta * omega;
  if (!(x > 0.0)) throw PreconditionError("default_fock_cutoff needs beta * omega > 0");
  const double denom = -std::expm1(-x);
  int n = 2;
  while (std::exp(-x * n) / denom >= tail) ++n;
  return n;
}

/// Non-fatal warnings about parameter regimes (J not small, ...).
inline std::vector<std::string> advisories(const JaynesCummingsParams& p) {
  std::vector<std::string> out;
  const double scale = std::min(p.omega_a, p.omega);
  if (std::abs(p.j_coupling) > 0.1 * scale) {
    out.push_back("|J| = " + std::to_string(std::abs(p.j_coupling)) +
                  " is not small compared with min(omega_a, omega); weak-coupling results may not apply");
  }
  return out;
}

inline HamiltonianModel build_jaynes_cummings(const JaynesCummingsParams& p) {
  if (!(p.omega_a > 0.0) || !(p.omega > 0.0)) throw PreconditionError("Jaynes-Cummings frequencies must be positive");
  if (p.n_max < 2) throw PreconditionError("Jaynes-Cummings truncation n_max must be >= 2");
  if (2 * (p.n_max + 1) > kMaxDim) throw DimensionError("Jaynes-Cummings truncation exceeds dimension cap");
  const Operator a = annihilation(p.n_max);
  const Operator ad = creation(p.n_max);
  Operator h_s = 0.5 * p.omega_a * pauli::z();
  Operator h_b = p.omega * number_operator(p.n_max);
  Operator h_sb = p.j_coupling * (kron(pauli::minus(), ad) + kron(pauli::plus(), a));
  return {h_s.labeled("H_S"), h_b.labeled("H_B"), h_sb.labeled("H_SB")};
}

// ---------------------------------------------------------------------------
// Central spin, energies in units of omega/2

struct CentralSpinParams {
  int n_bath = 1;
  double g = 1e-3;
};

/// sigma_z on site `site` of an n-qubit register (site 0 is the leftmost factor).
inline RealVector sigma_z_diagonal(int n_qubits, int site) {
  const Index dim = Index{1} << n_qubits;
  RealVector d(dim);
  for (Index k = 0; k < dim; ++k) {
    const int bit = static_cast<int>((k >> (n_qubits - 1 - site)) & 1);
    d(k) = bit == 0 ? 1.0 : -1.0;
  }
  return d;
}

inline HamiltonianModel build_central_spin(const CentralSpinParams& p) {
  if (p.n_bath < 1) throw PreconditionError("central spin needs at least one bath spin");
  if (p.n_bath + 1 > 12 || (Index{1} << (p.n_bath + 1)) > kMaxDim) {
    throw DimensionError("central spin with N = " + std::to_string(p.n_bath) + " exceeds dimension cap");
  }
  const int n = p.n_bath;
  const Index db = Index{1} << n;

  RealVector hb = RealVector::Zero(db);
  std::vector<RealVector> zi;
  for (int i = 0; i < n; ++i) zi.push_back(sigma_z_diagonal(n, i));
  for (int i = 0; i < n; ++i) {
    hb += zi[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) {
      hb += p.g * zi[static_cast<std::size_t>(i)].cwiseProduct(zi[static_cast<std::size_t>(j)]);
    }
  }
  RealVector bath_sum = RealVector::Zero(db);
  for (const auto& z : zi) bath_sum += z;

  RealVector hsb(2 * db);
  hsb.head(db) = p.g * bath_sum;
  hsb.tail(db) = -p.g * bath_sum;

  Operator h_s = pauli::z();
  Operator h_b(hb.cast<Complex>().asDiagonal().toDenseMatrix());
  Operator h_sb(hsb.cast<Complex>().asDiagonal().toDenseMatrix());
  return {h_s.labeled("H_S"), h_b.labeled("H_B"), h_sb.labeled("H_SB")};
}

// ---------------------------------------------------------------------------
// Random models and states

/// GUE parts with trace_norm(h_s) = trace_norm(h_b) = 1 and
/// trace_norm(h_sb) = sb_norm_fraction.
inline HamiltonianModel build_random_model(Index d_s, Index d_b, double sb_norm_fraction, std::uint64_t seed) {
  if (!(sb_norm_fraction > 0.0)) throw PreconditionError("sb_norm_fraction must be positive");
  BipartiteLayout layout(d_s, d_b);
  Rng rng(seed);
  auto unit = [](const Operator& h) { return h / trace_norm(h); };
  Operator h_s = unit(gue(d_s, rng));
  Operator h_b = unit(gue(d_b, rng));
  Operator h_sb = sb_norm_fraction * unit(gue(layout.total(), rng));
  return {h_s.hermitian_part(), h_b.hermitian_part(), h_sb.hermitian_part()};
}

/// Hilbert-Schmidt random state G G^dagger / tr.
inline DensityOperator random_density(Index d, std::uint64_t seed) {
  if (d < 2) throw PreconditionError("random_density needs d >= 2");
  Rng rng(seed);
  const Matrix g = ginibre(d, d, rng);
  return DensityOperator::normalized(Operator(g * g.adjoint()));
}

// ---------------------------------------------------------------------------
// Bloch representation and the analytic first-order correction

/// Qubit state rho = (1 + s.sigma)/2 = exp(-lambda.sigma)/tr with
/// lambda = -artanh(|s|) s/|s|. For |s| -> 1 the multiplier diverges; `pure`
/// is set and lambda_vec holds the direction only.
struct BlochState {
  Eigen::Vector3d s = Eigen::Vector3d::Zero();
  Eigen::Vector3d lambda_vec = Eigen::Vector3d::Zero();
  bool pure = false;

  static constexpr double kPureThreshold = 1e-12;

  static BlochState from_vector(const Eigen::Vector3d& s) {
    const double r = s.norm();
    if (r > 1.0 + 1e-12) throw PreconditionError("Bloch vector longer than 1");
    BlochState b;
    b.s = s;
    if (r >= 1.0 - kPureThreshold) {
      b.s = s / r;
      b.pure = true;
      b.lambda_vec = -b.s;  // direction of lambda; magnitude is infinite
    } else if (r > 0.0) {
      b.lambda_vec = -std::atanh(r) * (s / r);
    }
    return b;
  }

  static BlochState from_density(const DensityOperator& rho) {
    if (rho.dim() != 2) throw DimensionError("Bloch representation needs a qubit state");
    const Matrix& m = rho.matrix();
    const Eigen::Vector3d s(2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real());
    return from_vector(s);
  }

  Eigen::Vector3d unit_direction() const {
    const double r = s.norm();
    return r > 0.0 ? Eigen::Vector3d(s / r) : Eigen::Vector3d::UnitZ();
  }

  DensityOperator density() const {
    return DensityOperator::normalized(
        0.5 * (Operator::identity(2) + s(0) * pauli::x() + s(1) * pauli::y() + s(2) * pauli::z()));
  }
};

/// Coefficients of B = alpha_+.sigma a^dag + alpha_-.sigma a + u_- sigma_- a^dag + u_+ sigma_+ a.
struct JcCorrectionCoefficients {
  Eigen::Vector3cd alpha_plus = Eigen::Vector3cd::Zero();
  Eigen::Vector3cd alpha_minus = Eigen::Vector3cd::Zero();
  double u_plus = 0.0;
  double u_minus = 0.0;
};

/// Bilinear cross product. Eigen's cross() conjugates its result for
/// complex scalars, which is not what the commutator algebra needs.
inline Eigen::Vector3cd cross(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) {
  return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)};
}

/// M_{+/-}: diagonal +/- beta*omega, off-diagonals 2i times the cross-product
/// matrix of lambda (so M v = +/-beta*omega v + 2i lambda x v).
inline Eigen::Matrix3cd jc_m_matrix(const Eigen::Vector3d& lambda, double beta_omega, int sign) {
  const Complex i2(0.0, 2.0);
  Eigen::Matrix3cd m;
  m << sign * beta_omega, -i2 * lambda(2), i2 * lambda(1),
       i2 * lambda(2), sign * beta_omega, -i2 * lambda(0),
       -i2 * lambda(1), i2 * lambda(0), sign * beta_omega;
  return m;
}

/// Solves [K, B] = beta J (sigma_- a^dag + sigma_+ a) for the ansatz above,
/// K = lambda.sigma (x) 1 + beta omega a^dag a. The coefficients are
/// u_- = J/omega, u_+ = -J/omega and
///   M_+ alpha_+ = -2i u_- (lambda x mu_-),  M_- alpha_- = -2i u_+ (lambda x mu_+),
/// with mu_{+/-} = (1, +/-i, 0)/2. For a pure state the lambda -> infinity
/// limit alpha_+/- = -u_-/+ (mu_-/+ - (mu_-/+ . e) e) is used directly.
inline JcCorrectionCoefficients jc_correction_coefficients(const JaynesCummingsParams& p, const BlochState& bloch,
                                                          double beta) {
  JcCorrectionCoefficients c;
  const double r = p.j_coupling / p.omega;
  c.u_minus = r;
  c.u_plus = -r;
  const Eigen::Vector3cd mu_plus(0.5, Complex(0.0, 0.5), 0.0);
  const Eigen::Vector3cd mu_minus(0.5, Complex(0.0, -0.5), 0.0);

  if (bloch.pure) {
    const Eigen::Vector3cd e = bloch.unit_direction().cast<Complex>();
    auto transverse = [&](const Eigen::Vector3cd& mu) -> Eigen::Vector3cd {
      return mu - (e.transpose() * mu)(0) * e;
    };
    c.alpha_plus = -c.u_minus * transverse(mu_minus);
    c.alpha_minus = -c.u_plus * transverse(mu_plus);
    return c;
  }

  const Eigen::Vector3cd lam = bloch.lambda_vec.cast<Complex>();
  const double bw = beta * p.omega;
  const Complex i2(0.0, 2.0);
  const Eigen::Matrix3cd m_plus = jc_m_matrix(bloch.lambda_vec, bw, +1);
  const Eigen::Matrix3cd m_minus = jc_m_matrix(bloch.lambda_vec, bw, -1);
  if (std::abs(m_plus.determinant()) <= 1e-12 || std::abs(m_minus.determinant()) <= 1e-12) {
    throw DegenerateConfigurationError("M+/- is singular: 2|lambda| coincides with beta*omega");
  }
  c.alpha_plus = m_plus.fullPivLu().solve(Eigen::Vector3cd(-i2 * c.u_minus * cross(lam, mu_minus)));
  c.alpha_minus = m_minus.fullPivLu().solve(Eigen::Vector3cd(-i2 * c.u_plus * cross(lam, mu_plus)));
  return c;
}

/// The anti-Hermitian operator B with e^{-B} rho_0 e^{B} equal to the
/// maximum-entropy state to first order in beta J.
inline Operator jc_analytic_correction(const JaynesCummingsParams& p, const BlochState& bloch, double beta) {
  const JcCorrectionCoefficients c = jc_correction_coefficients(p, bloch, beta);
  const Operator a = annihilation(p.n_max);
  const Operator ad = creation(p.n_max);
  Operator b = kron(pauli::dot(c.alpha_plus), ad) + kron(pauli::dot(c.alpha_minus), a) +
               c.u_minus * kron(pauli::minus(), ad) + c.u_plus * kron(pauli::plus(), a);
  return b.labeled("B");
}

/// e^{-B} (rho_S (x) rho_B^th) e^{B}, renormalized.
inline DensityOperator jc_first_order_state(const JaynesCummingsParams& p, const BlochState& bloch, double beta) {
  const HamiltonianModel model = build_jaynes_cummings(p);
  const Operator b = jc_analytic_correction(p, bloch, beta);
  // B is anti-Hermitian, so e^{B} = exp(-i (iB)) is unitary.
  const Operator u = unitary_expm(Complex(0.0, 1.0) * b, 1.0);
  const Operator rho0 = kron(bloch.density().op(), thermal_state(model.h_b(), beta).op());
  return DensityOperator::normalized(u.adjoint() * rho0 * u);
}

}  // namespace maxent_sb
