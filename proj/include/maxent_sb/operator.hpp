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

// Dense complex operator algebra used by every other part of the library.
//
// Conventions: hbar = k_B = 1. Bipartite operators are ordered system factor
// first, i.e. joint index = system_index * d_B + bath_index.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "maxent_sb/errors.hpp"

namespace maxent_sb {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Largest joint dimension the kernel is meant for (desk scale).
inline constexpr Index kMaxDim = 4096;

/// Default floor applied to eigenvalues before taking logarithms of states.
inline constexpr double kDefaultEigenFloor = 1e-12;

/// Hermiticity tolerance accepted by spectral functions (max-abs defect).
inline constexpr double kSpectralHermTol = 1e-10;

class Operator {
 public:
  Operator() = default;

  explicit Operator(Matrix entries, std::string label = {})
      : m_(std::move(entries)), label_(std::move(label)) {
    if (m_.rows() != m_.cols()) {
      throw DimensionError("operator must be square, got " + std::to_string(m_.rows()) + "x" +
                           std::to_string(m_.cols()));
    }
    if (!m_.allFinite()) {
      throw NumericalError("operator has non-finite entries" +
                           (label_.empty() ? std::string{} : " (" + label_ + ")"));
    }
  }

  static Operator zero(Index n) { return Operator(Matrix::Zero(n, n)); }
  static Operator identity(Index n) { return Operator(Matrix::Identity(n, n)); }

  static Operator diagonal(const std::vector<double>& d) {
    Matrix m = Matrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = d[i];
    return Operator(std::move(m));
  }

  /// |v><v| for a (not necessarily normalized) vector.
  static Operator projector(const Vector& v) { return Operator(v * v.adjoint()); }

  Index dim() const { return m_.rows(); }
  bool empty() const { return m_.size() == 0; }
  const Matrix& matrix() const { return m_; }
  const std::string& label() const { return label_; }

  Operator labeled(std::string label) const& { return Operator(m_, std::move(label)); }

  Complex operator()(Index i, Index j) const { return m_(i, j); }

  Operator adjoint() const { return Operator(m_.adjoint()); }
  Complex trace() const { return m_.trace(); }

  /// max_ij |x_ij - conj(x_ji)|
  double hermiticity_defect() const {
    if (empty()) return 0.0;
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  }

  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

  /// (x + x^dagger) / 2
  Operator hermitian_part() const { return Operator(0.5 * (m_ + m_.adjoint()), label_); }

  double max_abs() const { return empty() ? 0.0 : m_.cwiseAbs().maxCoeff(); }

  Operator& operator+=(const Operator& o) {
    check_same_dim(o, "+=");
    m_ += o.m_;
    return *this;
  }
  Operator& operator-=(const Operator& o) {
    check_same_dim(o, "-=");
    m_ -= o.m_;
    return *this;
  }
  Operator& operator*=(Complex s) {
    m_ *= s;
    return *this;
  }

  friend Operator operator+(const Operator& a, const Operator& b) {
    a.check_same_dim(b, "+");
    return Operator(a.m_ + b.m_);
  }
  friend Operator operator-(const Operator& a, const Operator& b) {
    a.check_same_dim(b, "-");
    return Operator(a.m_ - b.m_);
  }
  friend Operator operator-(const Operator& a) { return Operator(-a.m_); }
  friend Operator operator*(const Operator& a, const Operator& b) {
    a.check_same_dim(b, "*");
    return Operator(a.m_ * b.m_);
  }
  friend Operator operator*(Complex s, const Operator& a) { return Operator(s * a.m_); }
  friend Operator operator*(const Operator& a, Complex s) { return Operator(s * a.m_); }
  friend Operator operator*(double s, const Operator& a) { return Operator(s * a.m_); }
  friend Operator operator*(const Operator& a, double s) { return Operator(s * a.m_); }
  friend Operator operator/(const Operator& a, Complex s) { return Operator(a.m_ / s); }
  friend Operator operator/(const Operator& a, double s) { return Operator(a.m_ / s); }

 private:
  void check_same_dim(const Operator& o, const char* what) const {
    if (dim() != o.dim()) {
      throw DimensionError(std::string("operator ") + what + ": dimension mismatch " +
                           std::to_string(dim()) + " vs " + std::to_string(o.dim()));
    }
  }

  Matrix m_;
  std::string label_;
};

/// [a, b] = ab - ba
inline Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

/// Hilbert-Schmidt inner product tr(a^dagger b).
inline Complex hs_inner(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw DimensionError("hs_inner: dimension mismatch");
  return (a.matrix().adjoint() * b.matrix()).trace();
}

class BipartiteLayout {
 public:
  BipartiteLayout(Index d_s, Index d_b) : d_s_(d_s), d_b_(d_b) {
    if (d_s < 2) throw LayoutError("system dimension must be >= 2, got " + std::to_string(d_s));
    if (d_b < 1) throw LayoutError("bath dimension must be >= 1, got " + std::to_string(d_b));
  }

  Index d_s() const { return d_s_; }
  Index d_b() const { return d_b_; }
  Index total() const { return d_s_ * d_b_; }

  Index joint_index(Index s, Index b) const { return s * d_b_ + b; }

  void require_joint(const Operator& x, const char* what) const {
    if (x.dim() != total()) {
      throw LayoutError(std::string(what) + ": operator dim " + std::to_string(x.dim()) +
                        " does not match layout " + std::to_string(d_s_) + "x" + std::to_string(d_b_));
    }
  }

  friend bool operator==(const BipartiteLayout&, const BipartiteLayout&) = default;

 private:
  Index d_s_;
  Index d_b_;
};

// ---------------------------------------------------------------------------
// Tensor products and partial traces

inline Operator kron(const Operator& a, const Operator& b) {
  const Index na = a.dim(), nb = b.dim();
  if (na * nb > kMaxDim) throw DimensionError("kron: result exceeds kernel dimension cap");
  Matrix out(na * nb, na * nb);
  for (Index i = 0; i < na; ++i) {
    for (Index j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
    }
  }
  return Operator(std::move(out));
}

/// x (x) I_B
inline Operator embed_system(const Operator& x, const BipartiteLayout& layout) {
  if (x.dim() != layout.d_s()) throw LayoutError("embed_system: operator is not system-sized");
  return kron(x, Operator::identity(layout.d_b()));
}

/// I_S (x) x
inline Operator embed_bath(const Operator& x, const BipartiteLayout& layout) {
  if (x.dim() != layout.d_b()) throw LayoutError("embed_bath: operator is not bath-sized");
  return kron(Operator::identity(layout.d_s()), x);
}

inline Operator partial_trace_B(const Operator& x, const BipartiteLayout& layout) {
  layout.require_joint(x, "partial_trace_B");
  const Index ds = layout.d_s(), db = layout.d_b();
  Matrix out(ds, ds);
  for (Index i = 0; i < ds; ++i) {
    for (Index j = 0; j < ds; ++j) {
      out(i, j) = x.matrix().block(i * db, j * db, db, db).trace();
    }
  }
  return Operator(std::move(out));
}

inline Operator partial_trace_S(const Operator& x, const BipartiteLayout& layout) {
  layout.require_joint(x, "partial_trace_S");
  const Index ds = layout.d_s(), db = layout.d_b();
  Matrix out = Matrix::Zero(db, db);
  for (Index i = 0; i < ds; ++i) out += x.matrix().block(i * db, i * db, db, db);
  return Operator(std::move(out));
}

// ---------------------------------------------------------------------------
// Spectral calculus on Hermitian operators

struct HermitianSpectrum {
  RealVector values;  // ascending
  Matrix vectors;     // columns are eigenvectors

  Index dim() const { return values.size(); }

  template <class F>
  Operator apply(F&& f) const {
    RealVector fv = values.unaryExpr(std::forward<F>(f));
    Matrix m = vectors * fv.asDiagonal() * vectors.adjoint();
    return Operator(0.5 * (m + m.adjoint()));
  }
};

/// Eigendecomposition after symmetrization. Throws PreconditionError when the
/// input deviates from Hermitian by more than herm_tol (relative to the largest
/// entry once that exceeds one).
inline HermitianSpectrum eigh(const Operator& x, double herm_tol = kSpectralHermTol) {
  const double defect = x.hermiticity_defect();
  if (defect > herm_tol * std::max(1.0, x.max_abs())) {
    throw PreconditionError("spectral function needs a Hermitian operator (defect " +
                            std::to_string(defect) + ")");
  }
  Matrix sym = 0.5 * (x.matrix() + x.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigendecomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

/// e^{x} for Hermitian x.
inline Operator herm_expm(const Operator& x) {
  return eigh(x).apply([](double v) { return std::exp(v); });
}

/// e^{x} / tr e^{x}, evaluated with the spectrum shifted so the largest
/// exponent is zero.
inline Operator normalized_expm(const Operator& x) {
  const HermitianSpectrum sp = eigh(x);
  const double top = sp.values.maxCoeff();
  RealVector w = (sp.values.array() - top).exp().matrix();
  w /= w.sum();
  Operator out(sp.vectors * w.asDiagonal() * sp.vectors.adjoint());
  return out.hermitian_part();
}

/// Spectral logarithm with eigenvalues clamped from below to eigen_floor.
inline Operator herm_logm_support(const Operator& x, double eigen_floor = kDefaultEigenFloor) {
  const HermitianSpectrum sp = eigh(x);
  if (sp.values.minCoeff() < -1e-10 * std::max(1.0, sp.values.cwiseAbs().maxCoeff())) {
    throw PreconditionError("herm_logm_support: negative eigenvalue " + std::to_string(sp.values.minCoeff()));
  }
  return sp.apply([eigen_floor](double v) { return std::log(std::max(v, eigen_floor)); });
}

/// exp(-i h t) for Hermitian h.
inline Operator unitary_expm(const Operator& h, double t) {
  const HermitianSpectrum sp = eigh(h);
  Vector phases(sp.dim());
  for (Index k = 0; k < sp.dim(); ++k) phases(k) = std::polar(1.0, -sp.values(k) * t);
  return Operator(sp.vectors * phases.asDiagonal() * sp.vectors.adjoint());
}

/// Sum of singular values. Hermitian inputs use the eigenvalue route.
inline double trace_norm(const Operator& x) {
  if (x.empty()) return 0.0;
  const double scale = std::max(1.0, x.max_abs());
  if (x.hermiticity_defect() <= 1e-13 * scale) {
    return eigh(x, std::numeric_limits<double>::infinity()).values.cwiseAbs().sum();
  }
  Eigen::BDCSVD<Matrix> svd(x.matrix());
  return svd.singularValues().sum();
}

/// Largest singular value.
inline double operator_norm(const Operator& x) {
  if (x.empty()) return 0.0;
  Eigen::BDCSVD<Matrix> svd(x.matrix());
  return svd.singularValues()(0);
}

/// -sum p log p with 0 log 0 := 0; eigenvalues below 0 (round-off) are dropped.
inline double entropy_of_spectrum(const RealVector& p) {
  double s = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p(i) > 0.0) s -= p(i) * std::log(p(i));
  }
  return s;
}

}  // namespace maxent_sb
