// Copyright 2026 The qdarwin Authors
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

#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace qdarwin {

/// Raised when an input violates a documented precondition or type invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation produces a result outside its numeric contract
/// (for example a discord value far below zero).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Real>
using Complex = std::complex<Real>;
template <typename Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

namespace tol {
inline constexpr double norm = 1e-9;
inline constexpr double hermitian = 1e-9;
inline constexpr double trace = 1e-9;
inline constexpr double estimate_trace = 1e-6;
inline constexpr double psd = 1e-9;
inline constexpr double unitary = 1e-9;
inline constexpr double eigen_floor = 1e-12;
inline constexpr double probability_negative = 1e-12;
inline constexpr double probability_sum = 1e-6;
}  // namespace tol

/// Tolerance usable at precision `Real`: the nominal double tolerance, but
/// never tighter than a small multiple of machine epsilon.
template <typename Real>
constexpr Real tolerance(double nominal) {
  return std::max(static_cast<Real>(nominal), Real(256) * std::numeric_limits<Real>::epsilon());
}

inline constexpr int kMaxQubits = 16;

inline std::size_t dimension_of(int n_qubits) { return std::size_t{1} << n_qubits; }

/// Bit position of 1-based qubit `q` inside a basis index of an `n`-qubit
/// register. Qubit 1 is the most significant bit.
inline int bit_of(int q, int n_qubits) { return n_qubits - q; }

/// Number of qubits for a power-of-two dimension, or -1.
inline int qubits_for_dimension(Eigen::Index dim) {
  if (dim < 2) return -1;
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return (Eigen::Index{1} << n) == dim ? n : -1;
}

template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() == 0) return 0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Normalized amplitude vector over `n_qubits` qubits.
template <typename Real>
class BasicPureState {
 public:
  using Scalar = Complex<Real>;
  using Vector = CVector<Real>;

  BasicPureState(int n_qubits, Vector amplitudes)
      : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (n_qubits_ < 1 || n_qubits_ > kMaxQubits)
      throw ValidationError("pure state: n_qubits must be in [1, " + std::to_string(kMaxQubits) + "]");
    if (static_cast<std::size_t>(amplitudes_.size()) != dimension_of(n_qubits_))
      throw ValidationError("pure state: amplitude vector length must be 2^n_qubits");
    if (!amplitudes_.allFinite()) throw ValidationError("pure state: non-finite amplitude");
    const Real norm = amplitudes_.norm();
    if (std::abs(norm - Real(1)) > tolerance<Real>(tol::norm))
      throw ValidationError("pure state: amplitudes are not normalized (norm " + std::to_string(norm) + ")");
  }

  explicit BasicPureState(const Vector& amplitudes)
      : BasicPureState(qubits_for_dimension(amplitudes.size()), amplitudes) {}

  static BasicPureState basis(int n_qubits, std::size_t index) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dimension_of(n_qubits)));
    v(static_cast<Eigen::Index>(index)) = Scalar(1);
    return BasicPureState(n_qubits, std::move(v));
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  const Scalar& operator()(Eigen::Index i) const { return amplitudes_(i); }

 private:
  int n_qubits_;
  Vector amplitudes_;
};

/// Reports the first violated density-matrix invariant, if any. The PSD check
/// costs one Hermitian eigensolve.
template <typename Real>
std::optional<std::string> density_invariant_violation(const CMatrix<Real>& m, bool check_psd = true) {
  if (m.rows() != m.cols()) return "matrix is not square";
  if (qubits_for_dimension(m.rows()) < 1) return "dimension is not a power of two";
  if (!m.allFinite()) return "non-finite entry";
  if (hermiticity_defect(m) > tolerance<Real>(tol::hermitian)) return "matrix is not Hermitian";
  if (std::abs(m.trace().real() - Real(1)) > tolerance<Real>(tol::trace)) return "trace differs from 1";
  if (check_psd) {
    const CMatrix<Real> h = (m + m.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tolerance<Real>(tol::psd)) return "matrix is not positive semidefinite";
  }
  return std::nullopt;
}

/// Trace-one Hermitian positive semidefinite matrix.
template <typename Real>
class BasicDensityMatrix {
 public:
  using Scalar = Complex<Real>;
  using Matrix = CMatrix<Real>;

  explicit BasicDensityMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (auto why = density_invariant_violation<Real>(entries_)) throw ValidationError("density matrix: " + *why);
    n_qubits_ = qubits_for_dimension(entries_.rows());
  }

  /// Wraps a matrix whose invariants are guaranteed by construction (outputs of
  /// trace-preserving maps on valid inputs). Only shape is checked.
  static BasicDensityMatrix trusted(Matrix entries) {
    const int n = qubits_for_dimension(entries.rows());
    if (n < 1 || entries.rows() != entries.cols()) throw ValidationError("density matrix: bad shape");
    return BasicDensityMatrix(n, std::move(entries));
  }

  static BasicDensityMatrix maximally_mixed(int n_qubits) {
    const auto d = static_cast<Eigen::Index>(dimension_of(n_qubits));
    return trusted(Matrix::Identity(d, d) / Real(d));
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  const Scalar& operator()(Eigen::Index r, Eigen::Index c) const { return entries_(r, c); }

 private:
  BasicDensityMatrix(int n, Matrix entries) : n_qubits_(n), entries_(std::move(entries)) {}

  int n_qubits_ = 0;
  Matrix entries_;
};

/// Hermitian unit-trace matrix that may have negative eigenvalues, e.g. a
/// linear-inversion tomography estimate.
template <typename Real>
class BasicHermitianEstimate {
 public:
  using Scalar = Complex<Real>;
  using Matrix = CMatrix<Real>;

  explicit BasicHermitianEstimate(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) throw ValidationError("hermitian estimate: matrix is not square");
    n_qubits_ = qubits_for_dimension(entries_.rows());
    if (n_qubits_ < 1) throw ValidationError("hermitian estimate: dimension is not a power of two");
    if (!entries_.allFinite()) throw ValidationError("hermitian estimate: non-finite entry");
    if (hermiticity_defect(entries_) > tolerance<Real>(tol::hermitian))
      throw ValidationError("hermitian estimate: matrix is not Hermitian");
    if (std::abs(entries_.trace().real() - Real(1)) > tolerance<Real>(tol::estimate_trace))
      throw ValidationError("hermitian estimate: trace differs from 1");
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }

 private:
  int n_qubits_ = 0;
  Matrix entries_;
};

using PureState = BasicPureState<double>;
using DensityMatrix = BasicDensityMatrix<double>;
using HermitianEstimate = BasicHermitianEstimate<double>;

}  // namespace qdarwin
