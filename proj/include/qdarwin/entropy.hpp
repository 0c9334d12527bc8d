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
#include <cmath>

#include "qdarwin/linalg.hpp"

namespace qdarwin {

/// -sum p log2 p over a spectrum, treating entries below the eigenvalue floor
/// (including small negatives) as exactly zero.
template <typename Derived>
typename Derived::Scalar spectral_entropy(const Eigen::MatrixBase<Derived>& spectrum) {
  using Real = typename Derived::Scalar;
  Real h = 0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const Real l = spectrum(i);
    if (l > Real(tol::eigen_floor)) h -= l * std::log2(l);
  }
  return std::max(h, Real(0));
}

/// Shannon entropy in bits. Entries down to -1e-12 are clipped to zero and
/// the vector is renormalized; a sum off by more than 1e-6 is rejected.
template <typename Derived>
typename Derived::Scalar shannon_entropy(const Eigen::MatrixBase<Derived>& p) {
  using Real = typename Derived::Scalar;
  if (p.size() == 0) throw ValidationError("shannon_entropy: empty probability vector");
  RVector<Real> q = p;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    if (!std::isfinite(q(i)) || q(i) < -Real(tol::probability_negative))
      throw ValidationError("shannon_entropy: negative or non-finite probability");
    q(i) = std::max(q(i), Real(0));
  }
  const Real sum = q.sum();
  if (std::abs(sum - Real(1)) > Real(tol::probability_sum))
    throw ValidationError("shannon_entropy: probabilities do not sum to 1");
  q /= sum;
  Real h = 0;
  for (Eigen::Index i = 0; i < q.size(); ++i)
    if (q(i) > 0) h -= q(i) * std::log2(q(i));
  return h;
}

template <typename Real>
Real von_neumann_entropy(const BasicDensityMatrix<Real>& rho) {
  return spectral_entropy(eigenvalues_unchecked<Real>(rho.matrix()));
}

template <typename Real>
Real purity(const BasicDensityMatrix<Real>& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  return rho.matrix().squaredNorm();
}

/// <psi|rho|psi>.
template <typename Real>
Real fidelity_pure(const BasicDensityMatrix<Real>& rho, const BasicPureState<Real>& target) {
  if (rho.dim() != target.dim()) throw ValidationError("fidelity_pure: dimension mismatch");
  const auto& psi = target.amplitudes();
  return std::clamp(psi.dot(rho.matrix() * psi).real(), Real(0), Real(1));
}

}  // namespace qdarwin
