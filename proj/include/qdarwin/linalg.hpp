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

#include <variant>
#include <vector>

#include "qdarwin/core.hpp"

namespace qdarwin {

/// Kronecker product with the left operand on the more significant qubits.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(const Eigen::MatrixBase<DerivedA>& a,
                                                                              const Eigen::MatrixBase<DerivedB>& b) {
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                                               a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <typename Real>
BasicPureState<Real> tensor_product(const BasicPureState<Real>& a, const BasicPureState<Real>& b) {
  CVector<Real> v = kron(a.amplitudes(), b.amplitudes());
  return BasicPureState<Real>(a.n_qubits() + b.n_qubits(), std::move(v));
}

template <typename Real>
BasicDensityMatrix<Real> tensor_product(const BasicDensityMatrix<Real>& a, const BasicDensityMatrix<Real>& b) {
  return BasicDensityMatrix<Real>::trusted(kron(a.matrix(), b.matrix()));
}

/// Either kind of state, as read from a state file.
template <typename Real>
using BasicAnyState = std::variant<BasicPureState<Real>, BasicDensityMatrix<Real>>;
using AnyState = BasicAnyState<double>;

/// Runtime-dispatched product; operands must be the same kind.
template <typename Real>
BasicAnyState<Real> tensor_product(const BasicAnyState<Real>& a, const BasicAnyState<Real>& b) {
  if (a.index() != b.index()) throw ValidationError("tensor_product: operands are of different kinds");
  return std::visit(
      [&](const auto& lhs) -> BasicAnyState<Real> {
        using T = std::decay_t<decltype(lhs)>;
        return tensor_product(lhs, std::get<T>(b));
      },
      a);
}

template <typename Real>
BasicDensityMatrix<Real> to_density(const BasicPureState<Real>& psi) {
  CMatrix<Real> rho = psi.amplitudes() * psi.amplitudes().adjoint();
  return BasicDensityMatrix<Real>::trusted(std::move(rho));
}

template <typename Real>
BasicDensityMatrix<Real> to_density(const BasicAnyState<Real>& state) {
  if (const auto* psi = std::get_if<BasicPureState<Real>>(&state)) return to_density(*psi);
  return std::get<BasicDensityMatrix<Real>>(state);
}

namespace detail {

inline void check_qubit_list(const std::vector<int>& qubits, int n_qubits, const char* what, bool require_sorted) {
  if (qubits.empty()) throw ValidationError(std::string(what) + ": qubit list is empty");
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] < 1 || qubits[i] > n_qubits)
      throw ValidationError(std::string(what) + ": qubit index " + std::to_string(qubits[i]) + " out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (qubits[j] == qubits[i]) throw ValidationError(std::string(what) + ": duplicate qubit index");
    if (require_sorted && i > 0 && qubits[i - 1] > qubits[i])
      throw ValidationError(std::string(what) + ": qubit indices must be ascending");
  }
}

/// Scatters the bits of `local` (MSB = first listed qubit) to the positions of
/// `qubits` in an `n`-qubit index.
inline std::size_t scatter_bits(std::size_t local, const std::vector<int>& qubits, int n_qubits) {
  std::size_t out = 0;
  const auto k = qubits.size();
  for (std::size_t i = 0; i < k; ++i)
    if ((local >> (k - 1 - i)) & 1U) out |= std::size_t{1} << bit_of(qubits[i], n_qubits);
  return out;
}

}  // namespace detail

/// Reduced density matrix on `keep` (1-based qubit indices). Kept qubits are
/// ordered ascending by original index regardless of the order given.
template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicDensityMatrix<Real>& rho, std::vector<int> keep) {
  const int n = rho.n_qubits();
  std::sort(keep.begin(), keep.end());
  detail::check_qubit_list(keep, n, "partial_trace", true);
  std::vector<int> traced;
  for (int q = 1; q <= n; ++q)
    if (!std::binary_search(keep.begin(), keep.end(), q)) traced.push_back(q);

  const std::size_t dk = dimension_of(static_cast<int>(keep.size()));
  const std::size_t dt = std::size_t{1} << traced.size();
  std::vector<std::size_t> keep_offset(dk), trace_offset(dt);
  for (std::size_t a = 0; a < dk; ++a) keep_offset[a] = detail::scatter_bits(a, keep, n);
  for (std::size_t t = 0; t < dt; ++t) trace_offset[t] = traced.empty() ? 0 : detail::scatter_bits(t, traced, n);

  const auto& m = rho.matrix();
  CMatrix<Real> out = CMatrix<Real>::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t b = 0; b < dk; ++b)
    for (std::size_t a = 0; a < dk; ++a) {
      Complex<Real> acc(0);
      for (std::size_t t = 0; t < dt; ++t)
        acc += m(static_cast<Eigen::Index>(keep_offset[a] | trace_offset[t]),
                 static_cast<Eigen::Index>(keep_offset[b] | trace_offset[t]));
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  return BasicDensityMatrix<Real>::trusted(std::move(out));
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
template <typename Real>
struct HermitianEigen {
  RVector<Real> eigenvalues;
  CMatrix<Real> eigenvectors;  // columns
};

template <typename Derived>
HermitianEigen<typename Derived::RealScalar> hermitian_eigen(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Derived::RealScalar;
  if (m.rows() != m.cols()) throw ValidationError("hermitian_eigen: matrix is not square");
  if (hermiticity_defect(m) > tolerance<Real>(tol::hermitian))
    throw ValidationError("hermitian_eigen: matrix is not Hermitian");
  const CMatrix<Real> h = (m + m.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(h);
  if (es.info() != Eigen::Success) throw NumericError("hermitian_eigen: eigensolver did not converge");
  HermitianEigen<Real> out;
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors = es.eigenvectors().rowwise().reverse();
  return out;
}

template <typename Real>
HermitianEigen<Real> hermitian_eigen(const BasicDensityMatrix<Real>& rho) {
  return hermitian_eigen(rho.matrix());
}

template <typename Real>
HermitianEigen<Real> hermitian_eigen(const BasicHermitianEstimate<Real>& est) {
  return hermitian_eigen(est.matrix());
}

/// Eigenvalues only, ascending, no Hermiticity check. For hot loops on
/// matrices that are Hermitian by construction.
template <typename Real>
RVector<Real> eigenvalues_unchecked(const CMatrix<Real>& h) {
  if (h.rows() == 1) return RVector<Real>::Constant(1, h(0, 0).real());
  if (h.rows() == 2) {
    const Real a = h(0, 0).real(), d = h(1, 1).real();
    const Real mean = (a + d) / 2, half = (a - d) / 2;
    const Real r = std::sqrt(half * half + std::norm(h(0, 1)));
    RVector<Real> out(2);
    out << mean - r, mean + r;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, double nominal = tol::unitary) {
  using Real = typename Derived::RealScalar;
  if (u.rows() != u.cols()) return false;
  const auto id = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>::Identity(u.rows(), u.cols());
  return ((u.adjoint() * u) - id).cwiseAbs().maxCoeff() <= tolerance<Real>(nominal);
}

/// Lifts a k-qubit gate acting on `targets` (first target = gate MSB) to the
/// full `n_qubits` register.
template <typename Real>
CMatrix<Real> embed_gate(const CMatrix<Real>& gate, const std::vector<int>& targets, int n_qubits) {
  detail::check_qubit_list(targets, n_qubits, "embed_gate", false);
  if (gate.rows() != static_cast<Eigen::Index>(dimension_of(static_cast<int>(targets.size()))) ||
      gate.cols() != gate.rows())
    throw ValidationError("embed_gate: gate dimension does not match target count");
  if (!is_unitary(gate)) throw ValidationError("embed_gate: gate is not unitary");

  const std::size_t d = dimension_of(n_qubits);
  const std::size_t dk = static_cast<std::size_t>(gate.rows());
  std::size_t target_mask = 0;
  std::vector<std::size_t> offset(dk);
  for (std::size_t a = 0; a < dk; ++a) offset[a] = detail::scatter_bits(a, targets, n_qubits);
  target_mask = offset[dk - 1];

  CMatrix<Real> out = CMatrix<Real>::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t rest = 0; rest < d; ++rest) {
    if (rest & target_mask) continue;
    for (std::size_t a = 0; a < dk; ++a)
      for (std::size_t b = 0; b < dk; ++b)
        out(static_cast<Eigen::Index>(rest | offset[a]), static_cast<Eigen::Index>(rest | offset[b])) =
            gate(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }
  return out;
}

/// Applies a k-qubit gate to the rows of `m` in place (a state vector or the
/// left side of an operator), without forming the full embedded matrix.
template <typename Real, typename Derived>
void apply_gate_rows(Eigen::MatrixBase<Derived>& m, const CMatrix<Real>& gate, const std::vector<int>& targets,
                     int n_qubits) {
  const std::size_t d = dimension_of(n_qubits);
  const std::size_t dk = static_cast<std::size_t>(gate.rows());
  std::vector<std::size_t> offset(dk);
  for (std::size_t a = 0; a < dk; ++a) offset[a] = detail::scatter_bits(a, targets, n_qubits);
  const std::size_t target_mask = offset[dk - 1];
  CVector<Real> in(static_cast<Eigen::Index>(dk)), out(static_cast<Eigen::Index>(dk));
  for (Eigen::Index col = 0; col < m.cols(); ++col)
    for (std::size_t rest = 0; rest < d; ++rest) {
      if (rest & target_mask) continue;
      for (std::size_t a = 0; a < dk; ++a)
        in(static_cast<Eigen::Index>(a)) = m(static_cast<Eigen::Index>(rest | offset[a]), col);
      out.noalias() = gate * in;
      for (std::size_t a = 0; a < dk; ++a)
        m(static_cast<Eigen::Index>(rest | offset[a]), col) = out(static_cast<Eigen::Index>(a));
    }
}

template <typename Real>
BasicPureState<Real> apply_gate(const BasicPureState<Real>& psi, const CMatrix<Real>& gate,
                                const std::vector<int>& targets) {
  detail::check_qubit_list(targets, psi.n_qubits(), "apply_gate", false);
  if (gate.rows() != static_cast<Eigen::Index>(dimension_of(static_cast<int>(targets.size()))))
    throw ValidationError("apply_gate: gate dimension does not match target count");
  if (!is_unitary(gate)) throw ValidationError("apply_gate: gate is not unitary");
  CVector<Real> v = psi.amplitudes();
  apply_gate_rows(v, gate, targets, psi.n_qubits());
  return BasicPureState<Real>(psi.n_qubits(), std::move(v));
}

}  // namespace qdarwin
