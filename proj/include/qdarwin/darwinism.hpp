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

// System + environment branch states produced by a register of controlled
// rotations from one system qubit onto N environment qubits, plus the noise
// channels used to emulate an imperfect preparation.

#pragma once

#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdarwin/entropy.hpp"
#include "qdarwin/fragment.hpp"
#include "qdarwin/linalg.hpp"

namespace qdarwin {

struct NoiseSpec {
  enum class Kind { none, depolarizing, dephasing };

  Kind kind = Kind::none;
  std::optional<double> p;
  std::optional<double> target_purity;

  static NoiseSpec none() { return {}; }
  static NoiseSpec depolarizing(double p) { return {Kind::depolarizing, p, std::nullopt}; }
  static NoiseSpec dephasing(double p) { return {Kind::dephasing, p, std::nullopt}; }
  static NoiseSpec depolarizing_to_purity(double purity) { return {Kind::depolarizing, std::nullopt, purity}; }
  static NoiseSpec dephasing_to_purity(double purity) { return {Kind::dephasing, std::nullopt, purity}; }

  void validate() const;
};

std::string_view to_string(NoiseSpec::Kind kind);
NoiseSpec::Kind noise_kind_from_string(std::string_view name);

struct DarwinismConfig {
  std::complex<double> alpha{1.0 / std::numbers::sqrt2, 0.0};
  std::complex<double> beta{1.0 / std::numbers::sqrt2, 0.0};
  std::vector<double> thetas_deg;  // one per environment qubit
  NoiseSpec noise;
  std::uint64_t seed = 0;

  int n_env() const { return static_cast<int>(thetas_deg.size()); }
  int n_qubits() const { return n_env() + 1; }
  /// Environment qubit `q` (2..N+1) rotation angle in radians.
  double theta_rad(int q) const { return thetas_deg.at(static_cast<std::size_t>(q - 2)) * std::numbers::pi / 180.0; }

  void validate() const;
};

/// Built-in parameter sets: "theta_A" (five 180 degree records) and "theta_B"
/// (180, 180, 180, 72, 100), both with alpha = beta = 1/sqrt(2).
DarwinismConfig preset(std::string_view name);
std::vector<std::string> preset_names();

enum class CouplingGate { controlled_ry, hamiltonian };

/// |0><0| (x) I + |1><1| (x) Ry(theta), control on the first qubit.
template <typename Real>
CMatrix<Real> controlled_rotation(Real theta) {
  const Real c = std::cos(theta / 2), s = std::sin(theta / 2);
  CMatrix<Real> u = CMatrix<Real>::Identity(4, 4);
  u(2, 2) = c;
  u(2, 3) = -s;
  u(3, 2) = s;
  u(3, 3) = c;
  return u;
}

/// exp(-i g dt A (x) X) with A = (I - Z)/2 and g dt = theta/2, obtained by
/// exponentiating the coupling in its eigenbasis.
template <typename Real>
CMatrix<Real> hamiltonian_gate(Real theta) {
  CMatrix<Real> a = CMatrix<Real>::Zero(2, 2);
  a(1, 1) = 1;
  CMatrix<Real> x = CMatrix<Real>::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1;
  const CMatrix<Real> generator = (theta / 2) * kron(a, x);
  const auto eig = hermitian_eigen(generator);
  CVector<Real> phases(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(Real(1), -eig.eigenvalues(i));
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

template <typename Real>
CMatrix<Real> coupling_gate(CouplingGate kind, Real theta) {
  return kind == CouplingGate::controlled_ry ? controlled_rotation(theta) : hamiltonian_gate(theta);
}

/// alpha|0>|0...0> + beta|1> (x)_i (cos(theta_i/2)|0> + sin(theta_i/2)|1>),
/// expanded term by term.
template <typename Real>
BasicPureState<Real> branch_state_closed_form(const DarwinismConfig& cfg) {
  cfg.validate();
  const int n = cfg.n_qubits();
  const auto d = static_cast<Eigen::Index>(dimension_of(n));
  const std::size_t env_dim = dimension_of(cfg.n_env());
  CVector<Real> v = CVector<Real>::Zero(d);
  v(0) = Complex<Real>(cfg.alpha);
  for (std::size_t e = 0; e < env_dim; ++e) {
    Complex<Real> amp(cfg.beta);
    for (int q = 2; q <= n; ++q) {
      const Real half = static_cast<Real>(cfg.theta_rad(q)) / 2;
      amp *= ((e >> bit_of(q, n)) & 1U) ? std::sin(half) : std::cos(half);
    }
    v(static_cast<Eigen::Index>(env_dim + e)) = amp;
  }
  return BasicPureState<Real>(n, std::move(v));
}

/// Runs the coupling circuit on (alpha|0> + beta|1>) (x) |0...0>. For the
/// controlled-Ry gate the result is checked against the closed-form
/// expansion to 1e-12.
template <typename Real>
BasicPureState<Real> build_darwinism_state(const DarwinismConfig& cfg,
                                           CouplingGate gate = CouplingGate::controlled_ry) {
  cfg.validate();
  const int n = cfg.n_qubits();
  CVector<Real> v = CVector<Real>::Zero(static_cast<Eigen::Index>(dimension_of(n)));
  v(0) = Complex<Real>(cfg.alpha);
  v(static_cast<Eigen::Index>(dimension_of(n - 1))) = Complex<Real>(cfg.beta);
  for (int q = 2; q <= n; ++q)
    apply_gate_rows(v, coupling_gate(gate, static_cast<Real>(cfg.theta_rad(q))), {kSystemQubit, q}, n);
  BasicPureState<Real> out(n, std::move(v));

  if (gate == CouplingGate::controlled_ry) {
    const auto closed = branch_state_closed_form<Real>(cfg);
    const Real gap = (closed.amplitudes() - out.amplitudes()).cwiseAbs().maxCoeff();
    if (gap > tolerance<Real>(1e-12))
      throw NumericError("build_darwinism_state: circuit and closed-form states disagree by " + std::to_string(gap));
  }
  return out;
}

/// Overlap of the two conditional environment records restricted to
/// `env_qubits`: prod cos(theta_i/2). The empty product is 1.
double branch_overlap(const DarwinismConfig& cfg, const std::vector<int>& env_qubits);
double branch_overlap(const DarwinismConfig& cfg, const Fragment& fragment);

/// Root p of p^2 (1 - 1/dim) + 1/dim = target_purity.
double calibrate_depolarizing(double target_purity, std::size_t dim);

template <typename Real>
BasicDensityMatrix<Real> depolarize(const BasicPureState<Real>& psi, Real p) {
  const auto d = psi.dim();
  CMatrix<Real> rho = p * (psi.amplitudes() * psi.amplitudes().adjoint());
  rho.diagonal().array() += (Real(1) - p) / Real(d);
  return BasicDensityMatrix<Real>::trusted(std::move(rho));
}

/// Independent computational-basis dephasing on every qubit: an entry whose
/// row and column indices differ on h qubits is scaled by (1 - p)^h.
template <typename Real>
BasicDensityMatrix<Real> dephase(const BasicPureState<Real>& psi, Real p) {
  CMatrix<Real> rho = psi.amplitudes() * psi.amplitudes().adjoint();
  const int n = psi.n_qubits();
  RVector<Real> factor(n + 1);
  for (int h = 0; h <= n; ++h) factor(h) = std::pow(Real(1) - p, h);
  for (Eigen::Index c = 0; c < rho.cols(); ++c)
    for (Eigen::Index r = 0; r < rho.rows(); ++r)
      rho(r, c) *= factor(std::popcount(static_cast<std::uint64_t>(r ^ c)));
  return BasicDensityMatrix<Real>::trusted(std::move(rho));
}

/// Dephasing strength that brings `psi` to `target_purity`. Purity is
/// nonincreasing in p, so bisection on [0, 1] suffices.
template <typename Real>
Real calibrate_dephasing(const BasicPureState<Real>& psi, double target_purity) {
  const Real floor = purity(dephase(psi, Real(1)));
  if (!(target_purity <= 1.0 + 1e-12) || target_purity < floor - 1e-12)
    throw ValidationError("calibrate_dephasing: target purity " + std::to_string(target_purity) +
                          " outside reachable range [" + std::to_string(floor) + ", 1]");
  Real lo = 0, hi = 1;
  for (int it = 0; it < 200 && hi - lo > std::numeric_limits<Real>::epsilon(); ++it) {
    const Real mid = (lo + hi) / 2;
    (purity(dephase(psi, mid)) > target_purity ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

/// Noise strength p for `spec` applied to `psi`, resolving a purity target.
template <typename Real>
Real resolve_noise_strength(const BasicPureState<Real>& psi, const NoiseSpec& spec) {
  spec.validate();
  if (spec.kind == NoiseSpec::Kind::none) return 0;
  if (spec.p) return static_cast<Real>(*spec.p);
  if (spec.kind == NoiseSpec::Kind::depolarizing)
    return static_cast<Real>(calibrate_depolarizing(*spec.target_purity, static_cast<std::size_t>(psi.dim())));
  return calibrate_dephasing(psi, *spec.target_purity);
}

template <typename Real>
BasicDensityMatrix<Real> apply_noise(const BasicPureState<Real>& psi, const NoiseSpec& spec) {
  const Real p = resolve_noise_strength(psi, spec);
  switch (spec.kind) {
    case NoiseSpec::Kind::none:
      return to_density(psi);
    case NoiseSpec::Kind::depolarizing:
      return depolarize(psi, p);
    case NoiseSpec::Kind::dephasing:
      return dephase(psi, p);
  }
  throw ValidationError("apply_noise: unknown noise kind");
}

}  // namespace qdarwin
