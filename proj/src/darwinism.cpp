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

#include "qdarwin/darwinism.hpp"

namespace qdarwin {

void NoiseSpec::validate() const {
  if (kind == Kind::none) {
    if (p || target_purity) throw ValidationError("noise: kind 'none' takes no parameter");
    return;
  }
  if (p.has_value() == target_purity.has_value())
    throw ValidationError("noise: exactly one of 'p' and 'target_purity' must be set");
  if (p && !(*p >= 0.0 && *p <= 1.0)) throw ValidationError("noise: 'p' must lie in [0, 1]");
  if (target_purity && !(*target_purity > 0.0 && *target_purity <= 1.0))
    throw ValidationError("noise: 'target_purity' must lie in (0, 1]");
}

std::string_view to_string(NoiseSpec::Kind kind) {
  switch (kind) {
    case NoiseSpec::Kind::none:
      return "none";
    case NoiseSpec::Kind::depolarizing:
      return "depolarizing";
    case NoiseSpec::Kind::dephasing:
      return "dephasing";
  }
  return "none";
}

NoiseSpec::Kind noise_kind_from_string(std::string_view name) {
  if (name == "none") return NoiseSpec::Kind::none;
  if (name == "depolarizing") return NoiseSpec::Kind::depolarizing;
  if (name == "dephasing") return NoiseSpec::Kind::dephasing;
  throw ValidationError("noise: unknown kind '" + std::string(name) + "'");
}

void DarwinismConfig::validate() const {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) || !std::isfinite(beta.real()) ||
      !std::isfinite(beta.imag()))
    throw ValidationError("config: 'alpha'/'beta' must be finite");
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > tol::norm)
    throw ValidationError("config: |alpha|^2 + |beta|^2 must equal 1");
  if (thetas_deg.empty()) throw ValidationError("config: 'thetas_deg' must list at least one angle");
  if (n_qubits() > kMaxQubits) throw ValidationError("config: too many environment qubits in 'thetas_deg'");
  for (double t : thetas_deg)
    if (!std::isfinite(t)) throw ValidationError("config: 'thetas_deg' entries must be finite");
  noise.validate();
}

DarwinismConfig preset(std::string_view name) {
  DarwinismConfig cfg;
  if (name == "theta_A") {
    cfg.thetas_deg = {180, 180, 180, 180, 180};
  } else if (name == "theta_B") {
    cfg.thetas_deg = {180, 180, 180, 72, 100};
  } else {
    throw ValidationError("unknown preset '" + std::string(name) + "'");
  }
  return cfg;
}

std::vector<std::string> preset_names() { return {"theta_A", "theta_B"}; }

double branch_overlap(const DarwinismConfig& cfg, const std::vector<int>& env_qubits) {
  double overlap = 1.0;
  for (int q : env_qubits) {
    if (q < 2 || q > cfg.n_qubits())
      throw ValidationError("branch_overlap: qubit " + std::to_string(q) + " is not an environment qubit");
    overlap *= std::cos(cfg.theta_rad(q) / 2);
  }
  return overlap;
}

double branch_overlap(const DarwinismConfig& cfg, const Fragment& fragment) {
  return branch_overlap(cfg, fragment.members());
}

double calibrate_depolarizing(double target_purity, std::size_t dim) {
  if (dim < 2) throw ValidationError("calibrate_depolarizing: dimension must be at least 2");
  const double floor = 1.0 / static_cast<double>(dim);
  if (!(target_purity >= floor && target_purity <= 1.0))
    throw ValidationError("calibrate_depolarizing: target purity must lie in [1/dim, 1]");
  return std::sqrt((target_purity - floor) / (1.0 - floor));
}

}  // namespace qdarwin
