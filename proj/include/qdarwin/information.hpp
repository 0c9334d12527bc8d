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

// System/fragment correlation measures for a register whose qubit 1 is the
// observed system and qubits 2..n are its environment.
//
// All quantities are in bits. The Holevo quantity is optimized over rank-1
// projective measurements on the system qubit; the discord reported here is
// therefore an upper bound on the POVM-optimized discord.

#pragma once

#include <optional>
#include <vector>

#include "qdarwin/entropy.hpp"
#include "qdarwin/fragment.hpp"
#include "qdarwin/parallel.hpp"

namespace qdarwin {

/// Projective qubit measurement {|m0><m0|, |m1><m1|} with |m0> at Bloch
/// angles (theta_m, phi_m) and |m1> antipodal.
struct MeasurementBasis {
  double theta_m = 0.0;  // [0, pi]
  double phi_m = 0.0;    // [0, 2 pi)

  /// Folds arbitrary angles onto the documented ranges without changing the
  /// measured rays.
  static MeasurementBasis canonical(double theta, double phi);
  static MeasurementBasis z() { return {0.0, 0.0}; }
  static MeasurementBasis x();

  Eigen::Vector2cd ket(int outcome) const;
};

struct ConditionalEnsemble {
  struct Entry {
    double probability;
    DensityMatrix state;  // maximally mixed placeholder when probability < 1e-12
    bool placeholder;
  };
  std::vector<Entry> entries;
};

struct HolevoOptions {
  int grid_size = 64;
  int refine_iters = 200;
  double step_tolerance = 1e-6;
};

struct HolevoResult {
  double bits = 0.0;
  MeasurementBasis argmax;
  int evaluations = 0;
};

struct FragmentCorrelation {
  Fragment fragment;
  double mutual_info;
  double holevo;
  double discord;
  MeasurementBasis argmax;
  int optimizer_evals;
};

struct CorrelationReport {
  double system_entropy = 0.0;
  double classical_entropy = 0.0;
  double coherence = 0.0;
  std::vector<FragmentCorrelation> rows;
};

struct CurvePoint {
  int size;
  double mutual_info;
  double holevo;
  double discord;
};

/// H_cl(diag rho_s) - H(rho_s) for a single-qubit state, pointer basis = Z.
double coherence(const DensityMatrix& rho_s);

double mutual_information(const DensityMatrix& rho, const Fragment& fragment);

ConditionalEnsemble conditional_ensemble(const DensityMatrix& rho, const Fragment& fragment,
                                         const MeasurementBasis& basis);

double holevo_from_basis(const DensityMatrix& rho, const Fragment& fragment, const MeasurementBasis& basis);

/// Grid search over (theta_m in [0, pi], phi_m in [0, pi)) followed by
/// Nelder-Mead refinement from the best grid point. Grid ties go to the
/// lexicographically lowest (theta_m, phi_m). The value returned is attained
/// by the returned basis, so it never exceeds the projective optimum.
HolevoResult holevo_bound(const DensityMatrix& rho, const Fragment& fragment, const HolevoOptions& opts = {});

/// I - chi. Optimizer slack up to 1e-4 bits is absorbed; anything larger
/// throws NumericError.
double quantum_discord(const DensityMatrix& rho, const Fragment& fragment, const HolevoOptions& opts = {});

/// I, chi and D for one fragment, sharing the partial traces.
FragmentCorrelation correlate(const DensityMatrix& rho, const Fragment& fragment, const HolevoOptions& opts = {});

/// All 2^n_env - 1 nonempty fragments of qubits 2..n_env+1, ordered by size
/// and then lexicographically.
std::vector<Fragment> enumerate_fragments(int n_env);

CorrelationReport fragment_report(const DensityMatrix& rho, const std::vector<Fragment>& fragments,
                                  const HolevoOptions& opts = {}, int threads = thread_budget());

CorrelationReport full_report(const DensityMatrix& rho, const HolevoOptions& opts = {},
                              int threads = thread_budget());

/// Mean I, chi, D over all fragments of each size k = 1..n_env. The report
/// must contain every fragment (as produced by full_report).
std::vector<CurvePoint> partial_information_curve(const CorrelationReport& report);
std::vector<CurvePoint> partial_information_curve(const DensityMatrix& rho, const HolevoOptions& opts = {},
                                                  int threads = thread_budget());

/// Mean mutual information over fragments of each size, without the Holevo
/// optimization. Entry k-1 holds size k.
std::vector<double> mean_mutual_information_by_size(const DensityMatrix& rho);

/// Rows for the prefixes {o1}, {o1, o2}, ..., of an ordering of all
/// environment qubits.
std::vector<FragmentCorrelation> accumulation_curve(const DensityMatrix& rho, const std::vector<int>& order,
                                                    const HolevoOptions& opts = {}, int threads = thread_budget());

/// Smallest fragment size whose mean I reaches (1 - delta) H(rho_S); empty
/// when no size does or the system carries no entropy.
std::optional<int> redundancy(const DensityMatrix& rho, double delta = 0.3);
std::optional<int> redundancy(const std::vector<double>& mean_info_by_size, double system_entropy,
                              double delta = 0.3);

}  // namespace qdarwin
