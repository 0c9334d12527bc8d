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

// Simulated Pauli tomography: 3^n product-basis settings with finite shots,
// linear inversion, projection onto physical states, and a parametric
// bootstrap for error bars.
//
// Outcome indices use the register convention: bit (n - q) of the outcome
// index belongs to qubit q, and a 0 bit is the +1 eigenvalue.

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qdarwin/information.hpp"

namespace qdarwin {

/// One measurement basis letter (X, Y or Z) per qubit, qubit 1 first.
class MeasurementSetting {
 public:
  explicit MeasurementSetting(std::string bases);
  static MeasurementSetting from_index(std::size_t index, int n_qubits);

  const std::string& bases() const { return bases_; }
  int n_qubits() const { return static_cast<int>(bases_.size()); }
  /// Position in pauli_settings(n): base-3 digits with X < Y < Z.
  std::size_t index() const;

 private:
  std::string bases_;
};

/// All 3^n settings in lexicographic order (X < Y < Z), n in [1, 8].
std::vector<MeasurementSetting> pauli_settings(int n);

struct TomographyDataset {
  int n_qubits = 0;
  /// 0 marks exact-probability mode: `counts` then holds frequencies.
  int shots_per_setting = 0;
  std::uint64_t seed = 0;
  /// Indexed by MeasurementSetting::index(), each of length 2^n.
  std::vector<Eigen::VectorXd> counts;

  bool exact() const { return shots_per_setting == 0; }
  Eigen::VectorXd frequencies(std::size_t setting) const;
  void validate() const;
};

/// Deterministic generator for the stream keyed by (seed, keys...).
std::mt19937_64 substream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

Eigen::VectorXd exact_probabilities(const DensityMatrix& rho, const MeasurementSetting& setting);

/// Multinomial draw of `shots` outcomes. Outcomes with zero probability are
/// never drawn.
Eigen::VectorXd sample_multinomial(const Eigen::VectorXd& probabilities, int shots, std::mt19937_64& rng);

/// Infinite-shot dataset (shots_per_setting = 0).
TomographyDataset exact_dataset(const DensityMatrix& rho);

/// Per-setting multinomial counts; setting s uses substream(seed, {0, s}).
TomographyDataset sample_dataset(const DensityMatrix& rho, int shots, std::uint64_t seed,
                                 int threads = thread_budget());

/// Empirical expectation of a Pauli string over {I, X, Y, Z}, averaged
/// uniformly over every setting that agrees with it on its non-identity
/// positions.
double pauli_expectation(const TomographyDataset& dataset, std::string_view pauli);

/// 2^-n sum_P <P> P over all 4^n Pauli strings.
HermitianEstimate linear_inversion(const TomographyDataset& dataset);

/// Closest point of the probability simplex to `spectrum` (any order),
/// computed by zeroing the most negative entries and spreading their mass
/// evenly over the rest.
Eigen::VectorXd project_spectrum(const Eigen::VectorXd& spectrum);

/// Frobenius-nearest density matrix: project the spectrum, keep eigenvectors.
DensityMatrix mle_project(const HermitianEstimate& estimate);

DensityMatrix reconstruct(const TomographyDataset& dataset);

/// Trial t resamples every setting from the empirical frequencies with
/// substream(seed, {1, t, s}) and reconstructs. Output is independent of
/// `threads`.
std::vector<DensityMatrix> bootstrap(const TomographyDataset& dataset, int trials = 100, std::uint64_t seed = 0,
                                     int threads = thread_budget());

struct ScalarFunctional {
  std::string name;
  std::function<double(const DensityMatrix&)> evaluate;
};

ScalarFunctional fidelity_functional(const PureState& target);
ScalarFunctional purity_functional();
ScalarFunctional coherence_functional();
ScalarFunctional mutual_info_functional(const Fragment& fragment);
ScalarFunctional holevo_functional(const Fragment& fragment, const HolevoOptions& opts = {});

struct ErrorBar {
  double mean = 0.0;
  double stddev = 0.0;
  /// "0.859 ± 0.002": decimals follow the leading digit of the deviation,
  /// at least three.
  std::string format() const;
};

/// Sample mean and (n - 1)-denominator standard deviation.
ErrorBar scalar_errorbar(const std::vector<DensityMatrix>& ensemble, const ScalarFunctional& functional);

}  // namespace qdarwin
