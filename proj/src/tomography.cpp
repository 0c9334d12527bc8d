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

#include "qdarwin/tomography.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace qdarwin {
namespace {

constexpr std::string_view kLetters = "XYZ";
constexpr int kMaxTomographyQubits = 8;

std::size_t pow3(int n) {
  std::size_t r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Rotation taking the +1/-1 eigenvectors of the basis letter to |0>/|1>.
Eigen::MatrixXcd basis_change(char letter) {
  const double r = 1.0 / std::numbers::sqrt2;
  const std::complex<double> i(0.0, 1.0);
  Eigen::MatrixXcd u(2, 2);
  switch (letter) {
    case 'X':
      u << r, r, r, -r;
      break;
    case 'Y':
      u << r, -i * r, r, i * r;
      break;
    default:
      u = Eigen::MatrixXcd::Identity(2, 2);
  }
  return u;
}

/// In-place Walsh-Hadamard transform: w[S] = sum_o f[o] (-1)^{|o & S|}.
void walsh_hadamard(Eigen::VectorXd& v) {
  const auto n = v.size();
  for (Eigen::Index h = 1; h < n; h <<= 1)
    for (Eigen::Index i = 0; i < n; i += 2 * h)
      for (Eigen::Index j = i; j < i + h; ++j) {
        const double a = v(j), b = v(j + h);
        v(j) = a + b;
        v(j + h) = a - b;
      }
}

void check_qubit_count(int n, const char* what) {
  if (n < 1 || n > kMaxTomographyQubits)
    throw ValidationError(std::string(what) + ": qubit count must lie in [1, 8]");
}

}  // namespace

MeasurementSetting::MeasurementSetting(std::string bases) : bases_(std::move(bases)) {
  check_qubit_count(static_cast<int>(bases_.size()), "measurement setting");
  for (char c : bases_)
    if (kLetters.find(c) == std::string_view::npos)
      throw ValidationError("measurement setting '" + bases_ + "': letters must be X, Y or Z");
}

MeasurementSetting MeasurementSetting::from_index(std::size_t index, int n_qubits) {
  check_qubit_count(n_qubits, "measurement setting");
  if (index >= pow3(n_qubits)) throw ValidationError("measurement setting index out of range");
  std::string s(static_cast<std::size_t>(n_qubits), 'X');
  for (int q = n_qubits - 1; q >= 0; --q) {
    s[static_cast<std::size_t>(q)] = kLetters[index % 3];
    index /= 3;
  }
  return MeasurementSetting(std::move(s));
}

std::size_t MeasurementSetting::index() const {
  std::size_t idx = 0;
  for (char c : bases_) idx = idx * 3 + kLetters.find(c);
  return idx;
}

std::vector<MeasurementSetting> pauli_settings(int n) {
  check_qubit_count(n, "pauli_settings");
  std::vector<MeasurementSetting> out;
  out.reserve(pow3(n));
  for (std::size_t i = 0; i < pow3(n); ++i) out.push_back(MeasurementSetting::from_index(i, n));
  return out;
}

Eigen::VectorXd TomographyDataset::frequencies(std::size_t setting) const {
  const Eigen::VectorXd& c = counts.at(setting);
  return exact() ? c : Eigen::VectorXd(c / static_cast<double>(shots_per_setting));
}

void TomographyDataset::validate() const {
  check_qubit_count(n_qubits, "dataset");
  if (shots_per_setting < 0) throw ValidationError("dataset: shots_per_setting must be nonnegative");
  if (counts.size() != pow3(n_qubits))
    throw ValidationError("dataset: expected " + std::to_string(pow3(n_qubits)) + " settings, found " +
                          std::to_string(counts.size()));
  const auto d = static_cast<Eigen::Index>(dimension_of(n_qubits));
  for (std::size_t s = 0; s < counts.size(); ++s) {
    const auto& c = counts[s];
    const std::string name = MeasurementSetting::from_index(s, n_qubits).bases();
    if (c.size() != d) throw ValidationError("dataset: setting " + name + " has the wrong number of outcomes");
    if (!c.allFinite() || c.minCoeff() < 0.0) throw ValidationError("dataset: setting " + name + " has negative counts");
    if (exact()) {
      if (std::abs(c.sum() - 1.0) > tol::norm)
        throw ValidationError("dataset: frequencies of setting " + name + " do not sum to 1");
    } else {
      if ((c.array() != c.array().round()).any())
        throw ValidationError("dataset: setting " + name + " has non-integer counts");
      if (c.sum() != static_cast<double>(shots_per_setting))
        throw ValidationError("dataset: counts of setting " + name + " do not sum to shots_per_setting");
    }
  }
}

std::mt19937_64 substream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t k : keys) h = splitmix64(h ^ splitmix64(k + 0x632BE59BD9B4E019ULL));
  return std::mt19937_64(h);
}

Eigen::VectorXd exact_probabilities(const DensityMatrix& rho, const MeasurementSetting& setting) {
  const int n = rho.n_qubits();
  if (setting.n_qubits() != n) throw ValidationError("exact_probabilities: setting does not match state size");
  Eigen::MatrixXcd m = rho.matrix();
  for (int pass = 0; pass < 2; ++pass) {
    for (int q = 1; q <= n; ++q) {
      const char letter = setting.bases()[static_cast<std::size_t>(q - 1)];
      if (letter != 'Z') apply_gate_rows(m, basis_change(letter), {q}, n);
    }
    m.adjointInPlace();
  }
  Eigen::VectorXd p = m.diagonal().real().cwiseMax(0.0);
  return p / p.sum();
}

Eigen::VectorXd sample_multinomial(const Eigen::VectorXd& probabilities, int shots, std::mt19937_64& rng) {
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(probabilities.size());
  Eigen::Index last = -1;
  for (Eigen::Index i = 0; i < probabilities.size(); ++i)
    if (probabilities(i) > 0.0) last = i;
  if (last < 0) throw ValidationError("sample_multinomial: no outcome has positive probability");
  int remaining = shots;
  double mass = probabilities.head(last + 1).sum();
  for (Eigen::Index i = 0; i < last && remaining > 0; ++i) {
    const double p = probabilities(i);
    if (p <= 0.0) continue;
    const double q = std::clamp(p / mass, 0.0, 1.0);
    const int k = std::binomial_distribution<int>(remaining, q)(rng);
    counts(i) = k;
    remaining -= k;
    mass -= p;
  }
  counts(last) += remaining;
  return counts;
}

TomographyDataset exact_dataset(const DensityMatrix& rho) {
  check_qubit_count(rho.n_qubits(), "exact_dataset");
  TomographyDataset ds{rho.n_qubits(), 0, 0, {}};
  for (const auto& s : pauli_settings(rho.n_qubits())) ds.counts.push_back(exact_probabilities(rho, s));
  return ds;
}

TomographyDataset sample_dataset(const DensityMatrix& rho, int shots, std::uint64_t seed, int threads) {
  check_qubit_count(rho.n_qubits(), "sample_dataset");
  if (shots < 1) throw ValidationError("sample_dataset: shots must be at least 1");
  const auto settings = pauli_settings(rho.n_qubits());
  TomographyDataset ds{rho.n_qubits(), shots, seed, std::vector<Eigen::VectorXd>(settings.size())};
  parallel_for(
      settings.size(),
      [&](std::size_t s) {
        auto rng = substream(seed, {0, s});
        ds.counts[s] = sample_multinomial(exact_probabilities(rho, settings[s]), shots, rng);
      },
      threads);
  return ds;
}

double pauli_expectation(const TomographyDataset& dataset, std::string_view pauli) {
  const int n = dataset.n_qubits;
  if (static_cast<int>(pauli.size()) != n) throw ValidationError("pauli_expectation: string length must equal n_qubits");
  std::vector<int> free_positions;
  std::size_t parity_mask = 0;
  for (int q = 0; q < n; ++q) {
    const char c = pauli[static_cast<std::size_t>(q)];
    if (c == 'I')
      free_positions.push_back(q);
    else if (kLetters.find(c) != std::string_view::npos)
      parity_mask |= std::size_t{1} << (n - 1 - q);
    else
      throw ValidationError("pauli_expectation: letters must be I, X, Y or Z");
  }
  const std::size_t compatible = pow3(static_cast<int>(free_positions.size()));
  double total = 0.0;
  for (std::size_t c = 0; c < compatible; ++c) {
    std::string bases(pauli);
    std::size_t rest = c;
    for (auto it = free_positions.rbegin(); it != free_positions.rend(); ++it) {
      bases[static_cast<std::size_t>(*it)] = kLetters[rest % 3];
      rest /= 3;
    }
    const Eigen::VectorXd f = dataset.frequencies(MeasurementSetting(bases).index());
    double e = 0.0;
    for (Eigen::Index o = 0; o < f.size(); ++o)
      e += (std::popcount(static_cast<std::size_t>(o) & parity_mask) & 1) ? -f(o) : f(o);
    total += e;
  }
  return total / static_cast<double>(compatible);
}

HermitianEstimate linear_inversion(const TomographyDataset& dataset) {
  dataset.validate();
  const int n = dataset.n_qubits;
  const std::size_t d = dimension_of(n);

  // Accumulate <P> for every Pauli string, keyed by its (x, z) masks. One
  // Walsh-Hadamard transform per setting yields the parities of all subsets
  // of its qubits, i.e. every Pauli string compatible with it.
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  Eigen::MatrixXi hits = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t s = 0; s < dataset.counts.size(); ++s) {
    const std::string bases = MeasurementSetting::from_index(s, n).bases();
    std::size_t x_of = 0, z_of = 0;
    for (int q = 0; q < n; ++q) {
      const std::size_t bit = std::size_t{1} << (n - 1 - q);
      if (bases[static_cast<std::size_t>(q)] != 'Z') x_of |= bit;
      if (bases[static_cast<std::size_t>(q)] != 'X') z_of |= bit;
    }
    Eigen::VectorXd w = dataset.frequencies(s);
    walsh_hadamard(w);
    for (std::size_t subset = 0; subset < d; ++subset) {
      const auto x = static_cast<Eigen::Index>(subset & x_of), z = static_cast<Eigen::Index>(subset & z_of);
      sums(x, z) += w(static_cast<Eigen::Index>(subset));
      hits(x, z) += 1;
    }
  }

  const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t z = 0; z < d; ++z) {
      const int h = hits(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(z));
      const double coeff = sums(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(z)) / h;
      if (coeff == 0.0) continue;
      const std::complex<double> phase = i_pow[std::popcount(x & z) % 4] * coeff;
      // P |j> = i^{#Y} (-1)^{|j & z|} |j ^ x>
      for (std::size_t j = 0; j < d; ++j)
        rho(static_cast<Eigen::Index>(j ^ x), static_cast<Eigen::Index>(j)) +=
            (std::popcount(j & z) & 1) ? -phase : phase;
    }
  rho /= static_cast<double>(d);
  return HermitianEstimate((rho + rho.adjoint()) / 2.0);
}

Eigen::VectorXd project_spectrum(const Eigen::VectorXd& spectrum) {
  const auto d = spectrum.size();
  if (d == 0) throw ValidationError("project_spectrum: empty spectrum");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return spectrum(a) > spectrum(b); });

  // Restore unit trace first so the truncation lands on the simplex.
  const double shift = (1.0 - spectrum.sum()) / static_cast<double>(d);
  Eigen::VectorXd l(d);
  for (Eigen::Index i = 0; i < d; ++i) l(i) = spectrum(order[static_cast<std::size_t>(i)]) + shift;

  double removed = 0.0;
  Eigen::Index i = d - 1;
  while (i >= 0 && l(i) + removed / static_cast<double>(i + 1) < 0.0) {
    removed += l(i);
    l(i) = 0.0;
    --i;
  }
  for (Eigen::Index j = 0; j <= i; ++j) l(j) += removed / static_cast<double>(i + 1);

  Eigen::VectorXd out(d);
  for (Eigen::Index k = 0; k < d; ++k) out(order[static_cast<std::size_t>(k)]) = l(k);
  return out;
}

DensityMatrix mle_project(const HermitianEstimate& estimate) {
  const auto eig = hermitian_eigen(estimate);
  const Eigen::VectorXd projected = project_spectrum(eig.eigenvalues);
  Eigen::MatrixXcd rho = eig.eigenvectors * projected.cast<std::complex<double>>().asDiagonal() * eig.eigenvectors.adjoint();
  rho = (rho + rho.adjoint()) / 2.0;
  rho /= rho.trace().real();
  return DensityMatrix::trusted(std::move(rho));
}

DensityMatrix reconstruct(const TomographyDataset& dataset) { return mle_project(linear_inversion(dataset)); }

std::vector<DensityMatrix> bootstrap(const TomographyDataset& dataset, int trials, std::uint64_t seed, int threads) {
  dataset.validate();
  if (trials < 2) throw ValidationError("bootstrap: trials must be at least 2");
  if (dataset.exact()) throw ValidationError("bootstrap: requires a finite-shot dataset");
  std::vector<std::optional<DensityMatrix>> out(static_cast<std::size_t>(trials));
  parallel_for(
      out.size(),
      [&](std::size_t t) {
        TomographyDataset resampled = dataset;
        resampled.seed = seed;
        for (std::size_t s = 0; s < dataset.counts.size(); ++s) {
          auto rng = substream(seed, {1, t, s});
          resampled.counts[s] = sample_multinomial(dataset.frequencies(s), dataset.shots_per_setting, rng);
        }
        out[t] = reconstruct(resampled);
      },
      threads);
  std::vector<DensityMatrix> ensemble;
  ensemble.reserve(out.size());
  for (auto& m : out) ensemble.push_back(std::move(*m));
  return ensemble;
}

ScalarFunctional fidelity_functional(const PureState& target) {
  return {"fidelity", [target](const DensityMatrix& rho) { return fidelity_pure(rho, target); }};
}

ScalarFunctional purity_functional() {
  return {"purity", [](const DensityMatrix& rho) { return purity(rho); }};
}

ScalarFunctional coherence_functional() {
  return {"coherence", [](const DensityMatrix& rho) { return coherence(partial_trace(rho, {kSystemQubit})); }};
}

ScalarFunctional mutual_info_functional(const Fragment& fragment) {
  return {"mutual_info(" + fragment.label() + ")",
          [fragment](const DensityMatrix& rho) { return mutual_information(rho, fragment); }};
}

ScalarFunctional holevo_functional(const Fragment& fragment, const HolevoOptions& opts) {
  return {"holevo(" + fragment.label() + ")",
          [fragment, opts](const DensityMatrix& rho) { return holevo_bound(rho, fragment, opts).bits; }};
}

std::string ErrorBar::format() const {
  int decimals = 3;
  if (stddev > 0.0) decimals = std::clamp(static_cast<int>(std::ceil(-std::log10(stddev))), 3, 9);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.*f ± %.*f", decimals, mean, decimals, stddev);
  return buf;
}

ErrorBar scalar_errorbar(const std::vector<DensityMatrix>& ensemble, const ScalarFunctional& functional) {
  if (ensemble.empty()) throw ValidationError("scalar_errorbar: ensemble is empty");
  std::vector<double> values;
  values.reserve(ensemble.size());
  for (const auto& rho : ensemble) values.push_back(functional.evaluate(rho));
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
  return {mean, sd};
}

}  // namespace qdarwin
