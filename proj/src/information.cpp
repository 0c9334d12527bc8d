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

#include "qdarwin/information.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace qdarwin {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroProbability = 1e-12;
constexpr double kDiscordSlack = 1e-4;

std::vector<int> with_system(const Fragment& fragment) {
  std::vector<int> keep{kSystemQubit};
  keep.insert(keep.end(), fragment.members().begin(), fragment.members().end());
  return keep;
}

/// rho_SF split into 2x2 blocks over the system qubit. A system measurement
/// outcome |m> leaves the fragment in sum_ab conj(m_a) m_b B_ab (unnormalized).
class SystemFragmentBlocks {
 public:
  SystemFragmentBlocks(const DensityMatrix& rho, const Fragment& fragment)
      : rho_sf_(partial_trace(rho, with_system(fragment))) {
    const auto k = rho_sf_.dim() / 2;
    const auto& m = rho_sf_.matrix();
    blocks_[0][0] = m.topLeftCorner(k, k);
    blocks_[0][1] = m.topRightCorner(k, k);
    blocks_[1][0] = m.bottomLeftCorner(k, k);
    blocks_[1][1] = m.bottomRightCorner(k, k);
    fragment_marginal_ = blocks_[0][0] + blocks_[1][1];
    fragment_entropy_ = spectral_entropy(eigenvalues_unchecked<double>(fragment_marginal_));
  }

  const DensityMatrix& system_fragment() const { return rho_sf_; }
  const Eigen::MatrixXcd& fragment_marginal() const { return fragment_marginal_; }
  double fragment_entropy() const { return fragment_entropy_; }

  Eigen::MatrixXcd unnormalized_conditional(const Eigen::Vector2cd& ket) const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(fragment_marginal_.rows(), fragment_marginal_.cols());
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out += (std::conj(ket(a)) * ket(b)) * blocks_[a][b];
    return (out + out.adjoint()) / 2.0;
  }

  /// Holevo quantity of the ensemble induced by `basis`.
  double holevo(const MeasurementBasis& basis) const {
    const Eigen::MatrixXcd c0 = unnormalized_conditional(basis.ket(0));
    const double p0 = c0.trace().real();
    const double p1 = 1.0 - p0;
    if (p0 < kZeroProbability || p1 < kZeroProbability) {
      // Only one outcome survives: its conditional state is the whole mixture.
      return 0.0;
    }
    const Eigen::MatrixXcd c1 = fragment_marginal_ - c0;
    const double h0 = spectral_entropy(eigenvalues_unchecked<double>(Eigen::MatrixXcd(c0 / p0)));
    const double h1 = spectral_entropy(eigenvalues_unchecked<double>(Eigen::MatrixXcd(c1 / p1)));
    return std::max(0.0, fragment_entropy_ - p0 * h0 - p1 * h1);
  }

 private:
  DensityMatrix rho_sf_;
  std::array<std::array<Eigen::MatrixXcd, 2>, 2> blocks_;
  Eigen::MatrixXcd fragment_marginal_;
  double fragment_entropy_ = 0.0;
};

struct Vertex {
  double theta, phi, value;
};

/// Maximizes the basis objective: coarse grid, then a 2-D Nelder-Mead simplex
/// seeded at the best grid point.
HolevoResult maximize_holevo(const SystemFragmentBlocks& blocks, const HolevoOptions& opts) {
  if (opts.grid_size < 8) throw ValidationError("holevo_bound: grid_size must be at least 8");
  if (opts.refine_iters < 0) throw ValidationError("holevo_bound: refine_iters must be nonnegative");

  int evals = 0;
  auto f = [&](double theta, double phi) {
    ++evals;
    return blocks.holevo(MeasurementBasis::canonical(theta, phi));
  };

  const int g = opts.grid_size;
  const double d_theta = kPi / (g - 1);
  const double d_phi = kPi / g;
  Vertex best{0.0, 0.0, -1.0};
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const double theta = i * d_theta, phi = j * d_phi;
      const double v = f(theta, phi);
      if (v > best.value) best = {theta, phi, v};
    }
  if (opts.refine_iters == 0) return {best.value, MeasurementBasis::canonical(best.theta, best.phi), evals};

  std::array<Vertex, 3> s{best, Vertex{best.theta + d_theta, best.phi, 0.0}, Vertex{best.theta, best.phi + d_phi, 0.0}};
  s[1].value = f(s[1].theta, s[1].phi);
  s[2].value = f(s[2].theta, s[2].phi);

  auto at = [&](double t, const Vertex& from, const Vertex& to) {
    Vertex v{from.theta + t * (to.theta - from.theta), from.phi + t * (to.phi - from.phi), 0.0};
    v.value = f(v.theta, v.phi);
    return v;
  };

  for (int iter = 0; iter < opts.refine_iters; ++iter) {
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.value > b.value; });
    double spread = 0.0;
    for (int k = 1; k < 3; ++k) spread = std::max({spread, std::abs(s[k].theta - s[0].theta), std::abs(s[k].phi - s[0].phi)});
    if (spread < opts.step_tolerance) break;

    const Vertex centroid{(s[0].theta + s[1].theta) / 2, (s[0].phi + s[1].phi) / 2, 0.0};
    const Vertex reflected = at(-1.0, centroid, s[2]);
    if (reflected.value > s[0].value) {
      const Vertex expanded = at(-2.0, centroid, s[2]);
      s[2] = expanded.value > reflected.value ? expanded : reflected;
    } else if (reflected.value > s[1].value) {
      s[2] = reflected;
    } else {
      const bool outside = reflected.value > s[2].value;
      const Vertex contracted = at(outside ? -0.5 : 0.5, centroid, s[2]);
      if (contracted.value > (outside ? reflected.value : s[2].value)) {
        s[2] = contracted;
      } else {
        s[1] = at(0.5, s[0], s[1]);
        s[2] = at(0.5, s[0], s[2]);
      }
    }
  }
  for (const auto& v : s)
    if (v.value > best.value) best = v;

  return {best.value, MeasurementBasis::canonical(best.theta, best.phi), evals};
}

double entropy_of(const DensityMatrix& rho) { return von_neumann_entropy(rho); }

/// Resolves optimizer slack between I and chi so that D = I - chi >= 0.
void settle_discord(FragmentCorrelation& row) {
  const double raw = row.mutual_info - row.holevo;
  if (raw < -kDiscordSlack)
    throw NumericError("discord of fragment " + row.fragment.label() + " is " + std::to_string(raw) +
                       " bits, below the -1e-4 tolerance");
  if (raw < 0.0) row.holevo = row.mutual_info;
  row.discord = row.mutual_info - row.holevo;
}

}  // namespace

MeasurementBasis MeasurementBasis::x() { return {kPi / 2, 0.0}; }

MeasurementBasis MeasurementBasis::canonical(double theta, double phi) {
  double t = std::fmod(theta, 2 * kPi);
  if (t < 0) t += 2 * kPi;
  if (t > kPi) {
    t = 2 * kPi - t;
    phi += kPi;
  }
  double p = std::fmod(phi, 2 * kPi);
  if (p < 0) p += 2 * kPi;
  if (p >= 2 * kPi) p = 0.0;
  return {t, p};
}

Eigen::Vector2cd MeasurementBasis::ket(int outcome) const {
  const double c = std::cos(theta_m / 2), s = std::sin(theta_m / 2);
  const std::complex<double> phase = std::polar(1.0, phi_m);
  Eigen::Vector2cd k;
  if (outcome == 0)
    k << c, phase * s;
  else
    k << s, -phase * c;
  return k;
}

double coherence(const DensityMatrix& rho_s) {
  if (rho_s.n_qubits() != 1) throw ValidationError("coherence: expected a single-qubit density matrix");
  const Eigen::Vector2d diag = rho_s.matrix().diagonal().real();
  return std::max(0.0, shannon_entropy(diag) - von_neumann_entropy(rho_s));
}

double mutual_information(const DensityMatrix& rho, const Fragment& fragment) {
  fragment.check_range(rho.n_qubits());
  const double i = entropy_of(partial_trace(rho, {kSystemQubit})) + entropy_of(partial_trace(rho, fragment.members())) -
                   entropy_of(partial_trace(rho, with_system(fragment)));
  return std::max(0.0, i);
}

ConditionalEnsemble conditional_ensemble(const DensityMatrix& rho, const Fragment& fragment,
                                         const MeasurementBasis& basis) {
  fragment.check_range(rho.n_qubits());
  const SystemFragmentBlocks blocks(rho, fragment);
  ConditionalEnsemble out;
  for (int s = 0; s < 2; ++s) {
    const Eigen::MatrixXcd c = blocks.unnormalized_conditional(basis.ket(s));
    const double p = std::max(0.0, c.trace().real());
    if (p < kZeroProbability)
      out.entries.push_back({p, DensityMatrix::maximally_mixed(fragment.size()), true});
    else
      out.entries.push_back({p, DensityMatrix::trusted(c / p), false});
  }
  return out;
}

double holevo_from_basis(const DensityMatrix& rho, const Fragment& fragment, const MeasurementBasis& basis) {
  fragment.check_range(rho.n_qubits());
  return SystemFragmentBlocks(rho, fragment).holevo(basis);
}

HolevoResult holevo_bound(const DensityMatrix& rho, const Fragment& fragment, const HolevoOptions& opts) {
  fragment.check_range(rho.n_qubits());
  return maximize_holevo(SystemFragmentBlocks(rho, fragment), opts);
}

FragmentCorrelation correlate(const DensityMatrix& rho, const Fragment& fragment, const HolevoOptions& opts) {
  fragment.check_range(rho.n_qubits());
  const SystemFragmentBlocks blocks(rho, fragment);
  const double h_s = entropy_of(partial_trace(blocks.system_fragment(), {1}));
  const double h_sf = entropy_of(blocks.system_fragment());
  const double info = std::max(0.0, h_s + blocks.fragment_entropy() - h_sf);
  const HolevoResult chi = maximize_holevo(blocks, opts);
  FragmentCorrelation row{fragment, info, chi.bits, 0.0, chi.argmax, chi.evaluations};
  settle_discord(row);
  return row;
}

double quantum_discord(const DensityMatrix& rho, const Fragment& fragment, const HolevoOptions& opts) {
  return correlate(rho, fragment, opts).discord;
}

std::vector<Fragment> enumerate_fragments(int n_env) {
  if (n_env < 1 || n_env > 16) throw ValidationError("enumerate_fragments: n_env must lie in [1, 16]");
  std::vector<std::vector<int>> subsets;
  for (std::uint32_t mask = 1; mask < (1U << n_env); ++mask) {
    std::vector<int> members;
    for (int i = 0; i < n_env; ++i)
      if (mask & (1U << i)) members.push_back(i + 2);
    subsets.push_back(std::move(members));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Fragment> out;
  out.reserve(subsets.size());
  for (auto& m : subsets) out.emplace_back(std::move(m));
  return out;
}

CorrelationReport fragment_report(const DensityMatrix& rho, const std::vector<Fragment>& fragments,
                                  const HolevoOptions& opts, int threads) {
  if (rho.n_qubits() < 2) throw ValidationError("report: state needs a system and at least one environment qubit");
  for (const auto& f : fragments) f.check_range(rho.n_qubits());
  CorrelationReport report;
  const DensityMatrix rho_s = partial_trace(rho, {kSystemQubit});
  report.system_entropy = von_neumann_entropy(rho_s);
  report.classical_entropy = shannon_entropy(Eigen::Vector2d(rho_s.matrix().diagonal().real()));
  report.coherence = coherence(rho_s);

  std::vector<std::optional<FragmentCorrelation>> rows(fragments.size());
  parallel_for(fragments.size(), [&](std::size_t i) { rows[i] = correlate(rho, fragments[i], opts); }, threads);
  report.rows.reserve(rows.size());
  for (auto& r : rows) report.rows.push_back(std::move(*r));
  return report;
}

CorrelationReport full_report(const DensityMatrix& rho, const HolevoOptions& opts, int threads) {
  return fragment_report(rho, enumerate_fragments(rho.n_qubits() - 1), opts, threads);
}

std::vector<CurvePoint> partial_information_curve(const CorrelationReport& report) {
  int n_env = 0;
  for (const auto& row : report.rows) n_env = std::max(n_env, row.fragment.size());
  std::vector<CurvePoint> curve;
  std::vector<int> counts(static_cast<std::size_t>(n_env) + 1, 0);
  for (int k = 1; k <= n_env; ++k) curve.push_back({k, 0.0, 0.0, 0.0});
  for (const auto& row : report.rows) {
    auto& pt = curve[static_cast<std::size_t>(row.fragment.size() - 1)];
    pt.mutual_info += row.mutual_info;
    pt.holevo += row.holevo;
    pt.discord += row.discord;
    ++counts[static_cast<std::size_t>(row.fragment.size())];
  }
  for (auto& pt : curve) {
    const int c = counts[static_cast<std::size_t>(pt.size)];
    if (c == 0) throw ValidationError("partial_information_curve: report is missing fragments of size " + std::to_string(pt.size));
    pt.mutual_info /= c;
    pt.holevo /= c;
    pt.discord /= c;
  }
  return curve;
}

std::vector<CurvePoint> partial_information_curve(const DensityMatrix& rho, const HolevoOptions& opts, int threads) {
  return partial_information_curve(full_report(rho, opts, threads));
}

std::vector<double> mean_mutual_information_by_size(const DensityMatrix& rho) {
  const int n_env = rho.n_qubits() - 1;
  std::vector<double> sums(static_cast<std::size_t>(n_env), 0.0);
  std::vector<int> counts(static_cast<std::size_t>(n_env), 0);
  for (const auto& f : enumerate_fragments(n_env)) {
    sums[static_cast<std::size_t>(f.size() - 1)] += mutual_information(rho, f);
    ++counts[static_cast<std::size_t>(f.size() - 1)];
  }
  for (std::size_t k = 0; k < sums.size(); ++k) sums[k] /= counts[k];
  return sums;
}

std::vector<FragmentCorrelation> accumulation_curve(const DensityMatrix& rho, const std::vector<int>& order,
                                                    const HolevoOptions& opts, int threads) {
  const int n = rho.n_qubits();
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  bool permutation = static_cast<int>(sorted.size()) == n - 1;
  for (std::size_t i = 0; permutation && i < sorted.size(); ++i) permutation = sorted[i] == static_cast<int>(i) + 2;
  if (!permutation)
    throw ValidationError("accumulation_curve: order must be a permutation of environment qubits 2.." + std::to_string(n));

  std::vector<Fragment> prefixes;
  for (std::size_t len = 1; len <= order.size(); ++len)
    prefixes.emplace_back(std::vector<int>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(len)));
  return fragment_report(rho, prefixes, opts, threads).rows;
}

std::optional<int> redundancy(const std::vector<double>& mean_info_by_size, double system_entropy, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("redundancy: delta must lie in (0, 1)");
  if (system_entropy <= 1e-9) return std::nullopt;
  const double threshold = (1.0 - delta) * system_entropy;
  for (std::size_t k = 0; k < mean_info_by_size.size(); ++k)
    if (mean_info_by_size[k] >= threshold) return static_cast<int>(k) + 1;
  return std::nullopt;
}

std::optional<int> redundancy(const DensityMatrix& rho, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("redundancy: delta must lie in (0, 1)");
  return redundancy(mean_mutual_information_by_size(rho), von_neumann_entropy(partial_trace(rho, {kSystemQubit})),
                    delta);
}

}  // namespace qdarwin
