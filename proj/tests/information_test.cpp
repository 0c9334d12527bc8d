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

#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qdarwin/darwinism.hpp"
#include "qdarwin/information.hpp"

namespace qdarwin {
namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix theta_b() { return to_density(build_darwinism_state<double>(preset("theta_B"))); }

std::vector<int> random_subset(std::mt19937_64& rng, int n) {
  std::vector<int> out;
  while (out.empty())
    for (int q = 2; q <= n; ++q)
      if (rng() % 2) out.push_back(q);
  return out;
}

TEST(MeasurementBasis, CanonicalRangeAndSameProjectors) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double theta = u(rng), phi = u(rng);
    const auto c = MeasurementBasis::canonical(theta, phi);
    EXPECT_GE(c.theta_m, 0.0);
    EXPECT_LE(c.theta_m, kPi);
    EXPECT_GE(c.phi_m, 0.0);
    EXPECT_LT(c.phi_m, 2 * kPi);
    const MeasurementBasis raw{theta, phi};
    for (int m : {0, 1}) {
      const Eigen::Matrix2cd a = raw.ket(m) * raw.ket(m).adjoint();
      const Eigen::Matrix2cd b = c.ket(m) * c.ket(m).adjoint();
      EXPECT_LT((a - b).norm(), 1e-12);
    }
  }
}

TEST(MeasurementBasis, KetsAreOrthonormal) {
  const MeasurementBasis b{1.1, 2.3};
  EXPECT_NEAR(b.ket(0).norm(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(b.ket(0).dot(b.ket(1))), 0.0, 1e-15);
}

TEST(MutualInformation, MatchesOracleOnRandomStates) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const DensityMatrix rho(oracle::random_density(1 << n, 1 + trial % 4, rng));
    const auto f = random_subset(rng, n);
    EXPECT_NEAR(mutual_information(rho, Fragment(f)), oracle::mutual_information(rho.matrix(), f, n), 1e-10);
  }
}

TEST(MutualInformation, PartialRecordValues) {
  const auto rho = theta_b();
  const oracle::Mat big = oracle::projector(oracle::branch_state(preset("theta_B").alpha, preset("theta_B").beta,
                                                                 preset("theta_B").thetas_deg));
  const double i5 = oracle::mutual_information(big, {5}, 6);
  const double i6 = oracle::mutual_information(big, {6}, 6);
  const double i56 = oracle::mutual_information(big, {5, 6}, 6);
  EXPECT_NEAR(mutual_information(rho, Fragment({5})), i5, 1e-12);
  EXPECT_NEAR(mutual_information(rho, Fragment({6})), i6, 1e-12);
  EXPECT_NEAR(mutual_information(rho, Fragment({5, 6})), i56, 1e-12);
  // Frozen oracle outputs.
  EXPECT_NEAR(i5, 0.454538851472, 1e-11);
  EXPECT_NEAR(i6, 0.677018407129, 1e-11);
  EXPECT_NEAR(i56, 0.795018577009, 1e-11);
}

TEST(MutualInformation, RejectsFragmentOutsideRegister) {
  EXPECT_THROW(mutual_information(theta_b(), Fragment({7})), ValidationError);
}

TEST(Holevo, FixedBasisMatchesProjectorOracle) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const DensityMatrix rho(oracle::random_density(1 << n, 1 + trial % 3, rng));
    const auto f = random_subset(rng, n);
    const double theta = kPi * u(rng), phi = 2 * kPi * u(rng);
    EXPECT_NEAR(holevo_from_basis(rho, Fragment(f), {theta, phi}), oracle::holevo_at(rho.matrix(), f, n, theta, phi),
                1e-10);
  }
}

TEST(Holevo, ConditionalEnsembleSumsToReducedFragment) {
  std::mt19937_64 rng(24);
  const DensityMatrix rho(oracle::random_density(8, 2, rng));
  const Fragment f({2, 3});
  const auto ens = conditional_ensemble(rho, f, {0.7, 1.9});
  ASSERT_EQ(ens.entries.size(), 2U);
  Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(4, 4);
  double total = 0;
  for (const auto& e : ens.entries) {
    EXPECT_FALSE(e.placeholder);
    total += e.probability;
    mix += e.probability * e.state.matrix();
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_LT((mix - partial_trace(rho, {2, 3}).matrix()).norm(), 1e-12);
}

TEST(Holevo, ZeroProbabilityOutcomeIsPlaceholder) {
  const DensityMatrix rho = to_density(PureState::basis(2, 0));
  const auto ens = conditional_ensemble(rho, Fragment({2}), MeasurementBasis::z());
  EXPECT_NEAR(ens.entries[0].probability, 1.0, 1e-15);
  EXPECT_TRUE(ens.entries[1].placeholder);
  EXPECT_NEAR(holevo_from_basis(rho, Fragment({2}), MeasurementBasis::z()), 0.0, 1e-15);
}

TEST(Holevo, OptimizerBeatsDenseGridOracle) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 6; ++trial) {
    const DensityMatrix rho(oracle::random_density(8, 1 + trial % 3, rng));
    const std::vector<int> f = trial % 2 ? std::vector<int>{2} : std::vector<int>{2, 3};
    const auto res = holevo_bound(rho, Fragment(f));
    EXPECT_GE(res.bits, oracle::holevo_grid(rho.matrix(), f, 3, 41, 80) - 1e-9);
    EXPECT_NEAR(res.bits, holevo_from_basis(rho, Fragment(f), res.argmax), 1e-15);
    EXPECT_GE(res.evaluations, 64 * 64);
  }
}

TEST(Holevo, OptionsAreValidated) {
  const auto rho = theta_b();
  EXPECT_THROW(holevo_bound(rho, Fragment({5}), {4, 10, 1e-6}), ValidationError);
  EXPECT_THROW(holevo_bound(rho, Fragment({5}), {16, -1, 1e-6}), ValidationError);
  const auto grid_only = holevo_bound(rho, Fragment({5}), {16, 0, 1e-6});
  EXPECT_EQ(grid_only.evaluations, 16 * 16);
}

TEST(Discord, PropertiesOnRandomStates) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 2;
    const DensityMatrix rho(oracle::random_density(1 << n, 1 + trial % 4, rng));
    const Fragment f(random_subset(rng, n));
    const auto row = correlate(rho, f);
    EXPECT_GE(row.holevo, -1e-12);
    EXPECT_GE(row.discord, 0.0);
    EXPECT_EQ(row.discord, row.mutual_info - row.holevo);
    EXPECT_LE(row.holevo, von_neumann_entropy(partial_trace(rho, {1})) + 1e-9);
    EXPECT_LE(row.holevo, row.mutual_info + 1e-12);
  }
}

TEST(Discord, ClassicalStateHasNone) {
  // (|00><00| + |11><11|) / 2 carries only classical correlation.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = m(3, 3) = 0.5;
  const DensityMatrix rho(m);
  EXPECT_NEAR(quantum_discord(rho, Fragment({2})), 0.0, 1e-9);
  EXPECT_NEAR(mutual_information(rho, Fragment({2})), 1.0, 1e-12);
}

TEST(Discord, BellStateIsMaximal) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = v(3) = 1 / std::sqrt(2.0);
  const auto row = correlate(to_density(PureState(v)), Fragment({2}));
  EXPECT_NEAR(row.mutual_info, 2.0, 1e-12);
  EXPECT_NEAR(row.holevo, 1.0, 1e-9);
  EXPECT_NEAR(row.discord, 1.0, 1e-9);
}

TEST(Coherence, DiagonalAndPlusStates) {
  EXPECT_NEAR(coherence(DensityMatrix::maximally_mixed(1)), 0.0, 1e-15);
  Eigen::MatrixXcd plus = Eigen::MatrixXcd::Constant(2, 2, 0.5);
  EXPECT_NEAR(coherence(DensityMatrix(plus)), 1.0, 1e-12);
  EXPECT_THROW(coherence(DensityMatrix::maximally_mixed(2)), ValidationError);
}

TEST(Fragments, EnumerationOrder) {
  const auto frs = enumerate_fragments(3);
  ASSERT_EQ(frs.size(), 7U);
  const std::vector<std::string> labels{"2", "3", "4", "2-3", "2-4", "3-4", "2-3-4"};
  for (std::size_t i = 0; i < frs.size(); ++i) EXPECT_EQ(frs[i].label(), labels[i]);
  EXPECT_EQ(enumerate_fragments(5).size(), 31U);
  EXPECT_THROW(enumerate_fragments(0), ValidationError);
  EXPECT_THROW(enumerate_fragments(17), ValidationError);
}

TEST(Report, GhzRowsAndThreadInvariance) {
  const auto rho = to_density(build_darwinism_state<double>(preset("theta_A")));
  const HolevoOptions quick{16, 40, 1e-6};
  const auto one = full_report(rho, quick, 1);
  const auto four = full_report(rho, quick, 4);
  ASSERT_EQ(one.rows.size(), 31U);
  EXPECT_NEAR(one.system_entropy, 1.0, 1e-12);
  EXPECT_NEAR(one.classical_entropy, 1.0, 1e-12);
  for (std::size_t r = 0; r < one.rows.size(); ++r) {
    EXPECT_EQ(one.rows[r].fragment, four.rows[r].fragment);
    EXPECT_EQ(one.rows[r].mutual_info, four.rows[r].mutual_info);
    EXPECT_EQ(one.rows[r].holevo, four.rows[r].holevo);
    EXPECT_NEAR(one.rows[r].holevo, 1.0, 1e-6);
  }
  EXPECT_NEAR(one.rows.back().mutual_info, 2.0, 1e-9);
}

TEST(Report, PartialInformationCurveAveragesBySize) {
  const auto rho = theta_b();
  const HolevoOptions quick{16, 40, 1e-6};
  const auto report = full_report(rho, quick);
  const auto curve = partial_information_curve(report);
  ASSERT_EQ(curve.size(), 5U);
  const auto means = mean_mutual_information_by_size(rho);
  for (std::size_t k = 0; k < curve.size(); ++k) {
    EXPECT_EQ(curve[k].size, static_cast<int>(k) + 1);
    EXPECT_NEAR(curve[k].mutual_info, means[k], 1e-12);
    EXPECT_NEAR(curve[k].discord, curve[k].mutual_info - curve[k].holevo, 1e-12);
  }
  // Mean singleton information (frozen oracle value).
  double oracle_mean = 0;
  const oracle::Mat big = rho.matrix();
  for (int q = 2; q <= 6; ++q) oracle_mean += oracle::mutual_information(big, {q}, 6) / 5;
  EXPECT_NEAR(means[0], oracle_mean, 1e-12);
  EXPECT_NEAR(oracle_mean, 0.826311451720, 1e-6);
}

TEST(Report, AccumulationCurveValidatesOrder) {
  const auto rho = theta_b();
  EXPECT_THROW(accumulation_curve(rho, {2, 3, 4, 5}), ValidationError);
  EXPECT_THROW(accumulation_curve(rho, {2, 3, 4, 5, 5}), ValidationError);
  EXPECT_THROW(accumulation_curve(rho, {1, 3, 4, 5, 6}), ValidationError);
  const auto rows = accumulation_curve(rho, {6, 5, 4, 3, 2}, {16, 20, 1e-6});
  EXPECT_EQ(rows[1].fragment.label(), "5-6");
}

TEST(Redundancy, PresetsAndEdgeCases) {
  EXPECT_EQ(redundancy(to_density(build_darwinism_state<double>(preset("theta_A")))), 1);
  EXPECT_EQ(redundancy(theta_b(), 0.3), 1);
  EXPECT_EQ(redundancy(theta_b(), 0.1), 2);
  EXPECT_FALSE(redundancy(to_density(PureState::basis(3, 0))).has_value());
  EXPECT_THROW(redundancy(theta_b(), 0.0), ValidationError);
  EXPECT_THROW(redundancy(theta_b(), 1.0), ValidationError);
  EXPECT_EQ(redundancy({0.1, 0.5, 0.9}, 1.0, 0.3), 3);
  EXPECT_FALSE(redundancy({0.1, 0.5}, 1.0, 0.3).has_value());
}

TEST(MutualInformation, MonotoneUnderInclusionOnNoisyStates) {
  std::mt19937_64 rng(27);
  const auto psi = build_darwinism_state<double>(preset("theta_B"));
  const auto rho = apply_noise(psi, NoiseSpec::dephasing_to_purity(0.7));
  for (int trial = 0; trial < 100; ++trial) {
    auto large = random_subset(rng, 6);
    auto small = large;
    small.erase(small.begin() + static_cast<std::ptrdiff_t>(rng() % small.size()));
    if (small.empty()) continue;
    EXPECT_LE(mutual_information(rho, Fragment(small)), mutual_information(rho, Fragment(large)) + 1e-9);
  }
}

DarwinismConfig random_config(std::mt19937_64& rng, int n_env) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DarwinismConfig cfg;
  const double w = std::sqrt(u(rng));
  cfg.alpha = std::polar(w, 6.0 * u(rng));
  cfg.beta = std::polar(std::sqrt(1 - w * w), 6.0 * u(rng));
  cfg.thetas_deg.resize(static_cast<std::size_t>(n_env));
  for (auto& t : cfg.thetas_deg) t = 180.0 * u(rng);
  return cfg;
}

TEST(Properties, MonotoneUnderInclusionOnRandomDarwinismStates) {
  std::mt19937_64 rng(28);
  for (int trial = 0; trial < 10; ++trial) {
    const auto cfg = random_config(rng, 4);
    const auto rho = apply_noise(build_darwinism_state<double>(cfg), NoiseSpec::depolarizing(0.1 * trial));
    for (int pair = 0; pair < 10; ++pair) {
      auto large = random_subset(rng, 5);
      auto small = large;
      small.erase(small.begin() + static_cast<std::ptrdiff_t>(rng() % small.size()));
      if (small.empty()) continue;
      EXPECT_LE(mutual_information(rho, Fragment(small)), mutual_information(rho, Fragment(large)) + 1e-9);
    }
  }
}

TEST(Properties, HolevoBoundsAndDiscordIdentity) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 8; ++trial) {
    const auto cfg = random_config(rng, 3);
    const auto rho = apply_noise(build_darwinism_state<double>(cfg), NoiseSpec::dephasing(0.12 * trial));
    for (const auto& f : enumerate_fragments(3)) {
      const auto row = correlate(rho, f, {16, 60, 1e-6});
      EXPECT_GE(row.holevo, -1e-12);
      EXPECT_LE(row.holevo, std::min(row.mutual_info, 1.0) + 1e-6);
      EXPECT_NEAR(row.discord, row.mutual_info - row.holevo, 1e-9);
      EXPECT_GE(row.discord, -1e-6);
    }
  }
}

TEST(Properties, PureGlobalStateFullEnvironmentDoublesEntropy) {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 10; ++trial) {
    const auto cfg = random_config(rng, 1 + trial % 5);
    const auto rho = to_density(build_darwinism_state<double>(cfg));
    std::vector<int> env;
    for (int q = 2; q <= cfg.n_qubits(); ++q) env.push_back(q);
    EXPECT_NEAR(mutual_information(rho, Fragment(env)), 2 * von_neumann_entropy(partial_trace(rho, {1})), 1e-9);
  }
}

TEST(Properties, FinerGridNeverLosesHolevo) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    const DensityMatrix rho(oracle::random_density(8, 1 + trial % 3, rng));
    const Fragment f(trial % 2 ? std::vector<int>{2, 3} : std::vector<int>{3});
    double previous = -1;
    for (int g : {8, 16, 32, 64}) {
      const double chi = holevo_bound(rho, f, {g, 200, 1e-6}).bits;
      EXPECT_GE(chi, previous - 1e-9) << g;
      previous = chi;
    }
  }
}

TEST(Properties, CoherenceVanishesWithAPerfectRecord) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    auto cfg = random_config(rng, 3);
    cfg.thetas_deg[static_cast<std::size_t>(trial % 3)] = 180.0;
    const auto rho_s = partial_trace(to_density(build_darwinism_state<double>(cfg)), {1});
    EXPECT_NEAR(coherence(rho_s), 0.0, 1e-9);
    const double pa = std::norm(cfg.alpha);
    EXPECT_NEAR(coherence(rho_s), oracle::entropy_of({pa, 1 - pa}) - von_neumann_entropy(rho_s), 1e-12);
  }
}

TEST(Properties, ClassicalPartNeverExceedsSystemEntropy) {
  const auto report = full_report(theta_b(), {16, 60, 1e-6});
  for (const auto& row : report.rows) {
    EXPECT_LE(row.holevo, report.system_entropy + 1e-6) << row.fragment.label();
    EXPECT_LE(row.mutual_info - report.system_entropy, row.discord + 1e-6) << row.fragment.label();
  }
}

}  // namespace
}  // namespace qdarwin
