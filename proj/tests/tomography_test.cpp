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

#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qdarwin/darwinism.hpp"
#include "qdarwin/tomography.hpp"

namespace qdarwin {
namespace {

using oracle::cd;
using oracle::Mat;

Mat pauli(char c) {
  Mat p(2, 2);
  switch (c) {
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, cd(0, -1), cd(0, 1), 0; break;
    case 'Z': p << 1, 0, 0, -1; break;
    default: p = Mat::Identity(2, 2);
  }
  return p;
}

Mat pauli_string(const std::string& s) {
  Mat out = Mat::Identity(1, 1);
  for (char c : s) out = kron(out, pauli(c));
  return out;
}

/// Outcome distribution from the eigenprojectors of each qubit's Pauli.
Eigen::VectorXd oracle_probabilities(const Mat& rho, const std::string& setting) {
  const auto n = setting.size();
  Eigen::VectorXd p(1 << n);
  for (int j = 0; j < (1 << n); ++j) {
    Mat proj = Mat::Identity(1, 1);
    for (std::size_t q = 0; q < n; ++q) {
      const int b = (j >> (n - 1 - q)) & 1;
      proj = kron(proj, Mat((Mat::Identity(2, 2) + (b ? -1.0 : 1.0) * pauli(setting[q])) / 2.0));
    }
    p(j) = (proj * rho).trace().real();
  }
  return p;
}

TEST(Settings, LexicographicBaseThree) {
  EXPECT_EQ(MeasurementSetting::from_index(0, 2).bases(), "XX");
  EXPECT_EQ(MeasurementSetting::from_index(1, 2).bases(), "XY");
  EXPECT_EQ(MeasurementSetting::from_index(5, 2).bases(), "YZ");
  EXPECT_EQ(MeasurementSetting::from_index(8, 2).bases(), "ZZ");
  const auto all = pauli_settings(3);
  ASSERT_EQ(all.size(), 27U);
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i].index(), i);
  EXPECT_THROW(MeasurementSetting("XQ"), ValidationError);
  EXPECT_THROW(MeasurementSetting::from_index(9, 2), ValidationError);
  EXPECT_THROW(pauli_settings(0), ValidationError);
  EXPECT_THROW(pauli_settings(9), ValidationError);
}

TEST(ExactProbabilities, MatchEigenprojectorOracle) {
  std::mt19937_64 rng(41);
  const DensityMatrix rho(oracle::random_density(8, 3, rng));
  for (const auto& s : pauli_settings(3)) {
    const auto p = exact_probabilities(rho, s);
    EXPECT_LT((p - oracle_probabilities(rho.matrix(), s.bases())).norm(), 1e-13) << s.bases();
    EXPECT_NEAR(p.sum(), 1.0, 1e-13);
  }
}

TEST(Multinomial, CountsSumAndRespectZeros) {
  auto rng = substream(5, {0, 0});
  Eigen::VectorXd p(4);
  p << 0.5, 0.0, 0.3, 0.2;
  Eigen::VectorXd total = Eigen::VectorXd::Zero(4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = sample_multinomial(p, 1000, rng);
    EXPECT_EQ(c.sum(), 1000.0);
    EXPECT_EQ(c(1), 0.0);
    total += c;
  }
  EXPECT_NEAR(total(0) / 200000, 0.5, 0.01);
  EXPECT_NEAR(total(3) / 200000, 0.2, 0.01);
  Eigen::VectorXd last_zero(3);
  last_zero << 0.4, 0.6, 0.0;
  EXPECT_EQ(sample_multinomial(last_zero, 50, rng)(2), 0.0);
  EXPECT_THROW(sample_multinomial(Eigen::VectorXd::Zero(2), 5, rng), ValidationError);
}

TEST(Substream, KeysSelectIndependentStreams) {
  auto a = substream(1, {0, 3});
  auto b = substream(1, {0, 3});
  auto c = substream(1, {0, 4});
  auto d = substream(2, {0, 3});
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

TEST(Dataset, SamplingIsThreadInvariant) {
  std::mt19937_64 rng(42);
  const DensityMatrix rho(oracle::random_density(8, 2, rng));
  const auto one = sample_dataset(rho, 300, 9, 1);
  const auto four = sample_dataset(rho, 300, 9, 4);
  ASSERT_EQ(one.counts.size(), four.counts.size());
  for (std::size_t s = 0; s < one.counts.size(); ++s) EXPECT_EQ(one.counts[s], four.counts[s]);
  EXPECT_NO_THROW(one.validate());
  EXPECT_THROW(sample_dataset(rho, 0, 9), ValidationError);
}

TEST(Dataset, ValidationCatchesCorruptCounts) {
  const auto ds = sample_dataset(DensityMatrix::maximally_mixed(2), 100, 1);
  auto bad = ds;
  bad.counts[3](0) += 1;
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = ds;
  bad.counts[3](0) = -1;
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = ds;
  bad.counts.pop_back();
  EXPECT_THROW(bad.validate(), ValidationError);
  auto exact = exact_dataset(DensityMatrix::maximally_mixed(2));
  exact.counts[0](0) += 0.1;
  EXPECT_THROW(exact.validate(), ValidationError);
}

TEST(LinearInversion, PauliExpectationsMatchTrace) {
  std::mt19937_64 rng(43);
  const DensityMatrix rho(oracle::random_density(8, 2, rng));
  const auto ds = exact_dataset(rho);
  for (const std::string s : {"III", "XIZ", "YYY", "ZXY", "IIZ", "XYZ"})
    EXPECT_NEAR(pauli_expectation(ds, s), (pauli_string(s) * rho.matrix()).trace().real(), 1e-12) << s;
  EXPECT_THROW(pauli_expectation(ds, "XX"), ValidationError);
  EXPECT_THROW(pauli_expectation(ds, "XXA"), ValidationError);
}

TEST(LinearInversion, AgreesWithDirectPauliSum) {
  std::mt19937_64 rng(44);
  const DensityMatrix rho(oracle::random_density(4, 2, rng));
  const auto ds = sample_dataset(rho, 50, 3);
  Mat direct = Mat::Zero(4, 4);
  for (const std::string a : {"I", "X", "Y", "Z"})
    for (const std::string b : {"I", "X", "Y", "Z"}) direct += pauli_expectation(ds, a + b) * pauli_string(a + b);
  direct /= 4.0;
  EXPECT_LT((linear_inversion(ds).matrix() - direct).norm(), 1e-12);
}

TEST(Reconstruction, ExactModeRoundtrip) {
  std::mt19937_64 rng(45);
  for (int n = 1; n <= 4; ++n) {
    const DensityMatrix rho(oracle::random_density(1 << n, 1 + n % 3, rng));
    EXPECT_LT((reconstruct(exact_dataset(rho)).matrix() - rho.matrix()).norm(), 1e-9) << n;
  }
}

TEST(Projection, SpectrumMatchesSimplexOracle) {
  std::mt19937_64 rng(46);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd v(2 + trial % 7);
    for (auto& x : v) x = g(rng);
    v.array() += (1 - v.sum()) / static_cast<double>(v.size());
    const auto got = project_spectrum(v);
    EXPECT_LT((got - oracle::simplex_projection(v)).norm(), 1e-12);
    EXPECT_NEAR(got.sum(), 1.0, 1e-12);
    EXPECT_GE(got.minCoeff(), 0.0);
  }
}

TEST(Projection, MatrixMatchesBruteForceNearestDensity) {
  std::mt19937_64 rng(47);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = trial % 2 ? 2 : 4;
    Mat h = oracle::random_density(dim, dim, rng);
    Mat noise(dim, dim);
    for (Eigen::Index i = 0; i < noise.size(); ++i) noise.data()[i] = {g(rng), g(rng)};
    noise = (noise + noise.adjoint().eval()) * 0.4;
    noise.diagonal().array() -= noise.trace() / double(dim);
    h += noise;
    EXPECT_LT(oracle::frobenius(mle_project(HermitianEstimate(h)).matrix(), oracle::nearest_density(h)), 1e-9);
  }
}

TEST(Projection, PhysicalInputIsFixedPoint) {
  std::mt19937_64 rng(48);
  const Mat rho = oracle::random_density(4, 4, rng);
  EXPECT_LT(oracle::frobenius(mle_project(HermitianEstimate(rho)).matrix(), rho), 1e-12);
}

TEST(Reconstruction, SeededGhzFidelityFixture) {
  const PureState ghz = build_darwinism_state<double>(preset("theta_A"));
  const double f = fidelity_functional(ghz).evaluate(reconstruct(sample_dataset(to_density(ghz), 700, 2024)));
  EXPECT_EQ(f, 0x1.f0b237b734e09p-1);
  EXPECT_GE(f, 0.95);
}

TEST(Bootstrap, DeterministicAcrossThreadsAndValidated) {
  std::mt19937_64 rng(49);
  const DensityMatrix rho(oracle::random_density(8, 1, rng));
  const auto ds = sample_dataset(rho, 200, 5);
  const auto a = bootstrap(ds, 12, 6, 1);
  const auto b = bootstrap(ds, 12, 6, 3);
  ASSERT_EQ(a.size(), 12U);
  for (std::size_t t = 0; t < a.size(); ++t) EXPECT_EQ(a[t].matrix(), b[t].matrix());
  const auto c = bootstrap(ds, 12, 7, 1);
  EXPECT_NE(a[0].matrix(), c[0].matrix());
  EXPECT_THROW(bootstrap(ds, 1, 6), ValidationError);
  EXPECT_THROW(bootstrap(exact_dataset(rho), 10, 6), ValidationError);
}

TEST(ErrorBars, SampleStdAndFormatting) {
  const ScalarFunctional first_entry{"p00", [](const DensityMatrix& r) { return r(0, 0).real(); }};
  std::vector<DensityMatrix> ens;
  for (double p : {0.2, 0.4, 0.6}) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = p;
    m(1, 1) = 1 - p;
    ens.emplace_back(m);
  }
  const auto eb = scalar_errorbar(ens, first_entry);
  EXPECT_NEAR(eb.mean, 0.4, 1e-15);
  EXPECT_NEAR(eb.stddev, 0.2, 1e-15);
  EXPECT_EQ(eb.format(), "0.400 ± 0.200");
  EXPECT_EQ((ErrorBar{0.97011, 0.00077}).format(), "0.9701 ± 0.0008");
  EXPECT_EQ(scalar_errorbar({ens[0]}, first_entry).stddev, 0.0);
  EXPECT_THROW(scalar_errorbar({}, first_entry), ValidationError);
}

TEST(Functionals, ValuesOnKnownStates) {
  const PureState ghz = build_darwinism_state<double>(preset("theta_A"));
  const auto rho = to_density(ghz);
  EXPECT_NEAR(fidelity_functional(ghz).evaluate(rho), 1.0, 1e-12);
  EXPECT_NEAR(purity_functional().evaluate(rho), 1.0, 1e-12);
  EXPECT_NEAR(coherence_functional().evaluate(rho), 0.0, 1e-12);
  EXPECT_NEAR(mutual_info_functional(Fragment({2, 3})).evaluate(rho), 1.0, 1e-12);
  EXPECT_NEAR(holevo_functional(Fragment({2}), {16, 20, 1e-6}).evaluate(rho), 1.0, 1e-9);
}

TEST(Properties, ProjectionOutputIsPhysical) {
  std::mt19937_64 rng(50);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 << (trial % 3);
    Mat h = oracle::random_density(dim, 1 + trial % dim, rng);
    Mat noise(dim, dim);
    for (Eigen::Index i = 0; i < noise.size(); ++i) noise.data()[i] = {g(rng), g(rng)};
    noise = (noise + noise.adjoint().eval()) * 0.2;
    noise.diagonal().array() -= noise.trace() / double(dim);
    const auto rho = mle_project(HermitianEstimate(h + noise));
    EXPECT_GE(hermitian_eigen(rho.matrix()).eigenvalues.minCoeff(), -1e-12);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-9);
  }
}

TEST(Properties, LinearInversionIsLinear) {
  std::mt19937_64 rng(51);
  const DensityMatrix a(oracle::random_density(8, 1, rng)), b(oracle::random_density(8, 3, rng));
  const DensityMatrix mix(Mat((a.matrix() + b.matrix()) / 2.0));
  auto da = exact_dataset(a), db = exact_dataset(b);
  TomographyDataset avg = da;
  for (std::size_t s = 0; s < avg.counts.size(); ++s) avg.counts[s] = (da.counts[s] + db.counts[s]) / 2.0;
  const Mat lhs = linear_inversion(avg).matrix();
  const Mat rhs = (linear_inversion(da).matrix() + linear_inversion(db).matrix()) / 2.0;
  EXPECT_LT((lhs - rhs).norm(), 1e-12);
  EXPECT_LT((lhs - mix.matrix()).norm(), 1e-12);
}

TEST(Properties, FidelityImprovesWithShots) {
  std::mt19937_64 rng(52);
  const PureState target(oracle::random_pure(8, rng));
  const auto rho = to_density(target);
  const auto fid = fidelity_functional(target);
  std::vector<double> shots, fids;
  for (int s : {100, 700, 5000})
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      shots.push_back(s);
      fids.push_back(fid.evaluate(reconstruct(sample_dataset(rho, s, 1000 + seed))));
    }
  auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double below = 0, equal = 0;
      for (double w : v) {
        below += w < v[i];
        equal += w == v[i];
      }
      r[i] = below + (equal + 1) / 2;
    }
    return r;
  };
  const auto rs = ranks(shots), rf = ranks(fids);
  const double n = static_cast<double>(rs.size());
  const double ms = std::accumulate(rs.begin(), rs.end(), 0.0) / n, mf = std::accumulate(rf.begin(), rf.end(), 0.0) / n;
  double cov = 0, vs = 0, vf = 0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    cov += (rs[i] - ms) * (rf[i] - mf);
    vs += (rs[i] - ms) * (rs[i] - ms);
    vf += (rf[i] - mf) * (rf[i] - mf);
  }
  EXPECT_GT(cov / std::sqrt(vs * vf), 0.0);
}

}  // namespace
}  // namespace qdarwin
