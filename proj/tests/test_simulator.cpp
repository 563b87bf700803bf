// Copyright 2026 The paritysim Authors
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

#include <gtest/gtest.h>

#include <cmath>

#include "closed_forms.hpp"
#include "paritysim/analytics.hpp"
#include "paritysim/rng.hpp"
#include "paritysim/simulator.hpp"

namespace paritysim {
namespace {

constexpr double kPhi = 0.9 * kPi;

ProtocolConfig ideal(double phi, int n) {
  ProtocolConfig c;
  c.phi = phi;
  c.n = n;
  return c;
}

TEST(ExactOutput, NormalizedAndIdealAtPi) {
  const PureState psi = haar_random_state(4, 8);
  const ExactOutput out = exact_output(ideal(kPi, 3), outer(psi));
  EXPECT_NEAR(out.rho_out.trace(), 1.0, 1e-12);
  EXPECT_EQ(out.outcome_probs.size(), 4u);
  EXPECT_LT(max_abs(Matrix(out.rho_out.matrix() - parity_split(psi).ideal_output().matrix())), 1e-14);
  EXPECT_LT(out.error_probability, 1e-30);
}

TEST(ExactOutput, ConvergesToIdealWithCycles) {
  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const PureState psi = haar_random_state(4, rng);
    const ParitySplit split = parity_split(psi);
    const ExactOutput out = exact_output(ideal(kPhi, 8), outer(psi));
    EXPECT_GE(rank2_fidelity(split, out.rho_out), 1.0 - 1e-8);
  }
}

TEST(ExactOutput, BasisCoefficientsMatchClosedForms) {
  ProtocolConfig c = ideal(kPhi, 3);
  c.noise = NoiseModel::pauli_y_between(0.05);
  const ErrorCoefficients exact = exact_error_coefficients(c);
  const auto want = oracle::pauli_y(3, kPhi, 0.05);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(exact[i], want[i], 1e-12);
}

TEST(Kraus, LabelsNameOutcomeClasses) {
  ProtocolConfig c = ideal(kPhi, 2);
  c.noise = NoiseModel::pauli_z_before(0.1);
  const KrausChannel ch = protocol_kraus(c);
  // even@1: clean or faulty; even@2: {0,1} prior faults x {clean, faulty}; odd@2: 0..2 faults.
  EXPECT_EQ(ch.size(), 2u + 4u + 3u);
  EXPECT_EQ(ch.labels.front(), "even@1");
  EXPECT_EQ(ch.labels.back(), "odd@2");
  const KrausChannel naive = naive_nested_kraus(kPhi, 3);
  EXPECT_EQ(naive.size(), 4u);
  EXPECT_LT(naive.completeness_deviation(), 1e-13);
}

TEST(Fidelity, PerfectGatesGiveUnitFidelity) {
  const FidelityEstimate est = avg_channel_fidelity(ideal(kPi, 2), 200, 1);
  EXPECT_NEAR(est.mean, 1.0, 1e-12);
  EXPECT_LT(est.std_dev, 1e-12);
  EXPECT_EQ(est.n_states, 200u);
  for (int nest = 1; nest <= 4; ++nest) EXPECT_NEAR(naive_avg_fidelity(kPi, nest, 100, 1).mean, 1.0, 1e-12);
}

TEST(Fidelity, KrausShortcutMatchesUhlmannOnComposedOutput) {
  ProtocolConfig c = ideal(0.8 * kPi, 2);
  c.noise = NoiseModel::pauli_x_between(0.05);
  const KrausChannel ch = protocol_kraus(c);
  const FidelityEstimate est = channel_fidelity(ch, 50, 9, Execution::serial);
  double sum = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    const PureState psi = indexed_haar_state(9, i);
    const DensityMatrix out = compose_protocol_channel(outer(psi), c).total();
    sum += state_fidelity(parity_split(psi).ideal_output(), out);
  }
  EXPECT_NEAR(est.mean, sum / 50, 1e-10);
}

TEST(Fidelity, BoundedAndMonotoneTowardPi) {
  double previous = 0.0;
  for (double f : {0.6, 0.7, 0.8, 0.9, 0.95, 1.0}) {
    const FidelityEstimate est = avg_channel_fidelity(ideal(f * kPi, 2), 300, 4);
    EXPECT_GE(est.mean, 0.0);
    EXPECT_LE(est.mean, 1.0 + 1e-12);
    EXPECT_GT(est.mean, previous);
    previous = est.mean;
  }
}

TEST(Fidelity, SeedDeterminism) {
  ProtocolConfig c = ideal(0.85 * kPi, 3);
  c.noise = NoiseModel::depolarizing_before(0.02);
  const FidelityEstimate a = avg_channel_fidelity(c, 300, 42);
  const FidelityEstimate b = avg_channel_fidelity(c, 300, 42);
  const FidelityEstimate d = avg_channel_fidelity(c, 300, 43);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_dev, b.std_dev);
  EXPECT_NE(a.mean, d.mean);
}

TEST(GaussianFidelity, ZeroWidthEqualsNoiseless) {
  ProtocolConfig c = ideal(kPhi, 2);
  const FidelityEstimate clean = avg_channel_fidelity(c, 200, 5);
  c.noise = NoiseModel::gaussian(0.0);
  const FidelityEstimate g = gaussian_avg_fidelity(c, 200, 8, 5);
  EXPECT_NEAR(g.mean, clean.mean, 1e-14);
  EXPECT_EQ(g.n_noise_samples, 8u);
}

TEST(GaussianFidelity, StdErrorShrinksWithNoiseSamples) {
  ProtocolConfig c = ideal(kPhi, 3);
  c.noise = NoiseModel::gaussian(0.08 * kPi);
  std::vector<double> se;
  for (std::size_t j : {16u, 32u, 64u, 128u, 256u}) se.push_back(gaussian_avg_fidelity(c, 40, j, 11).std_error);
  // Four doublings: 1/sqrt(16) = 0.25, loose for the scatter of the spread estimate.
  EXPECT_GT(se.back() / se.front(), 0.15);
  EXPECT_LT(se.back() / se.front(), 0.40);
  for (std::size_t k = 1; k < se.size(); ++k) EXPECT_LT(se[k], se[k - 1] * 0.95);
}

TEST(NaiveFidelity, NestingOnlyHurts) {
  double previous = 0.0;
  for (int nest = 1; nest <= 6; ++nest) {
    const double infid = 1.0 - naive_avg_fidelity(kPhi, nest, 300, 3).mean;
    EXPECT_GE(infid, previous);
    previous = infid;
  }
  for (int n = 2; n <= 5; ++n) {
    const double naive = 1.0 - naive_avg_fidelity(0.8 * kPi, n, 500, 3).mean;
    const double ours = 1.0 - avg_channel_fidelity(ideal(0.8 * kPi, n), 500, 3).mean;
    EXPECT_GT(naive, ours);
  }
}

TEST(Trajectory, FastDiagonalsMatchContraction) {
  Rng rng(6);
  for (int k = 0; k < 100; ++k) {
    const double a = 2 * kPi * rng.uniform(), b = 2 * kPi * rng.uniform(), m = 2 * kPi * rng.uniform();
    const auto d = clean_round_diagonals(a, b, m);
    const RoundOperators r = contract_round(a, b, m);
    for (int q = 0; q < 4; ++q) {
      EXPECT_LT(std::abs(d[0][static_cast<std::size_t>(q)] - r.plus(q, q)), 1e-14);
      EXPECT_LT(std::abs(d[1][static_cast<std::size_t>(q)] - r.minus(q, q)), 1e-14);
    }
  }
}

TEST(Trajectory, OddInputAtPiAlwaysHeraldsOdd) {
  const TrajectoryResult t = trajectory_sample(ideal(kPi, 3), PureState::basis(4, 1), 5000, 1);
  EXPECT_EQ(t.class_counts.back(), 5000u);
  EXPECT_EQ(t.parity_errors, 0u);
}

TEST(Trajectory, BornConsistency) {
  Rng rng(10);
  for (int k = 0; k < 8; ++k) {
    ProtocolConfig c = ideal(kPi * (0.6 + 0.4 * rng.uniform()), 1 + k % 4);
    if (k % 4 == 1) c.noise = NoiseModel::imbalanced(0.2, -0.1);
    if (k % 4 == 2) c.noise = NoiseModel::pauli_y_between(0.1);
    if (k % 4 == 3) c.noise = NoiseModel::depolarizing_before(0.2);
    const PureState psi = haar_random_state(4, rng);
    const ExactOutput exact = exact_output(c, outer(psi));
    const std::size_t shots = 100000;
    const TrajectoryResult t = trajectory_sample(c, psi, shots, 100 + k);
    for (std::size_t cls = 0; cls < exact.outcome_probs.size(); ++cls) {
      const double p = exact.outcome_probs[cls];
      const double sigma = std::sqrt(std::max(p * (1 - p), 1e-12) / shots);
      EXPECT_NEAR(t.frequencies()[cls], p, 4 * sigma + 1e-9) << "config " << k << " class " << cls;
    }
    EXPECT_NEAR(t.error_rate(), exact.error_probability, 4 * t.error_sigma() + 4.0 / shots);
  }
}

TEST(Trajectory, ConditionalStatesEstimateClassOutputs) {
  ProtocolConfig c = ideal(0.8 * kPi, 2);
  c.noise = NoiseModel::pauli_z_before(0.05);
  const PureState psi = haar_random_state(4, 77);
  const ProtocolOutput exact = compose_protocol_channel(outer(psi), c);
  const TrajectoryResult t = trajectory_sample(c, psi, 200000, 3);
  EXPECT_LT(max_abs(Matrix(t.conditional[0].matrix() - exact.even[0].matrix())), 0.01);
  EXPECT_LT(max_abs(Matrix(t.conditional[2].matrix() - exact.odd.matrix())), 0.01);
}

TEST(Trajectory, PerfectProtocolErrorRate) {
  const TrajectoryResult t = trajectory_sample(ideal(kPhi, 2), PureState::basis(4, 0), 400000, 21);
  EXPECT_NEAR(t.error_rate(), 5.988661492916428e-4, 3 * t.error_sigma());
}

TEST(Trajectory, GaussianEvenInputMatchesAveragedCoefficient) {
  ProtocolConfig c = ideal(kPhi, 2);
  c.noise = NoiseModel::gaussian(0.04 * kPi);
  const TrajectoryResult t = trajectory_sample(c, PureState::basis(4, 3), 400000, 8);
  EXPECT_NEAR(t.error_rate(), oracle::gaussian(2, kPhi, 0.04 * kPi)[3], 3 * t.error_sigma());
}

TEST(Trajectory, HaarShotsEstimateAverage) {
  ProtocolConfig c = ideal(kPhi, 1);
  c.noise = NoiseModel::pauli_z_before(0.02);
  const TrajectoryResult t = trajectory_sample_haar(c, 200000, 4);
  EXPECT_NEAR(t.error_rate(), 0.031746436089163166, 3.5 * t.error_sigma());
}

TEST(Trajectory, Deterministic) {
  ProtocolConfig c = ideal(0.8 * kPi, 3);
  c.noise = NoiseModel::gaussian(0.1);
  const PureState psi = haar_random_state(4, 1);
  const TrajectoryResult a = trajectory_sample(c, psi, 10000, 5);
  const TrajectoryResult b = trajectory_sample(c, psi, 10000, 5);
  EXPECT_EQ(a.class_counts, b.class_counts);
  EXPECT_EQ(a.parity_errors, b.parity_errors);
  EXPECT_EQ(a.conditional[1].matrix(), b.conditional[1].matrix());
  EXPECT_THROW(trajectory_sample(c, psi, 0, 5), std::invalid_argument);
}

}  // namespace
}  // namespace paritysim
