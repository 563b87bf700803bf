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

#include <atomic>
#include <stdexcept>
#include <vector>

#include <omp.h>

#include "paritysim/analytics.hpp"
#include "paritysim/audit.hpp"
#include "paritysim/parallel.hpp"
#include "paritysim/simulator.hpp"

namespace paritysim {
namespace {

// Forces several workers even on a single-core host so scheduling really varies.
class ParallelTest : public ::testing::Test {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(4);
  }
  void TearDown() override { omp_set_num_threads(saved_); }

 private:
  int saved_ = 1;
};

TEST_F(ParallelTest, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  for_each_index(Execution::parallel, hits.size(), [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_EQ(worker_count(), 4);
}

TEST_F(ParallelTest, RethrowsWorkerExceptions) {
  EXPECT_THROW(for_each_index(Execution::parallel, 100,
                              [](std::size_t i) {
                                if (i == 57) throw std::runtime_error("boom");
                              }),
               std::runtime_error);
  EXPECT_THROW(for_each_index(Execution::serial, 3, [](std::size_t) { throw std::logic_error("x"); }),
               std::logic_error);
}

TEST_F(ParallelTest, FidelityBitIdentical) {
  ProtocolConfig c;
  c.phi = 0.85 * kPi;
  c.n = 3;
  c.noise = NoiseModel::pauli_z_before(0.01);
  const FidelityEstimate s = avg_channel_fidelity(c, 500, 3, Execution::serial);
  const FidelityEstimate p = avg_channel_fidelity(c, 500, 3, Execution::parallel);
  EXPECT_EQ(s.mean, p.mean);
  EXPECT_EQ(s.std_dev, p.std_dev);
}

TEST_F(ParallelTest, GaussianFidelityBitIdentical) {
  ProtocolConfig c;
  c.phi = 0.9 * kPi;
  c.n = 2;
  c.noise = NoiseModel::gaussian(0.04 * kPi);
  const FidelityEstimate s = gaussian_avg_fidelity(c, 60, 50, 8, Execution::serial);
  const FidelityEstimate p = gaussian_avg_fidelity(c, 60, 50, 8, Execution::parallel);
  EXPECT_EQ(s.mean, p.mean);
  EXPECT_EQ(s.std_dev, p.std_dev);
  EXPECT_EQ(s.std_error, p.std_error);
}

TEST_F(ParallelTest, TrajectoriesBitIdentical) {
  ProtocolConfig c;
  c.phi = 0.8 * kPi;
  c.n = 3;
  c.noise = NoiseModel::depolarizing_before(0.05);
  const TrajectoryResult s = trajectory_sample_haar(c, 50000, 12, Execution::serial);
  const TrajectoryResult p = trajectory_sample_haar(c, 50000, 12, Execution::parallel);
  EXPECT_EQ(s.class_counts, p.class_counts);
  EXPECT_EQ(s.parity_errors, p.parity_errors);
  for (std::size_t k = 0; k < s.conditional.size(); ++k) {
    EXPECT_EQ(s.conditional[k].matrix(), p.conditional[k].matrix());
  }
}

TEST_F(ParallelTest, SampledAverageAndAuditBitIdentical) {
  const ErrorCoefficients coeffs{0.1, 0.02, 0.03, 0.4};
  const SampledAverage s = sampled_haar_average(coeffs, 3000, 5, Execution::serial);
  const SampledAverage p = sampled_haar_average(coeffs, 3000, 5, Execution::parallel);
  EXPECT_EQ(s.mean, p.mean);
  EXPECT_EQ(s.std_error, p.std_error);

  AuditOptions options;
  options.grid_size = 30;
  const AuditReport a = run_oracle_audit(options, Execution::serial);
  const AuditReport b = run_oracle_audit(options, Execution::parallel);
  for (std::size_t m = 0; m < a.models.size(); ++m) {
    EXPECT_EQ(a.models[m].worst_deviation, b.models[m].worst_deviation);
  }
}

}  // namespace
}  // namespace paritysim
