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

// Serial reference against the OpenMP path for each sampled kernel. The
// Execution argument is the benchmark's first range value: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "paritysim/analytics.hpp"
#include "paritysim/simulator.hpp"

namespace {

using namespace paritysim;

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

ProtocolConfig config(int n, NoiseModel noise) {
  ProtocolConfig c;
  c.phi = 0.9 * kPi;
  c.n = n;
  c.noise = noise;
  return c;
}

void BM_ChannelFidelity(benchmark::State& state) {
  const KrausChannel ch = protocol_kraus(config(3, NoiseModel::pauli_x_between(0.05)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(channel_fidelity(ch, 5000, 1, mode(state)).mean);
  }
  state.SetItemsProcessed(state.iterations() * 5000);
}

void BM_GaussianFidelity(benchmark::State& state) {
  const ProtocolConfig c = config(2, NoiseModel::gaussian(0.04 * kPi));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian_avg_fidelity(c, 200, 100, 1, mode(state)).mean);
  }
  state.SetItemsProcessed(state.iterations() * 200 * 100);
}

void BM_Trajectories(benchmark::State& state) {
  const ProtocolConfig c = config(3, NoiseModel::gaussian(0.04 * kPi));
  for (auto _ : state) {
    benchmark::DoNotOptimize(trajectory_sample_haar(c, 200000, 1, mode(state)).parity_errors);
  }
  state.SetItemsProcessed(state.iterations() * 200000);
}

void BM_SampledHaarAverage(benchmark::State& state) {
  const ErrorCoefficients c = errp_pauli_z(2, 0.9 * kPi, 0.02).coefficients;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampled_haar_average(c, 100000, 1, mode(state)).mean);
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}

}  // namespace

BENCHMARK(BM_ChannelFidelity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GaussianFidelity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Trajectories)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SampledHaarAverage)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
