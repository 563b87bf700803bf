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

#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "paritysim/channel.hpp"
#include "paritysim/linalg.hpp"
#include "paritysim/parallel.hpp"

namespace paritysim {

/// Weights multiplying |c00|^2, |c01|^2, |c10|^2, |c11|^2.
using ErrorCoefficients = std::array<double, 4>;

/// Closed-form parity error probability after n cycles.
///
/// Every model's error probability is linear in the |c_ij|^2 of the input
/// state, so the maximum over pure states is the largest coefficient and the
/// Haar average is their mean.
struct ErrorProbabilityReport {
  int n = 1;
  ErrorCoefficients coefficients{};
  std::optional<double> value_for_state;
  double max_over_states = 0.0;
  double haar_average = 0.0;
};

ErrorProbabilityReport make_report(int n, const ErrorCoefficients& coefficients,
                                   const std::optional<PureState>& state = std::nullopt);

/// sum_ij coefficient_ij |c_ij|^2
double weighted_population(const ErrorCoefficients& coefficients, const PureState& state);

ErrorProbabilityReport errp_perfect(int n, double phi,
                                    const std::optional<PureState>& state = std::nullopt);
ErrorProbabilityReport errp_imbalanced(int n, double phi, double delta1, double delta2,
                                       const std::optional<PureState>& state = std::nullopt);
ErrorProbabilityReport errp_gaussian(int n, double phi, double w,
                                     const std::optional<PureState>& state = std::nullopt);
ErrorProbabilityReport errp_pauli_z(int n, double phi, double p_z,
                                    const std::optional<PureState>& state = std::nullopt);
ErrorProbabilityReport errp_pauli_x(int n, double phi, double p_x,
                                    const std::optional<PureState>& state = std::nullopt);
ErrorProbabilityReport errp_pauli_y(int n, double phi, double p_y,
                                    const std::optional<PureState>& state = std::nullopt);

/// Dispatches on config.noise. The measurement angle must be the nominal phi
/// except for imbalanced gates, where offsets are taken relative to it.
ErrorProbabilityReport errp_for_config(const ProtocolConfig& config,
                                       const std::optional<PureState>& state = std::nullopt);

/// Monte Carlo estimate of the Haar average of a linear error functional.
struct SampledAverage {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_states = 0;
};

SampledAverage sampled_haar_average(const ErrorCoefficients& coefficients, std::size_t n_states,
                                    std::uint64_t seed, Execution exec = Execution::parallel);

}  // namespace paritysim
