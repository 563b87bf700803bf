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
#include <span>
#include <vector>

#include "paritysim/analytics.hpp"
#include "paritysim/channel.hpp"
#include "paritysim/kraus.hpp"
#include "paritysim/linalg.hpp"
#include "paritysim/parallel.hpp"

namespace paritysim {

struct ExactOutput {
  DensityMatrix rho_out;             // sum of the corrected outcome classes
  std::vector<double> outcome_probs;  // even@1..even@n, odd
  double error_probability = 0.0;
};

/// Deterministic models only; Gaussian noise needs a schedule.
ExactOutput exact_output(const ProtocolConfig& config, const DensityMatrix& rho0);
ExactOutput exact_output(const ProtocolConfig& config, const DensityMatrix& rho0,
                         std::span<const CycleAngles> schedule);

/// Error probability of each computational basis input, from the exact channel.
ErrorCoefficients exact_error_coefficients(const ProtocolConfig& config);
double exact_error_probability(const ProtocolConfig& config, const PureState& psi);

/// The corrected n-cycle protocol as one Kraus channel. Labels name the
/// outcome class ("even@k", "odd@n"); Pauli models contribute several
/// operators per class, one for each number of faulty cycles.
KrausChannel protocol_kraus(const ProtocolConfig& config, std::span<const CycleAngles> schedule);
KrausChannel protocol_kraus(const ProtocolConfig& config);

/// The naive circuit nested n times, all outcome records kept.
KrausChannel naive_nested_kraus(double phi, int nestings);

struct FidelityEstimate {
  double mean = 0.0;
  double std_dev = 0.0;    // spread over input states
  double std_error = 0.0;  // uncertainty of `mean`
  std::size_t n_states = 0;
  std::size_t n_noise_samples = 0;
  std::uint64_t seed = 0;
};

/// Fidelity of `channel` against the ideal parity projection, averaged over
/// n_states Haar states.
FidelityEstimate channel_fidelity(const KrausChannel& channel, std::size_t n_states,
                                  std::uint64_t seed, Execution exec = Execution::parallel);

/// Deterministic models. Gaussian configs are rejected.
FidelityEstimate avg_channel_fidelity(const ProtocolConfig& config, std::size_t n_states,
                                      std::uint64_t seed, Execution exec = Execution::parallel);

/// Draws n_noise_samples angle schedules and averages the fidelity of each
/// over the same n_states Haar states. std_dev is the spread over states of
/// the noise-averaged fidelity; std_error is the spread of the per-schedule
/// means divided by sqrt(n_noise_samples).
FidelityEstimate gaussian_avg_fidelity(const ProtocolConfig& config, std::size_t n_states,
                                       std::size_t n_noise_samples, std::uint64_t seed,
                                       Execution exec = Execution::parallel);

FidelityEstimate naive_avg_fidelity(double phi, int nestings, std::size_t n_states,
                                    std::uint64_t seed, Execution exec = Execution::parallel);

/// Shot-level sampler. Counts and conditional states are indexed like
/// ExactOutput::outcome_probs.
struct TrajectoryResult {
  std::size_t shots = 0;
  std::vector<std::size_t> class_counts;
  std::size_t parity_errors = 0;  // shots whose re-measured parity disagrees with the herald
  std::vector<DensityMatrix> conditional;  // sum over shots of |psi><psi| divided by shots

  std::vector<double> frequencies() const;
  double error_rate() const;
  /// Bernoulli standard error of error_rate().
  double error_sigma() const;
};

inline constexpr std::size_t kShotBlock = 4096;

TrajectoryResult trajectory_sample(const ProtocolConfig& config, const PureState& psi0,
                                   std::size_t shots, std::uint64_t seed,
                                   Execution exec = Execution::parallel);
/// Every shot starts from a fresh Haar state.
TrajectoryResult trajectory_sample_haar(const ProtocolConfig& config, std::size_t shots,
                                        std::uint64_t seed, Execution exec = Execution::parallel);

/// Diagonal of E_{+1}, E_{-1} for a noiseless cycle, without the 8-dim contraction.
std::array<std::array<Complex, 4>, 2> clean_round_diagonals(double phi1, double phi2,
                                                            double phi_meas);

}  // namespace paritysim
