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

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "paritysim/analytics.hpp"
#include "paritysim/channel.hpp"
#include "paritysim/parallel.hpp"

namespace paritysim {

/// Noise-averaged channel output for Gaussian gate offsets, integrated per
/// cycle with a tensor Gauss-Hermite rule instead of sampled.
ProtocolOutput gaussian_averaged_output(const DensityMatrix& rho0, const ProtocolConfig& config,
                                        int points = 24);

/// Exact-channel error probability for any model (Gaussian by quadrature).
double oracle_error_probability(const ProtocolConfig& config, const PureState& psi);
ErrorCoefficients oracle_error_coefficients(const ProtocolConfig& config);

using ClosedForm =
    std::function<ErrorProbabilityReport(const ProtocolConfig&, const std::optional<PureState>&)>;

struct AuditOptions {
  std::size_t grid_size = 500;  // random tuples per noise model
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
  ClosedForm closed_form = [](const ProtocolConfig& c, const std::optional<PureState>& s) {
    return errp_for_config(c, s);
  };
};

struct ModelAudit {
  NoiseKind kind = NoiseKind::none;
  std::size_t tuples = 0;
  double worst_deviation = 0.0;
  ProtocolConfig worst_config;
  bool passed = true;
};

/// Haar averages of the X-between-gates model under the single-odd
/// formula and under the reading that puts the odd weight on both odd states.
struct PauliXReading {
  int n = 1;
  double exact_average = 0.0;
  double single_odd_average = 0.0;
  double both_odd_average = 0.0;
  double exact_max = 0.0;
  double single_odd_max = 0.0;
};

struct ImbalancedReading {
  int n = 1;
  double closed_max = 0.0;
  double exact_max = 0.0;
};

struct AuditReport {
  std::vector<ModelAudit> models;
  std::vector<PauliXReading> pauli_x;        // phi = 0.9 pi, p = 0.08
  std::vector<ImbalancedReading> imbalanced;  // phi = 0.9 pi, delta = +-0.04 pi
  double worst_deviation = 0.0;
  bool passed = true;
};

/// Random grid of (n <= 5, angles, noise parameter, Haar state) tuples for
/// every noise model, comparing the closed form against the exact channel.
AuditReport run_oracle_audit(const AuditOptions& options, Execution exec = Execution::parallel);

/// Audited model list, in report order.
std::vector<NoiseKind> audited_models();

}  // namespace paritysim
