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

#include "paritysim/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace paritysim {

namespace {

void require_cycles(int n) {
  if (n < 1) throw std::invalid_argument("error probability: n must be >= 1, got " + std::to_string(n));
}

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": probability must lie in [0, 1]");
  }
}

// (1 - d)^n and 1 - (1 - d)^n, the latter without cancellation for small d.
double survive(double d, int n) { return std::pow(1.0 - d, n); }
double fail(double d, int n) {
  if (d >= 1.0) return 1.0;
  return -std::expm1(n * std::log1p(-d));
}

double sin2_half(double x) {
  const double s = std::sin(0.5 * x);
  return s * s;
}

// cos^{2n}(x/2)
double cos_pow(double x, int n) { return survive(sin2_half(x), n); }

}  // namespace

double weighted_population(const ErrorCoefficients& coefficients, const PureState& state) {
  if (state.dim() != 4) throw std::invalid_argument("weighted_population: expects a two-qubit state");
  double total = 0.0;
  for (int i = 0; i < 4; ++i) total += coefficients[static_cast<std::size_t>(i)] * std::norm(state[i]);
  return total;
}

ErrorProbabilityReport make_report(int n, const ErrorCoefficients& coefficients,
                                   const std::optional<PureState>& state) {
  ErrorProbabilityReport report;
  report.n = n;
  report.coefficients = coefficients;
  report.max_over_states = *std::max_element(coefficients.begin(), coefficients.end());
  report.haar_average = std::accumulate(coefficients.begin(), coefficients.end(), 0.0) / 4.0;
  if (state) report.value_for_state = weighted_population(coefficients, *state);
  return report;
}

ErrorProbabilityReport errp_perfect(int n, double phi, const std::optional<PureState>& state) {
  require_cycles(n);
  const double c = cos_pow(phi, n);
  return make_report(n, {c, 0.0, 0.0, c}, state);
}

ErrorProbabilityReport errp_imbalanced(int n, double phi, double delta1, double delta2,
                                       const std::optional<PureState>& state) {
  require_cycles(n);
  return make_report(n,
                     {cos_pow(phi, n), fail(sin2_half(delta2), n), fail(sin2_half(delta1), n),
                      cos_pow(phi + delta1 + delta2, n)},
                     state);
}

ErrorProbabilityReport errp_gaussian(int n, double phi, double w,
                                     const std::optional<PureState>& state) {
  require_cycles(n);
  if (!(w >= 0.0)) throw std::invalid_argument("errp_gaussian: width must be >= 0");
  // Each cycle averages cos^2 over two independent offsets.
  const double odd_loss = -0.5 * std::expm1(-0.5 * w * w);
  const double even11 = std::pow(0.5 * (1.0 + std::cos(phi) * std::exp(-w * w)), n);
  const double odd = fail(odd_loss, n);
  return make_report(n, {cos_pow(phi, n), odd, odd, even11}, state);
}

ErrorProbabilityReport errp_pauli_z(int n, double phi, double p_z,
                                    const std::optional<PureState>& state) {
  require_cycles(n);
  require_probability(p_z, "errp_pauli_z");
  const double even = std::pow(0.5 + (0.5 - p_z) * std::cos(phi), n);
  const double odd = fail(p_z, n);
  return make_report(n, {even, odd, odd, even}, state);
}

ErrorProbabilityReport errp_pauli_x(int n, double phi, double p_x,
                                    const std::optional<PureState>& state) {
  require_cycles(n);
  require_probability(p_x, "errp_pauli_x");
  const double s = std::sin(phi);
  const double even = cos_pow(phi, n);
  return make_report(n, {even, 0.0, fail(p_x * s * s, n), even}, state);
}

ErrorProbabilityReport errp_pauli_y(int n, double phi, double p_y,
                                    const std::optional<PureState>& state) {
  require_cycles(n);
  require_probability(p_y, "errp_pauli_y");
  const double c = std::cos(phi);
  const double even = std::pow(0.5 + (0.5 - p_y) * c, n);
  return make_report(n, {even, fail(p_y, n), fail(p_y * c * c, n), even}, state);
}

ErrorProbabilityReport errp_for_config(const ProtocolConfig& config,
                                       const std::optional<PureState>& state) {
  config.validate();
  const NoiseModel& noise = config.noise;
  const double phi_m = config.measurement_angle();
  if (noise.kind == NoiseKind::none || noise.kind == NoiseKind::imbalanced) {
    return errp_imbalanced(config.n, phi_m, config.gate_angle1() - phi_m,
                           config.gate_angle2() - phi_m, state);
  }
  if (std::abs(phi_m - config.phi) > kConstructionTol) {
    throw std::invalid_argument(
        "errp_for_config: closed forms for this noise model assume phi_meas = phi");
  }
  switch (noise.kind) {
    case NoiseKind::gaussian:
      return errp_gaussian(config.n, config.phi, noise.width, state);
    case NoiseKind::pauli_z_before:
      return errp_pauli_z(config.n, config.phi, noise.probability, state);
    case NoiseKind::pauli_x_between:
      return errp_pauli_x(config.n, config.phi, noise.probability, state);
    case NoiseKind::pauli_y_between:
      return errp_pauli_y(config.n, config.phi, noise.probability, state);
    case NoiseKind::depolarizing_before:
      return errp_pauli_z(config.n, config.phi, depolarizing_to_dephasing(noise.probability).probability,
                          state);
    default:
      break;
  }
  throw std::logic_error("errp_for_config: unhandled noise kind");
}

SampledAverage sampled_haar_average(const ErrorCoefficients& coefficients, std::size_t n_states,
                                    std::uint64_t seed, Execution exec) {
  if (n_states < 2) throw std::invalid_argument("sampled_haar_average: need at least 2 states");
  std::vector<double> values(n_states);
  for_each_index(exec, n_states, [&](std::size_t i) {
    values[i] = weighted_population(coefficients, indexed_haar_state(seed, i));
  });
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n_states);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(n_states - 1);
  return {mean, std::sqrt(var / static_cast<double>(n_states)), n_states};
}

}  // namespace paritysim
