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

#include "paritysim/audit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "paritysim/quadrature.hpp"
#include "paritysim/rng.hpp"
#include "paritysim/simulator.hpp"

namespace paritysim {

ProtocolOutput gaussian_averaged_output(const DensityMatrix& rho0, const ProtocolConfig& config,
                                        int points) {
  config.validate();
  const double phi_meas = config.measurement_angle();
  const QuadratureRule rule = gaussian_expectation_rule(points, config.noise.width);

  struct Node {
    double weight;
    RoundOperators ops;
  };
  std::vector<Node> nodes;
  for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
    for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
      nodes.push_back({rule.weights[a] * rule.weights[b],
                       contract_round(config.gate_angle1() + rule.nodes[a],
                                      config.gate_angle2() + rule.nodes[b], phi_meas)});
    }
  }

  // Cycles draw independent offsets, so the averaged channel is the
  // composition of averaged cycles.
  ProtocolOutput out{{}, DensityMatrix::zero(rho0.dim())};
  DensityMatrix survived = rho0;
  for (int k = 0; k < config.n; ++k) {
    DensityMatrix even = DensityMatrix::zero(rho0.dim());
    DensityMatrix next = DensityMatrix::zero(rho0.dim());
    for (const Node& node : nodes) {
      even += survived.conjugated_by(node.ops.minus) * node.weight;
      next += survived.conjugated_by(node.ops.plus) * node.weight;
    }
    out.even.push_back(std::move(even));
    survived = std::move(next);
  }
  out.odd = std::move(survived);

  const PhaseCorrections fixes = PhaseCorrections::for_config(config);
  for (std::size_t k = 0; k < out.even.size(); ++k) out.even[k] = out.even[k].conjugated_by(fixes.even[k]);
  out.odd = out.odd.conjugated_by(fixes.odd);
  return out;
}

double oracle_error_probability(const ProtocolConfig& config, const PureState& psi) {
  if (config.noise.kind == NoiseKind::gaussian) {
    return gaussian_averaged_output(outer(psi), config).error_probability();
  }
  return exact_error_probability(config, psi);
}

ErrorCoefficients oracle_error_coefficients(const ProtocolConfig& config) {
  ErrorCoefficients c{};
  for (int i = 0; i < 4; ++i) {
    c[static_cast<std::size_t>(i)] = oracle_error_probability(config, PureState::basis(4, i));
  }
  return c;
}

std::vector<NoiseKind> audited_models() {
  return {NoiseKind::none,           NoiseKind::imbalanced,      NoiseKind::gaussian,
          NoiseKind::pauli_z_before, NoiseKind::pauli_x_between, NoiseKind::pauli_y_between,
          NoiseKind::depolarizing_before};
}

namespace {

ProtocolConfig random_config(NoiseKind kind, Rng& rng) {
  ProtocolConfig c;
  c.n = 1 + static_cast<int>(rng.uniform() * 5.0);
  c.phi = 2.0 * kPi * rng.uniform();
  switch (kind) {
    case NoiseKind::none:
      c.noise = NoiseModel::noiseless();
      if (rng.bernoulli(0.5)) c.phi_meas = 2.0 * kPi * rng.uniform();
      break;
    case NoiseKind::imbalanced: {
      const double d1 = 0.4 * kPi * (rng.uniform() - 0.5);
      const double d2 = 0.4 * kPi * (rng.uniform() - 0.5);
      c.noise = NoiseModel::imbalanced(d1, d2);
      if (rng.bernoulli(0.5)) c.phi_meas = c.phi + 0.2 * kPi * (rng.uniform() - 0.5);
      break;
    }
    case NoiseKind::gaussian:
      c.noise = NoiseModel::gaussian(0.1 * kPi * rng.uniform());
      break;
    case NoiseKind::pauli_z_before:
      c.noise = NoiseModel::pauli_z_before(0.3 * rng.uniform());
      break;
    case NoiseKind::pauli_x_between:
      c.noise = NoiseModel::pauli_x_between(0.3 * rng.uniform());
      break;
    case NoiseKind::pauli_y_between:
      c.noise = NoiseModel::pauli_y_between(0.3 * rng.uniform());
      break;
    case NoiseKind::depolarizing_before:
      c.noise = NoiseModel::depolarizing_before(0.3 * rng.uniform());
      break;
  }
  return c;
}

}  // namespace

AuditReport run_oracle_audit(const AuditOptions& options, Execution exec) {
  if (options.grid_size < 1) throw std::invalid_argument("oracle audit: grid size must be >= 1");
  AuditReport report;
  const auto kinds = audited_models();
  for (std::size_t m = 0; m < kinds.size(); ++m) {
    const Rng model_stream = Rng(options.seed).split(m);
    std::vector<double> deviation(options.grid_size);
    std::vector<ProtocolConfig> configs(options.grid_size);
    for_each_index(exec, options.grid_size, [&](std::size_t t) {
      Rng rng = model_stream.split(t);
      configs[t] = random_config(kinds[m], rng);
      const PureState psi = haar_random_state(4, rng);
      const double closed = options.closed_form(configs[t], psi).value_for_state.value();
      deviation[t] = std::abs(closed - oracle_error_probability(configs[t], psi));
    });
    ModelAudit audit;
    audit.kind = kinds[m];
    audit.tuples = options.grid_size;
    for (std::size_t t = 0; t < options.grid_size; ++t) {
      if (!(deviation[t] <= audit.worst_deviation)) {
        audit.worst_deviation = deviation[t];
        audit.worst_config = configs[t];
      }
    }
    audit.passed = audit.worst_deviation <= options.tolerance;
    report.worst_deviation = std::max(report.worst_deviation, audit.worst_deviation);
    report.passed = report.passed && audit.passed;
    report.models.push_back(audit);
  }

  for (int n = 1; n <= 2; ++n) {
    ProtocolConfig c;
    c.phi = 0.9 * kPi;
    c.n = n;
    c.noise = NoiseModel::pauli_x_between(0.08);
    const ErrorCoefficients exact = exact_error_coefficients(c);
    const ErrorProbabilityReport closed = errp_pauli_x(n, c.phi, 0.08);
    const auto& k = closed.coefficients;
    PauliXReading r;
    r.n = n;
    r.exact_average = (exact[0] + exact[1] + exact[2] + exact[3]) / 4.0;
    r.single_odd_average = closed.haar_average;
    r.both_odd_average = (k[0] + 2.0 * k[2] + k[3]) / 4.0;
    r.exact_max = *std::max_element(exact.begin(), exact.end());
    r.single_odd_max = closed.max_over_states;
    report.pauli_x.push_back(r);
  }

  for (int n = 1; n <= 4; ++n) {
    ProtocolConfig c;
    c.phi = 0.9 * kPi;
    c.n = n;
    c.noise = NoiseModel::imbalanced(0.04 * kPi, -0.04 * kPi);
    const ErrorCoefficients exact = exact_error_coefficients(c);
    report.imbalanced.push_back({n, errp_for_config(c).max_over_states,
                                 *std::max_element(exact.begin(), exact.end())});
  }
  return report;
}

}  // namespace paritysim
