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

#include "paritysim/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "paritysim/rng.hpp"

namespace paritysim {

// ---------------------------------------------------------------------------
// ProtocolConfig

double ProtocolConfig::gate_angle1() const {
  return noise.kind == NoiseKind::imbalanced ? phi + noise.delta1 : phi;
}

double ProtocolConfig::gate_angle2() const {
  return noise.kind == NoiseKind::imbalanced ? phi + noise.delta2 : phi;
}

double ProtocolConfig::measurement_angle() const {
  return phi_meas.value_or(0.5 * (gate_angle1() + gate_angle2()));
}

void ProtocolConfig::validate() const {
  if (n < 1) throw std::invalid_argument("cycle count n must be at least 1, got " + std::to_string(n));
  if (!std::isfinite(phi)) throw std::invalid_argument("phi must be finite");
  if (phi_meas && !std::isfinite(*phi_meas)) throw std::invalid_argument("phi_meas must be finite");
  noise.validate();
}

std::vector<CycleAngles> ProtocolConfig::fixed_schedule() const {
  return std::vector<CycleAngles>(static_cast<std::size_t>(n), {gate_angle1(), gate_angle2()});
}

std::vector<CycleAngles> ProtocolConfig::sample_schedule(Rng& rng) const {
  std::vector<CycleAngles> schedule;
  schedule.reserve(static_cast<std::size_t>(n));
  const double w = noise.kind == NoiseKind::gaussian ? noise.width : 0.0;
  for (int k = 0; k < n; ++k) {
    const double phi1 = gate_angle1() + w * rng.normal();
    const double phi2 = gate_angle2() + w * rng.normal();
    schedule.push_back({phi1, phi2});
  }
  return schedule;
}

// ---------------------------------------------------------------------------
// ProtocolOutput

std::vector<double> ProtocolOutput::probabilities() const {
  std::vector<double> p;
  p.reserve(even.size() + 1);
  for (const auto& rho : even) p.push_back(rho.trace());
  p.push_back(odd.trace());
  return p;
}

DensityMatrix ProtocolOutput::total() const {
  DensityMatrix sum = odd;
  for (const auto& rho : even) sum += rho;
  return sum;
}

double ProtocolOutput::error_probability() const {
  const Operator pe = even_projector();
  const Operator po = odd_projector();
  double err = odd.weight_in(pe);
  for (const auto& rho : even) err += rho.weight_in(po);
  return err;
}

// ---------------------------------------------------------------------------
// Cycle structure

std::vector<RoundBranch> round_branches(const NoiseModel& noise, const CycleAngles& a,
                                        double phi_meas) {
  const double p = noise.probability;
  auto with = [&](const Operator& pauli, ErrorSite site) {
    return contract_round(a.phi1, a.phi2, phi_meas, MatterError{pauli, site});
  };
  const RoundOperators clean = contract_round(a.phi1, a.phi2, phi_meas);
  switch (noise.kind) {
    case NoiseKind::none:
    case NoiseKind::imbalanced:
    case NoiseKind::gaussian:
      return {{1.0, clean}};
    case NoiseKind::pauli_z_before:
      return {{1.0 - p, clean}, {p, with(pauli_z(), ErrorSite::before_gates)}};
    case NoiseKind::pauli_x_between:
      return {{1.0 - p, clean}, {p, with(pauli_x(), ErrorSite::between_gates)}};
    case NoiseKind::pauli_y_between:
      return {{1.0 - p, clean}, {p, with(pauli_y(), ErrorSite::between_gates)}};
    case NoiseKind::depolarizing_before:
      return {{1.0 - p, clean},
              {p / 3.0, with(pauli_x(), ErrorSite::before_gates)},
              {p / 3.0, with(pauli_y(), ErrorSite::before_gates)},
              {p / 3.0, with(pauli_z(), ErrorSite::before_gates)}};
  }
  throw std::logic_error("round_branches: unhandled noise kind");
}

PhaseCorrections PhaseCorrections::identity(int n) {
  return {std::vector<Operator>(static_cast<std::size_t>(n), Operator::identity(4)),
          Operator::identity(4)};
}

PhaseCorrections PhaseCorrections::for_config(const ProtocolConfig& config) {
  if (!config.correction) return identity(config.n);
  const RoundOperators nominal =
      contract_round(config.gate_angle1(), config.gate_angle2(), config.measurement_angle());
  PhaseCorrections fixes = identity(config.n);
  Operator survived = Operator::identity(4);
  for (int m = 0; m < config.n; ++m) {
    fixes.even[static_cast<std::size_t>(m)] = even_correction(nominal.minus * survived);
    survived = nominal.plus * survived;
  }
  fixes.odd = odd_correction(survived);
  return fixes;
}

// ---------------------------------------------------------------------------
// Composition

namespace {

void check_schedule(const ProtocolConfig& config, std::span<const CycleAngles> schedule) {
  config.validate();
  if (schedule.size() != static_cast<std::size_t>(config.n)) {
    throw std::invalid_argument("angle schedule length must equal the cycle count");
  }
}

void apply_corrections(ProtocolOutput& out, const PhaseCorrections& fixes) {
  for (std::size_t k = 0; k < out.even.size(); ++k) {
    out.even[k] = out.even[k].conjugated_by(fixes.even[k]);
  }
  out.odd = out.odd.conjugated_by(fixes.odd);
}

Matrix power(const Matrix& m, int k) {
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

// The two operator pairs of a commuting Pauli model. Depolarizing noise before
// the gates is folded into its dephasing equivalent.
struct CommutingPair {
  double p;
  RoundOperators clean;
  RoundOperators faulty;
};

CommutingPair commuting_pair(const NoiseModel& noise, const CycleAngles& a, double phi_meas) {
  NoiseModel effective = noise;
  if (noise.kind == NoiseKind::depolarizing_before) {
    effective = depolarizing_to_dephasing(noise.probability);
  }
  const auto branches = round_branches(effective, a, phi_meas);
  return {effective.probability, branches.at(0).ops, branches.at(1).ops};
}

ProtocolOutput compose_binomial(const DensityMatrix& rho0, const ProtocolConfig& config,
                                const CycleAngles& angles) {
  const CommutingPair pair = commuting_pair(config.noise, angles, config.measurement_angle());
  const double p = pair.p;
  const Matrix& a = pair.clean.plus.matrix();
  const Matrix& b = pair.faulty.plus.matrix();

  // rho~_{k:+1} = sum_j C(k,j) (1-p)^{k-j} p^j A^{k-j} B^j rho0 (...)^dagger
  auto all_plus = [&](int k) {
    Matrix sum = Matrix::Zero(4, 4);
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      const double weight = binom * std::pow(1.0 - p, k - j) * std::pow(p, j);
      if (weight != 0.0) {
        const Matrix op = power(a, k - j) * power(b, j);
        sum += weight * (op * rho0.matrix() * op.adjoint());
      }
      binom = binom * (k - j) / (j + 1);
    }
    return DensityMatrix(Matrix(0.5 * (sum + sum.adjoint())));
  };

  ProtocolOutput out{{}, DensityMatrix::zero(4)};
  out.even.reserve(static_cast<std::size_t>(config.n));
  for (int k = 1; k <= config.n; ++k) {
    const DensityMatrix before = all_plus(k - 1);
    out.even.push_back(before.conjugated_by(pair.clean.minus) * (1.0 - p) +
                       before.conjugated_by(pair.faulty.minus) * p);
  }
  out.odd = all_plus(config.n);
  apply_corrections(out, PhaseCorrections::for_config(config));
  return out;
}

}  // namespace

ProtocolOutput compose_round_by_round(const DensityMatrix& rho0, const ProtocolConfig& config,
                                      std::span<const CycleAngles> schedule) {
  check_schedule(config, schedule);
  const double phi_meas = config.measurement_angle();
  ProtocolOutput out{{}, DensityMatrix::zero(rho0.dim())};
  out.even.reserve(schedule.size());
  DensityMatrix survived = rho0;
  for (const CycleAngles& angles : schedule) {
    DensityMatrix heralded_even = DensityMatrix::zero(rho0.dim());
    DensityMatrix next = DensityMatrix::zero(rho0.dim());
    for (const RoundBranch& branch : round_branches(config.noise, angles, phi_meas)) {
      if (branch.weight == 0.0) continue;
      heralded_even += survived.conjugated_by(branch.ops.minus) * branch.weight;
      next += survived.conjugated_by(branch.ops.plus) * branch.weight;
    }
    out.even.push_back(std::move(heralded_even));
    survived = std::move(next);
  }
  out.odd = std::move(survived);
  apply_corrections(out, PhaseCorrections::for_config(config));
  return out;
}

ProtocolOutput compose_protocol_channel(const DensityMatrix& rho0, const ProtocolConfig& config,
                                        std::span<const CycleAngles> schedule) {
  check_schedule(config, schedule);
  if (rho0.dim() != 4) throw std::invalid_argument("compose_protocol_channel: expects two qubits");
  if (config.noise.is_pauli()) {
    for (const auto& a : schedule) {
      if (a.phi1 != schedule[0].phi1 || a.phi2 != schedule[0].phi2) {
        throw std::invalid_argument("Pauli models require the same gate angles in every cycle");
      }
    }
    return compose_binomial(rho0, config, schedule[0]);
  }
  return compose_round_by_round(rho0, config, schedule);
}

ProtocolOutput compose_protocol_channel(const DensityMatrix& rho0, const ProtocolConfig& config) {
  config.validate();
  if (config.noise.is_stochastic()) {
    throw std::invalid_argument(
        "compose_protocol_channel: Gaussian noise needs a sampled angle schedule");
  }
  const auto schedule = config.fixed_schedule();
  return compose_protocol_channel(rho0, config, schedule);
}

}  // namespace paritysim
