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
#include <optional>
#include <span>
#include <vector>

#include "paritysim/kraus.hpp"
#include "paritysim/linalg.hpp"

namespace paritysim {

class Rng;

/// Gate angles realized in one cycle.
struct CycleAngles {
  double phi1 = kPi;
  double phi2 = kPi;
};

/// Every knob of one protocol run.
struct ProtocolConfig {
  double phi = kPi;                 // nominal CPhase angle
  std::optional<double> phi_meas;   // defaults to the midpoint of the realized gate angles
  int n = 1;                        // number of cycles
  NoiseModel noise;
  bool correction = true;           // conditional Z-rotation fixes after heralding
  std::optional<std::uint64_t> seed;

  double gate_angle1() const;
  double gate_angle2() const;
  double measurement_angle() const;
  void validate() const;

  /// The same angles in every cycle (deterministic models).
  std::vector<CycleAngles> fixed_schedule() const;
  /// Fresh Gaussian offsets per gate and per cycle.
  std::vector<CycleAngles> sample_schedule(Rng& rng) const;
};

/// Un-normalized photonic states per outcome class.
struct ProtocolOutput {
  std::vector<DensityMatrix> even;  // [k-1] = rho~_{k,-1}: +1 up to round k-1, then -1
  DensityMatrix odd;                // rho~_{n:+1}: +1 in every round

  /// Class probabilities: even@1..even@n then odd.
  std::vector<double> probabilities() const;
  DensityMatrix total() const;
  /// tr(P_even rho~_{n:+1}) + sum_k tr(P_odd rho~_{k,-1})
  double error_probability() const;
};

/// One weighted error branch of a cycle: with `weight` the cycle acts through
/// `ops` (E_{+1}, E_{-1}).
struct RoundBranch {
  double weight;
  RoundOperators ops;
};

/// Error branches of a cycle with the given realized angles, each operator built
/// by explicit contraction.
std::vector<RoundBranch> round_branches(const NoiseModel& noise, const CycleAngles& angles,
                                        double phi_meas);

/// Phase fixes derived from the noiseless operators of the nominal (known) gate
/// angles: the realized angles for coherent imbalance, the nominal phi otherwise.
struct PhaseCorrections {
  std::vector<Operator> even;  // [m-1] applied after a -1 in round m
  Operator odd;

  static PhaseCorrections identity(int n);
  static PhaseCorrections for_config(const ProtocolConfig& config);
};

/// Composes the n-cycle channel on rho0. Pauli models use the closed binomial
/// expansion over error counts (their per-round operators commute); all other
/// models compose round by round.
ProtocolOutput compose_protocol_channel(const DensityMatrix& rho0, const ProtocolConfig& config);

/// Same as above with an explicit per-cycle angle schedule (Gaussian samples).
ProtocolOutput compose_protocol_channel(const DensityMatrix& rho0, const ProtocolConfig& config,
                                        std::span<const CycleAngles> schedule);

/// Reference composition: applies each cycle's weighted error branches in turn
/// with no algebraic shortcut.
ProtocolOutput compose_round_by_round(const DensityMatrix& rho0, const ProtocolConfig& config,
                                      std::span<const CycleAngles> schedule);

}  // namespace paritysim
