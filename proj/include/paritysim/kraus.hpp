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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "paritysim/linalg.hpp"

namespace paritysim {

enum class NoiseKind {
  none,
  imbalanced,
  gaussian,
  pauli_z_before,
  pauli_x_between,
  pauli_y_between,
  depolarizing_before,
};

std::string_view to_string(NoiseKind kind);
/// Accepts the enum spelling as well as the CLI short names (pz, px, py, depol).
NoiseKind parse_noise_kind(std::string_view name);

/// Noise acting on one protocol cycle. Only the fields relevant to `kind` are read.
struct NoiseModel {
  NoiseKind kind = NoiseKind::none;
  double delta1 = 0.0;       // imbalanced: gate angle offsets from the nominal angle
  double delta2 = 0.0;
  double width = 0.0;        // gaussian: standard deviation of each gate offset
  double probability = 0.0;  // Pauli and depolarizing error probability

  static NoiseModel noiseless() { return {}; }
  static NoiseModel imbalanced(double delta1, double delta2);
  static NoiseModel gaussian(double width);
  static NoiseModel pauli_z_before(double p);
  static NoiseModel pauli_x_between(double p);
  static NoiseModel pauli_y_between(double p);
  static NoiseModel depolarizing_before(double p);

  /// Pauli-type models whose per-round operators all commute.
  bool is_pauli() const;
  bool is_stochastic() const { return kind == NoiseKind::gaussian; }
  /// The model's single scalar knob (delta1 - delta2, w, or p).
  double parameter() const;
  void validate() const;
};

/// Ordered Kraus operators with one outcome tag each.
struct KrausChannel {
  std::vector<Operator> ops;
  std::vector<std::string> labels;

  void add(Operator op, std::string label);
  std::size_t size() const { return ops.size(); }
  /// max |(sum_k E_k^dagger E_k - I)_ij|
  double completeness_deviation() const;
  DensityMatrix apply(const DensityMatrix& rho) const;
};

enum class ErrorSite { before_gates, between_gates };

/// A single-qubit error on the matter qubit at a fixed point in the cycle.
struct MatterError {
  Operator pauli;
  ErrorSite site;
};

/// E_{+1} and E_{-1} of one cycle.
struct RoundOperators {
  Operator plus;
  Operator minus;
};

/// Contracts <±_{phi_meas}| CP_2(phi2) [err] CP_1(phi1) [err] |+>_m over the matter
/// qubit of the 8-dimensional register Q1 (x) Q2 (x) m.
RoundOperators contract_round(double phi1, double phi2, double phi_meas,
                              const std::optional<MatterError>& error = std::nullopt);

/// P_even^err and P_odd^err of the textbook circuit built from CP(phi) in place of CZ.
std::pair<Operator, Operator> naive_projectors(double phi);

KrausChannel single_round_kraus(double phi1, double phi2, double phi_meas);

/// Diagonal phase fix applied after a heralded outcome.
///
/// The fix is a Z rotation on Q1 chosen so that the two coefficients of the
/// heralded subspace (|00>,|11> for even; |01>,|10> for odd) of `nominal` share a
/// phase. For even outcomes the global phase is also removed so the |00>
/// coefficient is real and non-negative.
Operator even_correction(const Operator& nominal);
Operator odd_correction(const Operator& nominal);

/// Kraus family of n cycles: even@1..even@n then odd@n. With `corrected` each
/// even operator is followed by its phase fix R_Z(pi - m phi).
KrausChannel kraus_ideal_family(int n, double phi, bool corrected);

/// Uncorrected n-cycle family with gate angles phi + delta1, phi + delta2 and
/// measurement angle phi.
KrausChannel kraus_imbalanced_family(int n, double phi, double delta1, double delta2);

/// Error-free and faulty single-round operators of a Pauli model.
struct PauliRound {
  double probability = 0.0;
  RoundOperators clean;
  RoundOperators faulty;
};

PauliRound pauli_round(const NoiseModel& error, double phi);

/// {sqrt(1-p) E_+1, sqrt(1-p) E_-1, sqrt(p) E_+1^err, sqrt(p) E_-1^err}.
KrausChannel pauli_round_kraus(const NoiseModel& error, double phi);

/// Depolarizing noise on |+> acts as dephasing with p_z = 2p/3.
NoiseModel depolarizing_to_dephasing(double p);

}  // namespace paritysim
