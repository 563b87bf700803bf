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

#include "paritysim/kraus.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace paritysim {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

Operator projector1(int bit) {
  const Complex d[] = {bit == 0 ? 1.0 : 0.0, bit == 1 ? 1.0 : 0.0};
  return Operator::diagonal(d);
}

// CP between photon `photon` (0 = Q1, 1 = Q2) and the matter qubit, in Q1 (x) Q2 (x) m.
Operator photon_matter_cphase(int photon, double phi) {
  const Operator id = Operator::identity(2);
  const Operator s = phase_gate(phi);
  if (photon == 0) {
    return tensor(tensor(projector1(0), id), id) + tensor(tensor(projector1(1), id), s);
  }
  return tensor(tensor(id, projector1(0)), id) + tensor(tensor(id, projector1(1)), s);
}

Operator on_matter(const Operator& single) {
  return tensor(Operator::identity(4), single);
}

// Ratio-free phase: returns arg(a) - arg(b), or 0 if either is negligible.
double relative_phase(Complex a, Complex b) {
  constexpr double kTiny = 1e-300;
  if (std::abs(a) < kTiny || std::abs(b) < kTiny) return 0.0;
  return std::arg(a) - std::arg(b);
}

Operator rz_on_q1(double theta) { return tensor(rz(theta), Operator::identity(2)); }

}  // namespace

// ---------------------------------------------------------------------------
// NoiseModel

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::none: return "none";
    case NoiseKind::imbalanced: return "imbalanced";
    case NoiseKind::gaussian: return "gaussian";
    case NoiseKind::pauli_z_before: return "pz";
    case NoiseKind::pauli_x_between: return "px";
    case NoiseKind::pauli_y_between: return "py";
    case NoiseKind::depolarizing_before: return "depol";
  }
  return "unknown";
}

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "none") return NoiseKind::none;
  if (name == "imbalanced") return NoiseKind::imbalanced;
  if (name == "gaussian") return NoiseKind::gaussian;
  if (name == "pz" || name == "pauli_z_before") return NoiseKind::pauli_z_before;
  if (name == "px" || name == "pauli_x_between") return NoiseKind::pauli_x_between;
  if (name == "py" || name == "pauli_y_between") return NoiseKind::pauli_y_between;
  if (name == "depol" || name == "depolarizing_before") return NoiseKind::depolarizing_before;
  throw std::invalid_argument("unknown noise model '" + std::string(name) + "'");
}

NoiseModel NoiseModel::imbalanced(double delta1, double delta2) {
  NoiseModel m;
  m.kind = NoiseKind::imbalanced;
  m.delta1 = delta1;
  m.delta2 = delta2;
  m.validate();
  return m;
}

NoiseModel NoiseModel::gaussian(double width) {
  NoiseModel m;
  m.kind = NoiseKind::gaussian;
  m.width = width;
  m.validate();
  return m;
}

#define PARITYSIM_PAULI_FACTORY(name, k) \
  NoiseModel NoiseModel::name(double p) { \
    NoiseModel m;                         \
    m.kind = NoiseKind::k;                \
    m.probability = p;                    \
    m.validate();                         \
    return m;                             \
  }

PARITYSIM_PAULI_FACTORY(pauli_z_before, pauli_z_before)
PARITYSIM_PAULI_FACTORY(pauli_x_between, pauli_x_between)
PARITYSIM_PAULI_FACTORY(pauli_y_between, pauli_y_between)
PARITYSIM_PAULI_FACTORY(depolarizing_before, depolarizing_before)

#undef PARITYSIM_PAULI_FACTORY

bool NoiseModel::is_pauli() const {
  return kind == NoiseKind::pauli_z_before || kind == NoiseKind::pauli_x_between ||
         kind == NoiseKind::pauli_y_between || kind == NoiseKind::depolarizing_before;
}

double NoiseModel::parameter() const {
  switch (kind) {
    case NoiseKind::none: return 0.0;
    case NoiseKind::imbalanced: return delta1 - delta2;
    case NoiseKind::gaussian: return width;
    default: return probability;
  }
}

void NoiseModel::validate() const {
  require_finite(delta1, "delta1");
  require_finite(delta2, "delta2");
  require_finite(width, "gaussian width");
  if (width < 0.0) throw std::invalid_argument("gaussian width must be non-negative");
  require_probability(probability, "error probability");
}

// ---------------------------------------------------------------------------
// KrausChannel

void KrausChannel::add(Operator op, std::string label) {
  if (op.dim() != 4) throw std::invalid_argument("KrausChannel: operators act on two qubits");
  ops.push_back(std::move(op));
  labels.push_back(std::move(label));
}

double KrausChannel::completeness_deviation() const {
  Matrix sum = Matrix::Zero(4, 4);
  for (const auto& op : ops) sum += op.matrix().adjoint() * op.matrix();
  return max_abs(Matrix(sum - Matrix::Identity(4, 4)));
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const {
  DensityMatrix out = DensityMatrix::zero(rho.dim());
  for (const auto& op : ops) out += rho.conjugated_by(op);
  return out;
}

// ---------------------------------------------------------------------------
// Single round

RoundOperators contract_round(double phi1, double phi2, double phi_meas,
                              const std::optional<MatterError>& error) {
  require_finite(phi1, "phi1");
  require_finite(phi2, "phi2");
  require_finite(phi_meas, "phi_meas");

  Operator circuit = Operator::identity(8);
  if (error && error->site == ErrorSite::before_gates) circuit = on_matter(error->pauli) * circuit;
  circuit = photon_matter_cphase(0, phi1) * circuit;
  if (error && error->site == ErrorSite::between_gates) circuit = on_matter(error->pauli) * circuit;
  circuit = photon_matter_cphase(1, phi2) * circuit;

  const double s = 1.0 / std::sqrt(2.0);
  Matrix prepare = Matrix::Zero(8, 4);  // |psi> -> |psi> (x) |+>_m
  for (int k = 0; k < 4; ++k) {
    prepare(2 * k, k) = s;
    prepare(2 * k + 1, k) = s;
  }
  const auto [plus_ket, minus_ket] = measurement_kets(phi_meas);
  auto readout = [](const PureState& ket) {
    Matrix r = Matrix::Zero(4, 8);  // <ket|_m
    for (int k = 0; k < 4; ++k) {
      r(k, 2 * k) = std::conj(ket[0]);
      r(k, 2 * k + 1) = std::conj(ket[1]);
    }
    return r;
  };
  const Matrix body = circuit.matrix() * prepare;
  return {Operator(readout(plus_ket) * body), Operator(readout(minus_ket) * body)};
}

std::pair<Operator, Operator> naive_projectors(double phi) {
  require_finite(phi, "phi");
  const Complex i(0.0, 1.0);
  const Complex half = std::polar(1.0, phi / 2);
  const Complex full = std::polar(1.0, phi);
  const Complex even_d[] = {1.0, half * std::cos(phi / 2), half * std::cos(phi / 2),
                            full * std::cos(phi)};
  const Complex odd_d[] = {0.0, -i * half * std::sin(phi / 2), -i * half * std::sin(phi / 2),
                           -i * full * std::sin(phi)};
  return {Operator::diagonal(even_d), Operator::diagonal(odd_d)};
}

KrausChannel single_round_kraus(double phi1, double phi2, double phi_meas) {
  const RoundOperators r = contract_round(phi1, phi2, phi_meas);
  KrausChannel ch;
  ch.add(r.plus, "+1");
  ch.add(r.minus, "-1");
  return ch;
}

// ---------------------------------------------------------------------------
// Corrections and families

Operator even_correction(const Operator& nominal) {
  const double theta = relative_phase(nominal(0, 0), nominal(3, 3));
  Operator fix = rz_on_q1(theta);
  const Complex c00 = (fix * nominal)(0, 0);
  if (std::abs(c00) > 1e-300) fix = fix * std::polar(1.0, -std::arg(c00));
  return fix;
}

Operator odd_correction(const Operator& nominal) {
  return rz_on_q1(relative_phase(nominal(1, 1), nominal(2, 2)));
}

namespace {

KrausChannel family_from_round(int n, const RoundOperators& r, bool corrected) {
  if (n < 1) throw std::invalid_argument("cycle count n must be at least 1");
  KrausChannel ch;
  Operator survived = Operator::identity(4);  // E_{+1}^{m-1}
  for (int m = 1; m <= n; ++m) {
    Operator even = r.minus * survived;
    if (corrected) even = even_correction(even) * even;
    ch.add(std::move(even), "even@" + std::to_string(m));
    survived = r.plus * survived;
  }
  if (corrected) survived = odd_correction(survived) * survived;
  ch.add(std::move(survived), "odd@" + std::to_string(n));
  return ch;
}

}  // namespace

KrausChannel kraus_ideal_family(int n, double phi, bool corrected) {
  return family_from_round(n, contract_round(phi, phi, phi), corrected);
}

KrausChannel kraus_imbalanced_family(int n, double phi, double delta1, double delta2) {
  return family_from_round(n, contract_round(phi + delta1, phi + delta2, phi), false);
}

PauliRound pauli_round(const NoiseModel& error, double phi) {
  error.validate();
  PauliRound round{error.probability, contract_round(phi, phi, phi), contract_round(phi, phi, phi)};
  switch (error.kind) {
    case NoiseKind::pauli_z_before:
      round.faulty = contract_round(phi, phi, phi, MatterError{pauli_z(), ErrorSite::before_gates});
      break;
    case NoiseKind::depolarizing_before: {
      const NoiseModel equivalent = depolarizing_to_dephasing(error.probability);
      round.probability = equivalent.probability;
      round.faulty = contract_round(phi, phi, phi, MatterError{pauli_z(), ErrorSite::before_gates});
      break;
    }
    case NoiseKind::pauli_x_between:
      round.faulty =
          contract_round(phi, phi, phi, MatterError{pauli_x(), ErrorSite::between_gates});
      break;
    case NoiseKind::pauli_y_between:
      round.faulty =
          contract_round(phi, phi, phi, MatterError{pauli_y(), ErrorSite::between_gates});
      break;
    default:
      throw std::invalid_argument("pauli_round: noise model '" + std::string(to_string(error.kind)) +
                                  "' is not a Pauli model");
  }
  return round;
}

KrausChannel pauli_round_kraus(const NoiseModel& error, double phi) {
  const PauliRound r = pauli_round(error, phi);
  const double keep = std::sqrt(1.0 - r.probability);
  const double flip = std::sqrt(r.probability);
  KrausChannel ch;
  ch.add(r.clean.plus * keep, "+1");
  ch.add(r.clean.minus * keep, "-1");
  ch.add(r.faulty.plus * flip, "+1,err");
  ch.add(r.faulty.minus * flip, "-1,err");
  return ch;
}

NoiseModel depolarizing_to_dephasing(double p) {
  require_probability(p, "depolarizing probability");
  return NoiseModel::pauli_z_before(2.0 * p / 3.0);
}

}  // namespace paritysim
