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

#include <complex>
#include <optional>
#include <span>
#include <utility>

#include <Eigen/Dense>

namespace paritysim {

class Rng;

using Complex = std::complex<double>;

/// Dense complex storage capped at 8x8 so nothing in the hot loops touches the heap.
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 8, 8>;
using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1, Eigen::ColMajor, 8, 1>;

/// Tolerance for freshly constructed objects (unitarity, normalization, Hermiticity).
inline constexpr double kConstructionTol = 1e-12;
/// Tolerance for equalities that hold only after a chain of floating-point operations.
inline constexpr double kDerivedTol = 1e-10;

inline constexpr double kPi = 3.14159265358979323846;

bool is_supported_dim(Eigen::Index dim);
double max_abs(const Matrix& m);
double max_abs(const Vector& v);

/// Square complex matrix on a 2-, 4- or 8-dimensional space.
class Operator {
 public:
  explicit Operator(Matrix entries);

  static Operator identity(int dim);
  static Operator diagonal(std::span<const Complex> diag);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  Operator operator*(const Operator& rhs) const;
  Operator operator+(const Operator& rhs) const;
  Operator operator-(const Operator& rhs) const;
  Operator operator*(Complex scale) const;

  /// max |(U^dagger U - I)_ij|
  double unitarity_deviation() const;
  bool is_unitary(double tol = kConstructionTol) const { return unitarity_deviation() < tol; }

 private:
  Matrix entries_;
};

inline Operator operator*(Complex scale, const Operator& op) { return op * scale; }

/// Unit-norm state vector.
class PureState {
 public:
  /// Throws if the vector is not normalized to within kConstructionTol.
  explicit PureState(Vector amplitudes);
  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(const Vector& v);
  static PureState basis(int dim, int index);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  Complex operator[](int i) const { return amps_(i); }

 private:
  Vector amps_;
};

/// Hermitian matrix; un-normalized instances carry an outcome probability as their trace.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);
  static DensityMatrix zero(int dim);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  double trace() const { return entries_.trace().real(); }
  DensityMatrix normalized() const;
  DensityMatrix operator+(const DensityMatrix& rhs) const;
  DensityMatrix& operator+=(const DensityMatrix& rhs);
  DensityMatrix operator*(double scale) const;

  /// E rho E^dagger without any validation beyond Hermiticity of the result.
  DensityMatrix conjugated_by(const Operator& op) const;
  /// tr(P rho P) for an orthogonal projector P.
  double weight_in(const Operator& projector) const;

 private:
  Matrix entries_;
};

// Gates and projectors. Two-qubit operators act on |q1 q2> with q1 the most
// significant bit, so index 2 is |10>.
Operator cphase(double phi);
Operator phase_gate(double phi);  // diag(1, e^{i phi})
Operator rz(double phi);          // diag(e^{-i phi/2}, e^{i phi/2})
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();
Operator hadamard();
Operator basis_projector(int q1, int q2);
Operator even_projector();
Operator odd_projector();

Operator tensor(const Operator& a, const Operator& b);
Operator dagger(const Operator& a);
PureState apply(const Operator& a, const PureState& s);
DensityMatrix outer(const PureState& s);

/// Eigenkets |+_phi>, |-_phi> of R_z(phi) X R_z(phi)^dagger.
std::pair<PureState, PureState> measurement_kets(double phi);

/// Normalized complex Gaussian vector; redraws on an all-zero draw.
PureState haar_random_state(int dim, Rng& rng);
PureState haar_random_state(int dim, std::uint64_t seed);
/// The i-th two-qubit Haar state of the sample keyed by `seed`. Every Monte
/// Carlo estimator draws its input states through this so that runs sharing a
/// seed see the same states.
PureState indexed_haar_state(std::uint64_t seed, std::size_t index);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 for normalized inputs.
double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Even/odd components of a two-qubit pure state. An absent branch has
/// probability zero and no state.
struct ParitySplit {
  double p_even = 0.0;
  std::optional<PureState> even;
  double p_odd = 0.0;
  std::optional<PureState> odd;

  /// p_even |psi_e><psi_e| + p_odd |psi_o><psi_o|
  DensityMatrix ideal_output() const;
};

ParitySplit parity_split(const PureState& psi);

/// Fidelity against the ideal parity-projected state through the 2x2 reduction
/// F = <>_ee + <>_oo + 2 sqrt(<>_ee <>_oo - |<>_eo|^2).
double rank2_fidelity(const ParitySplit& split, const DensityMatrix& rho_out);

}  // namespace paritysim
