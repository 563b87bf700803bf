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

#include "paritysim/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "paritysim/rng.hpp"

namespace paritysim {

namespace {

using HermitianSolver = Eigen::SelfAdjointEigenSolver<Matrix>;

// Eigenvalues of a unit-trace state below this are rounding noise of the
// eigensolver (a few ulp for dim <= 8) and are treated as exact zeros.
constexpr double kRankTol = 1e-13;
constexpr double kNegativeEigenTol = 1e-10;
constexpr double kAbsentBranch = 1e-24;

bool all_finite(const Matrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) {
        return false;
      }
    }
  }
  return true;
}

void require_dim(Eigen::Index dim, const char* what) {
  if (!is_supported_dim(dim)) {
    throw std::invalid_argument(std::string(what) + ": dimension must be 2, 4 or 8, got " +
                                std::to_string(dim));
  }
}

void validate_state(const DensityMatrix& rho, const char* what) {
  if (std::abs(rho.trace() - 1.0) > kDerivedTol) {
    throw std::invalid_argument(std::string(what) + ": density matrix is not normalized (trace " +
                                std::to_string(rho.trace()) + ")");
  }
}

}  // namespace

bool is_supported_dim(Eigen::Index dim) { return dim == 2 || dim == 4 || dim == 8; }

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("Operator: matrix must be square");
  }
  require_dim(entries_.rows(), "Operator");
  if (!all_finite(entries_)) {
    throw std::invalid_argument("Operator: entries must be finite");
  }
}

Operator Operator::identity(int dim) {
  require_dim(dim, "Operator::identity");
  return Operator(Matrix::Identity(dim, dim));
}

Operator Operator::diagonal(std::span<const Complex> diag) {
  const auto dim = static_cast<Eigen::Index>(diag.size());
  require_dim(dim, "Operator::diagonal");
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    m(i, i) = diag[static_cast<std::size_t>(i)];
  }
  return Operator(std::move(m));
}

Operator Operator::operator*(const Operator& rhs) const {
  if (dim() != rhs.dim()) throw std::invalid_argument("Operator product: dimension mismatch");
  return Operator(entries_ * rhs.entries_);
}

Operator Operator::operator+(const Operator& rhs) const {
  if (dim() != rhs.dim()) throw std::invalid_argument("Operator sum: dimension mismatch");
  return Operator(entries_ + rhs.entries_);
}

Operator Operator::operator-(const Operator& rhs) const {
  if (dim() != rhs.dim()) throw std::invalid_argument("Operator difference: dimension mismatch");
  return Operator(entries_ - rhs.entries_);
}

Operator Operator::operator*(Complex scale) const { return Operator(entries_ * scale); }

double Operator::unitarity_deviation() const {
  const Matrix gram = entries_.adjoint() * entries_;
  return max_abs(Matrix(gram - Matrix::Identity(dim(), dim())));
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
  require_dim(amps_.size(), "PureState");
  const double norm2 = amps_.squaredNorm();
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kConstructionTol) {
    throw std::invalid_argument("PureState: amplitudes are not normalized");
  }
}

PureState PureState::normalized(const Vector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("PureState::normalized: zero or non-finite vector");
  }
  return PureState(Vector(v / norm));
}

PureState PureState::basis(int dim, int index) {
  require_dim(dim, "PureState::basis");
  if (index < 0 || index >= dim) throw std::out_of_range("PureState::basis: index");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("DensityMatrix: matrix must be square");
  }
  require_dim(entries_.rows(), "DensityMatrix");
  if (!all_finite(entries_)) {
    throw std::invalid_argument("DensityMatrix: entries must be finite");
  }
  const double scale = std::max(1.0, max_abs(entries_));
  if (max_abs(Matrix(entries_ - entries_.adjoint())) > kConstructionTol * scale) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
}

DensityMatrix DensityMatrix::zero(int dim) {
  require_dim(dim, "DensityMatrix::zero");
  return DensityMatrix(Matrix::Zero(dim, dim));
}

DensityMatrix DensityMatrix::normalized() const {
  const double tr = trace();
  if (!(tr > 0.0)) throw std::domain_error("DensityMatrix::normalized: trace is not positive");
  return DensityMatrix(Matrix(entries_ / tr));
}

DensityMatrix DensityMatrix::operator+(const DensityMatrix& rhs) const {
  DensityMatrix out = *this;
  out += rhs;
  return out;
}

DensityMatrix& DensityMatrix::operator+=(const DensityMatrix& rhs) {
  if (dim() != rhs.dim()) throw std::invalid_argument("DensityMatrix sum: dimension mismatch");
  entries_ += rhs.entries_;
  return *this;
}

DensityMatrix DensityMatrix::operator*(double scale) const {
  return DensityMatrix(Matrix(entries_ * scale));
}

DensityMatrix DensityMatrix::conjugated_by(const Operator& op) const {
  if (dim() != op.dim()) throw std::invalid_argument("conjugated_by: dimension mismatch");
  Matrix m = op.matrix() * entries_ * op.matrix().adjoint();
  // Symmetrize away the rounding asymmetry of the triple product.
  m = (0.5 * (m + m.adjoint())).eval();
  return DensityMatrix(std::move(m));
}

double DensityMatrix::weight_in(const Operator& projector) const {
  return (projector.matrix() * entries_ * projector.matrix().adjoint()).trace().real();
}

// ---------------------------------------------------------------------------
// Gates

Operator cphase(double phi) {
  const Complex d[] = {1.0, 1.0, 1.0, std::polar(1.0, phi)};
  return Operator::diagonal(d);
}

Operator phase_gate(double phi) {
  const Complex d[] = {1.0, std::polar(1.0, phi)};
  return Operator::diagonal(d);
}

Operator rz(double phi) {
  const Complex d[] = {std::polar(1.0, -phi / 2), std::polar(1.0, phi / 2)};
  return Operator::diagonal(d);
}

Operator pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return Operator(std::move(m));
}

Operator pauli_y() {
  const Complex i(0.0, 1.0);
  Matrix m(2, 2);
  m << 0.0, -i, i, 0.0;
  return Operator(std::move(m));
}

Operator pauli_z() {
  const Complex d[] = {1.0, -1.0};
  return Operator::diagonal(d);
}

Operator hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  m << s, s, s, -s;
  return Operator(std::move(m));
}

Operator basis_projector(int q1, int q2) {
  if ((q1 != 0 && q1 != 1) || (q2 != 0 && q2 != 1)) {
    throw std::out_of_range("basis_projector: bits must be 0 or 1");
  }
  Complex d[4] = {0.0, 0.0, 0.0, 0.0};
  d[2 * q1 + q2] = 1.0;
  return Operator::diagonal(d);
}

Operator even_projector() { return basis_projector(0, 0) + basis_projector(1, 1); }

Operator odd_projector() { return basis_projector(0, 1) + basis_projector(1, 0); }

Operator tensor(const Operator& a, const Operator& b) {
  const int da = a.dim();
  const int db = b.dim();
  if (da * db > 8) throw std::invalid_argument("tensor: product dimension exceeds 8");
  Matrix m(da * db, da * db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      m.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
    }
  }
  return Operator(std::move(m));
}

Operator dagger(const Operator& a) { return Operator(a.matrix().adjoint()); }

PureState apply(const Operator& a, const PureState& s) {
  if (a.dim() != s.dim()) throw std::invalid_argument("apply: dimension mismatch");
  return PureState::normalized(a.matrix() * s.amplitudes());
}

DensityMatrix outer(const PureState& s) {
  return DensityMatrix(s.amplitudes() * s.amplitudes().adjoint());
}

std::pair<PureState, PureState> measurement_kets(double phi) {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex lo = s * std::polar(1.0, -phi / 2);
  const Complex hi = s * std::polar(1.0, phi / 2);
  Vector plus(2), minus(2);
  plus << lo, hi;
  minus << lo, -hi;
  return {PureState(std::move(plus)), PureState(std::move(minus))};
}

// ---------------------------------------------------------------------------
// Sampling

PureState haar_random_state(int dim, Rng& rng) {
  require_dim(dim, "haar_random_state");
  Vector v(dim);
  for (;;) {
    for (int i = 0; i < dim; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      v(i) = Complex(re, im);
    }
    if (v.squaredNorm() > 0.0) return PureState::normalized(v);
  }
}

PureState haar_random_state(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return haar_random_state(dim, rng);
}

PureState indexed_haar_state(std::uint64_t seed, std::size_t index) {
  Rng stream(Rng::child_key(Rng::child_key(seed, 0), index));
  return haar_random_state(4, stream);
}

// ---------------------------------------------------------------------------
// Fidelity

double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("state_fidelity: dimension mismatch");
  validate_state(rho, "state_fidelity");
  validate_state(sigma, "state_fidelity");

  const HermitianSolver rho_eig(rho.matrix());
  const HermitianSolver sigma_eig(sigma.matrix());
  if (rho_eig.eigenvalues().minCoeff() < -kNegativeEigenTol ||
      sigma_eig.eigenvalues().minCoeff() < -kNegativeEigenTol) {
    throw std::invalid_argument("state_fidelity: input has a negative eigenvalue");
  }

  // F = ||sqrt(rho) sqrt(sigma)||_1^2. Working with V D^1/2 factors restricted to
  // each support keeps the null spaces out; the singular values come back accurate
  // to machine precision, unlike square roots of tiny eigenvalues of
  // sqrt(rho) sigma sqrt(rho).
  const auto support_factor = [](const HermitianSolver& eig) {
    const int dim = static_cast<int>(eig.eigenvalues().size());
    Matrix factor(dim, dim);
    int rank = 0;
    for (int k = 0; k < dim; ++k) {
      const double lambda = eig.eigenvalues()(k);
      if (lambda > kRankTol) factor.col(rank++) = eig.eigenvectors().col(k) * std::sqrt(lambda);
    }
    return Matrix(factor.leftCols(rank));
  };
  const Matrix a = support_factor(rho_eig);
  const Matrix b = support_factor(sigma_eig);
  if (a.cols() == 0 || b.cols() == 0) return 0.0;
  const Matrix cross = a.adjoint() * b;
  const double trace_norm = Eigen::JacobiSVD<Matrix>(cross).singularValues().sum();
  return trace_norm * trace_norm;
}

DensityMatrix ParitySplit::ideal_output() const {
  DensityMatrix out = DensityMatrix::zero(4);
  if (even) out += outer(*even) * p_even;
  if (odd) out += outer(*odd) * p_odd;
  return out;
}

ParitySplit parity_split(const PureState& psi) {
  if (psi.dim() != 4) throw std::invalid_argument("parity_split: expects a two-qubit state");
  ParitySplit split;
  const Vector even = even_projector().matrix() * psi.amplitudes();
  const Vector odd = odd_projector().matrix() * psi.amplitudes();
  const double pe = even.squaredNorm();
  const double po = odd.squaredNorm();
  if (pe > kAbsentBranch) {
    split.p_even = pe;
    split.even = PureState::normalized(even);
  }
  if (po > kAbsentBranch) {
    split.p_odd = po;
    split.odd = PureState::normalized(odd);
  }
  return split;
}

double rank2_fidelity(const ParitySplit& split, const DensityMatrix& rho_out) {
  if (rho_out.dim() != 4) throw std::invalid_argument("rank2_fidelity: expects a two-qubit state");
  validate_state(rho_out, "rank2_fidelity");
  if (std::abs(split.p_even + split.p_odd - 1.0) > kDerivedTol) {
    throw std::invalid_argument("rank2_fidelity: branch probabilities do not sum to one");
  }
  if (split.p_even < 0.0 || split.p_odd < 0.0) {
    throw std::invalid_argument("rank2_fidelity: negative branch probability");
  }
  const Matrix& r = rho_out.matrix();
  double ee = 0.0;
  double oo = 0.0;
  Complex eo = 0.0;
  if (split.even) {
    const Vector& e = split.even->amplitudes();
    ee = split.p_even * e.dot(r * e).real();
  }
  if (split.odd) {
    const Vector& o = split.odd->amplitudes();
    oo = split.p_odd * o.dot(r * o).real();
  }
  if (split.even && split.odd) {
    const Vector& e = split.even->amplitudes();
    const Vector& o = split.odd->amplitudes();
    if (std::abs(e.dot(o)) > kDerivedTol) {
      throw std::invalid_argument("rank2_fidelity: branch states are not orthogonal");
    }
    eo = std::sqrt(split.p_even * split.p_odd) * e.dot(r * o);
  }
  double disc = ee * oo - std::norm(eo);
  if (disc < -kConstructionTol) {
    throw std::domain_error("rank2_fidelity: negative discriminant");
  }
  disc = std::max(0.0, disc);
  return ee + oo + 2.0 * std::sqrt(disc);
}

}  // namespace paritysim
