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

// Test-side oracles written independently of the library: plain std::pow
// evaluations and hand-expanded Kraus operators.

#include <array>
#include <cmath>
#include <complex>

namespace oracle {

using C = std::complex<double>;
using Coeffs = std::array<double, 4>;

inline double cos2n(double x, int n) { return std::pow(std::cos(x / 2), 2 * n); }

inline Coeffs perfect(int n, double phi) { return {cos2n(phi, n), 0, 0, cos2n(phi, n)}; }

inline Coeffs imbalanced(int n, double phi, double d1, double d2) {
  return {cos2n(phi, n), 1 - cos2n(d2, n), 1 - cos2n(d1, n), cos2n(phi + d1 + d2, n)};
}

inline Coeffs gaussian(int n, double phi, double w) {
  const double odd = 1 - std::pow((1 + std::exp(-w * w / 2)) / 2, n);
  return {cos2n(phi, n), odd, odd, std::pow((1 + std::cos(phi) * std::exp(-w * w)) / 2, n)};
}

inline Coeffs pauli_z(int n, double phi, double p) {
  const double even = std::pow(0.5 + (0.5 - p) * std::cos(phi), n);
  const double odd = 1 - std::pow(1 - p, n);
  return {even, odd, odd, even};
}

inline Coeffs pauli_x(int n, double phi, double p) {
  const double s = std::sin(phi);
  return {cos2n(phi, n), 0, 1 - std::pow(1 - p * s * s, n), cos2n(phi, n)};
}

inline Coeffs pauli_y(int n, double phi, double p) {
  const double c = std::cos(phi);
  const double even = std::pow(0.5 + (0.5 - p) * c, n);
  return {even, 1 - std::pow(1 - p, n), 1 - std::pow(1 - p * c * c, n), even};
}

inline double max_of(const Coeffs& c) { return std::max(std::max(c[0], c[1]), std::max(c[2], c[3])); }
inline double mean_of(const Coeffs& c) { return (c[0] + c[1] + c[2] + c[3]) / 4; }

// Diagonals of the m-th even operator and the n-cycle odd operator for
// imbalanced gates phi + d1, phi + d2 measured at phi (uncorrected).
inline std::array<C, 4> imbalanced_even_diag(int m, double phi, double d1, double d2) {
  const C i(0, 1);
  const double s = phi + d1 + d2;
  return {
      i * std::sin(phi / 2) * std::pow(std::cos(phi / 2), m - 1),
      -i * std::exp(i * (m * (phi + d2) / 2)) * std::sin(d2 / 2) * std::pow(std::cos(d2 / 2), m - 1),
      -i * std::exp(i * (m * (phi + d1) / 2)) * std::sin(d1 / 2) * std::pow(std::cos(d1 / 2), m - 1),
      -i * std::exp(i * (m * phi + m * (d1 + d2) / 2)) * std::sin(s / 2) * std::pow(std::cos(s / 2), m - 1),
  };
}

inline std::array<C, 4> imbalanced_odd_diag(int n, double phi, double d1, double d2) {
  const C i(0, 1);
  const double s = phi + d1 + d2;
  return {
      std::pow(std::cos(phi / 2), n),
      std::exp(i * (n * (phi + d2) / 2)) * std::pow(std::cos(d2 / 2), n),
      std::exp(i * (n * (phi + d1) / 2)) * std::pow(std::cos(d1 / 2), n),
      std::exp(i * (n * phi + n * (d1 + d2) / 2)) * std::pow(std::cos(s / 2), n),
  };
}

}  // namespace oracle
