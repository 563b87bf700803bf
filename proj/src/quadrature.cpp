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

#include "paritysim/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace paritysim {

QuadratureRule gauss_hermite(int points) {
  if (points < 1) throw std::invalid_argument("gauss_hermite: need at least one point");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(points, points);
  for (int k = 1; k < points; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(0.5 * k);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  const double mu0 = std::sqrt(3.14159265358979323846);
  QuadratureRule rule;
  for (int k = 0; k < points; ++k) {
    const double v = solver.eigenvectors()(0, k);
    rule.nodes.push_back(solver.eigenvalues()(k));
    rule.weights.push_back(mu0 * v * v);
  }
  return rule;
}

QuadratureRule gaussian_expectation_rule(int points, double sigma) {
  QuadratureRule rule = gauss_hermite(points);
  const double scale = std::sqrt(2.0) * sigma;
  const double norm = 1.0 / std::sqrt(3.14159265358979323846);
  for (auto& x : rule.nodes) x *= scale;
  for (auto& w : rule.weights) w *= norm;
  return rule;
}

}  // namespace paritysim
