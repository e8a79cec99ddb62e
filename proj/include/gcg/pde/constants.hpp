// Copyright 2026 The gcg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "gcg/core/errors.hpp"
#include "gcg/pde/laplacian.hpp"

namespace gcg::pde {

/// Discrete constant c of  ||K u||_{L2} <= c ||u||_{L1}  for K = A^{-1}.
///
/// The L1 unit ball is the convex hull of the atoms e_j / w_j, so the
/// supremum is attained at one of them: c = max_j ||K e_j||_{L2} / w_j.
/// Costs one solve per node.
inline double estimate_c_constant(const DiscreteOperator& op,
                                  std::span<const double> mass) {
  if (mass.size() != op.size()) {
    throw InvalidInput("estimate_c_constant: weights do not match operator");
  }
  std::vector<double> e(op.size(), 0.0);
  double best = 0.0;
  for (std::size_t j = 0; j < e.size(); ++j) {
    e[j] = 1.0;
    const std::vector<double> col = op.solve(e);
    e[j] = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < col.size(); ++i) acc += mass[i] * col[i] * col[i];
    best = std::max(best, std::sqrt(acc) / mass[j]);
  }
  return best;
}

/// Smallest eigenvalue of a symmetric positive definite operator by inverse
/// iteration from the constant vector.
inline double smallest_eigenvalue(const DiscreteOperator& op,
                                  int max_iterations = 500,
                                  double tolerance = 1e-14) {
  std::vector<double> x(op.size(), 1.0 / std::sqrt(static_cast<double>(op.size())));
  double lambda = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    std::vector<double> y = op.solve(x);
    double norm = 0.0;
    double xy = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      norm += y[i] * y[i];
      xy += x[i] * y[i];
    }
    norm = std::sqrt(norm);
    const double next = 1.0 / xy;  // Rayleigh quotient of A^{-1} at x
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] / norm;
    if (it > 0 && std::abs(next - lambda) <= tolerance * std::abs(next)) {
      return next;
    }
    lambda = next;
  }
  return lambda;
}

/// Constant c of  ||K u||_{L2(Q)} <= c ||u||_{L1(I;L2)}  for the implicit
/// Euler solution map. A unit-norm atom concentrated on the first slice along
/// the lowest eigenvector of A is extremal, which gives
///   c^2 = tau * sum_{k=1}^{nt} b^{2k},   b = 1 / (1 + tau a lambda_min).
inline double heat_c_constant(double lambda_min, double tau, double a, int nt) {
  if (!(lambda_min > 0.0) || !(tau > 0.0) || !(a > 0.0) || nt < 1) {
    throw InvalidInput("heat_c_constant: inputs must be positive");
  }
  const double b2 = std::pow(1.0 / (1.0 + tau * a * lambda_min), 2);
  double acc = 0.0;
  double power = 1.0;
  for (int k = 1; k <= nt; ++k) {
    power *= b2;
    acc += power;
  }
  return std::sqrt(tau * acc);
}

}  // namespace gcg::pde
