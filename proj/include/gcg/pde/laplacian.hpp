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

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <cmath>
#include <memory>
#include <span>
#include <vector>

#include "gcg/core/control_field.hpp"
#include "gcg/core/errors.hpp"
#include "gcg/pde/grid.hpp"

namespace gcg::pde {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Symmetric positive definite sparse operator with a cached Cholesky
/// factorization. Immutable after construction; copies share the factor,
/// and solves only touch local scratch, so one instance may serve
/// concurrent callers.
class DiscreteOperator {
 public:
  static constexpr double kSolveTolerance = 1e-12;

  explicit DiscreteOperator(SparseMatrix matrix)
      : state_(std::make_shared<State>(std::move(matrix))) {}

  [[nodiscard]] const SparseMatrix& matrix() const { return state_->matrix; }
  [[nodiscard]] std::size_t size() const {
    return static_cast<std::size_t>(state_->matrix.rows());
  }

  /// The operator I + scale * A.
  [[nodiscard]] DiscreteOperator shifted_identity(double scale) const {
    SparseMatrix id(state_->matrix.rows(), state_->matrix.cols());
    id.setIdentity();
    SparseMatrix m = id + scale * state_->matrix;
    m.makeCompressed();
    return DiscreteOperator(std::move(m));
  }

  /// Solves A x = b with relative residual at most kSolveTolerance.
  [[nodiscard]] std::vector<double> solve(std::span<const double> rhs) const {
    if (rhs.size() != size()) {
      throw InvalidInput("DiscreteOperator::solve: size mismatch");
    }
    const Eigen::Map<const Eigen::VectorXd> b(rhs.data(),
                                              static_cast<Eigen::Index>(rhs.size()));
    std::vector<double> out(rhs.size(), 0.0);
    Eigen::Map<Eigen::VectorXd> x(out.data(), static_cast<Eigen::Index>(out.size()));
    const double bnorm = b.norm();
    if (bnorm == 0.0) return out;

    if (state_->direct_ok) {
      x = state_->cholesky.solve(b);
      Eigen::VectorXd r = b - state_->matrix * x;
      if (r.norm() > kSolveTolerance * bnorm) {
        // one step of iterative refinement
        x += state_->cholesky.solve(r);
        r = b - state_->matrix * x;
      }
      if (r.norm() <= kSolveTolerance * bnorm) return out;
    }
    Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(kSolveTolerance);
    cg.setMaxIterations(static_cast<Eigen::Index>(10 * size() + 100));
    cg.compute(state_->matrix);
    x = cg.solveWithGuess(b, x);
    if (cg.info() != Eigen::Success) {
      throw NumericalError("DiscreteOperator::solve: CG did not converge");
    }
    return out;
  }

  [[nodiscard]] std::vector<double> apply(std::span<const double> x) const {
    const Eigen::Map<const Eigen::VectorXd> xv(x.data(),
                                               static_cast<Eigen::Index>(x.size()));
    Eigen::VectorXd y = state_->matrix * xv;
    return {y.data(), y.data() + y.size()};
  }

 private:
  struct State {
    explicit State(SparseMatrix m) : matrix(std::move(m)) {
      matrix.makeCompressed();
      cholesky.compute(matrix);
      direct_ok = cholesky.info() == Eigen::Success;
    }
    SparseMatrix matrix;
    Eigen::SimplicialLLT<SparseMatrix> cholesky;
    bool direct_ok = false;
  };
  std::shared_ptr<const State> state_;
};

/// Homogeneous Dirichlet Laplacian -Delta on the interior nodes: the 5-point
/// stencil (4, -1, -1, -1, -1)/h^2 in 2D, (2, -1, -1)/h^2 in 1D.
inline DiscreteOperator assemble_laplacian(const SpatialGrid& grid) {
  const int n = grid.n;
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  const auto N = static_cast<Eigen::Index>(grid.size());
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(N) * (grid.dim == 1 ? 3 : 5));
  if (grid.dim == 1) {
    for (int i = 0; i < n; ++i) {
      t.emplace_back(i, i, 2.0 * inv_h2);
      if (i > 0) t.emplace_back(i, i - 1, -inv_h2);
      if (i + 1 < n) t.emplace_back(i, i + 1, -inv_h2);
    }
  } else {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const int row = iy * n + ix;
        t.emplace_back(row, row, 4.0 * inv_h2);
        if (ix > 0) t.emplace_back(row, row - 1, -inv_h2);
        if (ix + 1 < n) t.emplace_back(row, row + 1, -inv_h2);
        if (iy > 0) t.emplace_back(row, row - n, -inv_h2);
        if (iy + 1 < n) t.emplace_back(row, row + n, -inv_h2);
      }
    }
  }
  SparseMatrix a(N, N);
  a.setFromTriplets(t.begin(), t.end());
  return DiscreteOperator(std::move(a));
}

/// y = K rhs, i.e. the solution of -Delta y = rhs with y = 0 on the boundary.
inline ControlField solve_poisson(const DiscreteOperator& op,
                                  const ControlField& rhs) {
  if (rhs.size() != op.size()) {
    throw InvalidInput("solve_poisson: rhs length does not match operator");
  }
  return ControlField(rhs, op.solve(rhs.values()));
}

}  // namespace gcg::pde
