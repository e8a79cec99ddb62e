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
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gcg/core/control_field.hpp"
#include "gcg/core/errors.hpp"
#include "gcg/pde/grid.hpp"
#include "gcg/pde/laplacian.hpp"

namespace gcg::pde {

/// Implicit Euler for  y' = a Delta y + u,  y(0) = 0:
///   (I + tau a A) y^m = y^{m-1} + tau u^m,   m = 1..nt,
/// together with its exact discrete transpose for the backward adjoint
///   (I + tau a A) p^m = p^{m+1} + tau r^m,   p^{nt+1} = 0.
/// With the uniform space-time weights tau h^d the two maps satisfy
/// (forward(u), w)_Q = (u, adjoint(w))_Q.
class HeatOperator {
 public:
  HeatOperator(SpaceTimeGrid grid, double conductivity,
               const DiscreteOperator& laplacian)
      : grid_(grid),
        conductivity_(conductivity),
        step_(check(grid, conductivity, laplacian)
                  .shifted_identity(grid.tau() * conductivity)) {}

  HeatOperator(SpaceTimeGrid grid, double conductivity)
      : HeatOperator(grid, conductivity, assemble_laplacian(grid.space)) {}

  [[nodiscard]] const SpaceTimeGrid& grid() const { return grid_; }
  [[nodiscard]] double conductivity() const { return conductivity_; }
  [[nodiscard]] const DiscreteOperator& step_operator() const { return step_; }

  [[nodiscard]] ControlField forward(const ControlField& u) const {
    check_field(u, "HeatOperator::forward");
    const std::size_t ns = grid_.slice_size();
    const double tau = grid_.tau();
    std::vector<double> y(u.size());
    std::vector<double> rhs(ns, 0.0);
    for (int m = 0; m < grid_.nt; ++m) {
      const std::size_t off = static_cast<std::size_t>(m) * ns;
      for (std::size_t i = 0; i < ns; ++i) rhs[i] += tau * u[off + i];
      rhs = step_.solve(rhs);
      std::copy(rhs.begin(), rhs.end(), y.begin() + static_cast<std::ptrdiff_t>(off));
    }
    return ControlField(u, std::move(y));
  }

  [[nodiscard]] ControlField adjoint(const ControlField& r) const {
    check_field(r, "HeatOperator::adjoint");
    const std::size_t ns = grid_.slice_size();
    const double tau = grid_.tau();
    std::vector<double> p(r.size());
    std::vector<double> rhs(ns, 0.0);
    for (int m = grid_.nt - 1; m >= 0; --m) {
      const std::size_t off = static_cast<std::size_t>(m) * ns;
      for (std::size_t i = 0; i < ns; ++i) rhs[i] += tau * r[off + i];
      rhs = step_.solve(rhs);
      std::copy(rhs.begin(), rhs.end(), p.begin() + static_cast<std::ptrdiff_t>(off));
    }
    return ControlField(r, std::move(p));
  }

 private:
  static const DiscreteOperator& check(const SpaceTimeGrid& grid, double a,
                                       const DiscreteOperator& lap) {
    if (!(a > 0.0)) throw InvalidInput("HeatOperator: conductivity must be > 0");
    if (lap.size() != grid.slice_size()) {
      throw InvalidInput("HeatOperator: Laplacian does not match the grid");
    }
    return lap;
  }

  void check_field(const ControlField& f, const char* where) const {
    if (f.size() != grid_.size()) {
      throw InvalidInput(std::string(where) + ": field size does not match grid");
    }
  }

  SpaceTimeGrid grid_;
  double conductivity_;
  DiscreteOperator step_;
};

inline ControlField heat_forward(const ControlField& u, const SpaceTimeGrid& grid,
                                 double a) {
  return HeatOperator(grid, a).forward(u);
}

inline ControlField heat_adjoint(const ControlField& resid,
                                 const SpaceTimeGrid& grid, double a) {
  return HeatOperator(grid, a).adjoint(resid);
}

}  // namespace gcg::pde
