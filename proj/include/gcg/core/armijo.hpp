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

#include <cmath>
#include <limits>
#include <string>

#include "gcg/core/control_field.hpp"
#include "gcg/core/errors.hpp"
#include "gcg/core/problem.hpp"

namespace gcg {

/// Constants of the quasi-Armijo-Goldstein rule: accept s = gamma^n for the
/// smallest n >= 0 with  alpha * s * gap <= j(u) - j(u + s (v - u)).
struct ArmijoParams {
  double alpha = 0.5;
  double gamma = 0.99;
  int max_backtracks = 5000;

  void validate() const {
    if (!(alpha > 0.0 && alpha <= 0.5)) {
      throw InvalidInput("ArmijoParams: alpha must lie in (0, 1/2]");
    }
    if (!(gamma > 0.0 && gamma < 1.0)) {
      throw InvalidInput("ArmijoParams: gamma must lie in (0, 1)");
    }
    if (max_backtracks < 1) {
      throw InvalidInput("ArmijoParams: max_backtracks must be >= 1");
    }
  }
};

struct ArmijoResult {
  bool accepted = false;
  double step = 0.0;
  int backtracks = 0;
  double j_new = 0.0;
};

/// Left-hand side minus right-hand side of the sufficient decrease test;
/// the test passes iff the returned value is <= 0.
inline double armijo_defect(double alpha, double step, double gap, double j_u,
                            const ExtendedReal& j_trial) {
  if (!j_trial.feasible()) return std::numeric_limits<double>::infinity();
  return alpha * step * gap - (j_u - j_trial.value());
}

namespace detail {

template <class Eval>
ArmijoResult backtrack(Eval&& j_at, double j_u, double gap,
                       const ArmijoParams& params) {
  for (int n = 0; n <= params.max_backtracks; ++n) {
    const double s = std::pow(params.gamma, n);
    const ExtendedReal j_trial = j_at(s);
    if (armijo_defect(params.alpha, s, gap, j_u, j_trial) <= 0.0) {
      return {true, s, n, j_trial.value()};
    }
  }
  return {false, 0.0, params.max_backtracks, j_u};
}

}  // namespace detail

/// Quasi-Armijo-Goldstein backtracking from the full step s = 1.
///
/// `j_u` must equal j(u) and `gap` the dual gap at u for the direction v.
/// A result with `accepted == false` means no n <= max_backtracks passed,
/// which in floating point signals a gap that is zero up to rounding or an
/// inconsistent oracle.
template <CompositeProblem P>
ArmijoResult armijo_step(const P& problem, const ControlField& u,
                         const ControlField& v, double j_u, double gap,
                         const ArmijoParams& params) {
  params.validate();
  if (!(gap > 0.0) || !std::isfinite(gap)) {
    throw InvalidInput("armijo_step: gap must be positive and finite, got " +
                       std::to_string(gap));
  }
  if (!std::isfinite(j_u)) throw InvalidInput("armijo_step: j(u) not finite");
  require_same_grid(u, v, "armijo_step");

  if constexpr (SegmentEvaluable<P>) {
    auto along = problem.segment(u, v);
    return detail::backtrack(
        [&](double s) { return ExtendedReal(along(s)); }, j_u, gap, params);
  } else {
    return detail::backtrack(
        [&](double s) { return objective(problem, lerp(u, v, s)); }, j_u, gap,
        params);
  }
}

template <CompositeProblem P>
ArmijoResult armijo_step(const P& problem, const ControlField& u,
                         const ControlField& v, double gap,
                         const ArmijoParams& params) {
  const ExtendedReal j_u = objective(problem, u);
  if (!j_u.feasible()) throw InvalidInput("armijo_step: u is infeasible");
  return armijo_step(problem, u, v, j_u.value(), gap, params);
}

}  // namespace gcg
