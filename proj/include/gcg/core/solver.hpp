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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcg/core/armijo.hpp"
#include "gcg/core/control_field.hpp"
#include "gcg/core/errors.hpp"
#include "gcg/core/problem.hpp"

namespace gcg {

/// Relative floating-point slack used for every "mathematically >= 0"
/// quantity (gap, residual, descent). Scaled by |j(u0)| + 1.
inline constexpr double kRelativeSlack = 1e-12;

inline double slack_for(double j0) { return kRelativeSlack * (std::abs(j0) + 1.0); }

/// Psi(u) = <grad, u - v> + g(u) - g(v) for v an LMO output at grad.
///
/// The value is nonnegative in exact arithmetic. Results in [-slack, 0) are
/// clamped to 0; anything more negative means the oracle did not minimize.
inline double dual_gap(const ControlField& u, const ControlField& grad,
                       double g_u, const ControlField& v, double g_v,
                       double slack = kRelativeSlack) {
  if (!std::isfinite(g_u) || !std::isfinite(g_v)) {
    throw InvalidInput("dual_gap: nonsmooth values must be finite");
  }
  const double gap = inner(grad, difference(u, v)) + g_u - g_v;
  if (!std::isfinite(gap)) throw InvalidInput("dual_gap: non-finite result");
  if (gap < 0.0) {
    if (gap >= -slack) return 0.0;
    throw BrokenOracle("dual_gap: negative gap " + std::to_string(gap) +
                       " beyond rounding slack");
  }
  return gap;
}

struct SolverConfig {
  double gap_tol = 1e-10;
  int max_iter = 1000;
  ArmijoParams armijo{};
  /// Reference solution for the error columns of the history.
  std::optional<ControlField> record_errors_against{};

  void validate() const {
    if (!(gap_tol >= 0.0)) throw InvalidInput("SolverConfig: gap_tol < 0");
    if (max_iter < 1) throw InvalidInput("SolverConfig: max_iter < 1");
    armijo.validate();
  }
};

/// State at the start of iteration k and the step taken from it. The last
/// record of a run has step 0 (no step was taken).
struct IterateRecord {
  int k = 0;
  double j_value = 0.0;
  double gap = 0.0;
  double step = 0.0;
  int backtracks = 0;
  std::optional<double> err_u{};
  std::optional<double> err_v{};
  double dual_norm_u = 0.0;
  double dual_norm_v = 0.0;
  double dual_norm_direction = 0.0;
};

enum class SolveStatus { Converged, MaxIterReached, LineSearchFailed };

inline std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIterReached: return "MaxIterReached";
    case SolveStatus::LineSearchFailed: return "LineSearchFailed";
  }
  return "Unknown";
}

struct SolveResult {
  ControlField final_iterate;
  /// Gradient of f and LMO output at the final iterate.
  ControlField final_gradient;
  ControlField final_direction;
  std::vector<IterateRecord> history;
  SolveStatus status = SolveStatus::MaxIterReached;
  double slack = kRelativeSlack;

  [[nodiscard]] int iterations() const {
    return static_cast<int>(history.size()) - 1;
  }
};

/// Generalized conditional gradient method with quasi-Armijo-Goldstein
/// steps.
///
/// Each pass evaluates the gradient at u^k, calls the LMO, and computes the
/// gap Psi(u^k). The loop stops when Psi(u^k) <= gap_tol, after max_iter
/// steps, or when backtracking finds no admissible step. Otherwise
/// u^{k+1} = u^k + s^k (v^k - u^k).
template <CompositeProblem P>
SolveResult gcg_solve(const P& problem, const ControlField& u0,
                      const SolverConfig& config) {
  config.validate();
  if (config.record_errors_against) {
    require_same_grid(u0, *config.record_errors_against, "gcg_solve");
  }
  const ExtendedReal g0 = problem.nonsmooth(u0);
  if (!g0.feasible()) {
    throw InvalidInput("gcg_solve: starting point is outside dom g");
  }

  ControlField u = u0;
  std::vector<IterateRecord> history;
  double slack = 0.0;
  SolveStatus status = SolveStatus::MaxIterReached;

  for (int k = 0;; ++k) {
    SmoothEval sm = problem.smooth(u);
    const ExtendedReal g_u = problem.nonsmooth(u);
    ControlField v = problem.lmo(sm.gradient);
    const ExtendedReal g_v = problem.nonsmooth(v);
    if (!g_v.feasible()) {
      throw BrokenOracle("gcg_solve: LMO returned an infeasible point");
    }
    const double j = sm.value + g_u.value();
    if (k == 0) slack = slack_for(j);
    const double gap =
        dual_gap(u, sm.gradient, g_u.value(), v, g_v.value(), slack);

    IterateRecord rec;
    rec.k = k;
    rec.j_value = j;
    rec.gap = gap;
    rec.dual_norm_u = problem.dual_norm(u);
    rec.dual_norm_v = problem.dual_norm(v);
    const ControlField direction = difference(v, u);
    rec.dual_norm_direction = problem.dual_norm(direction);
    if (const auto& ref = config.record_errors_against) {
      rec.err_u = problem.dual_norm(difference(u, *ref));
      rec.err_v = problem.dual_norm(difference(v, *ref));
    }

    const auto finish = [&](SolveStatus st) {
      history.push_back(rec);
      status = st;
      return SolveResult{std::move(u), std::move(sm.gradient), std::move(v),
                         std::move(history), status, slack};
    };

    if (gap <= config.gap_tol) return finish(SolveStatus::Converged);
    if (k >= config.max_iter) return finish(SolveStatus::MaxIterReached);

    const ArmijoResult ls = armijo_step(problem, u, v, j, gap, config.armijo);
    if (!ls.accepted) return finish(SolveStatus::LineSearchFailed);

    rec.step = ls.step;
    rec.backtracks = ls.backtracks;
    history.push_back(rec);
    u = lerp(u, v, ls.step);
  }
}

}  // namespace gcg
