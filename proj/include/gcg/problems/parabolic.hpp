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
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gcg/core/control_field.hpp"
#include "gcg/core/errors.hpp"
#include "gcg/core/problem.hpp"
#include "gcg/pde/grid.hpp"
#include "gcg/pde/heat.hpp"
#include "gcg/pde/norms.hpp"
#include "gcg/problems/elliptic.hpp"

namespace gcg::problems {

/// Heat-equation tracking with directional (temporal group) sparsity:
///
///   min_u  1/2 int_0^T ||y(t) - y_d(t)||^2 dt + alpha int_0^T ||u(t)|| dt
///   s.t.   ||u(t)||_{L2(Omega)} <= M  for every t,
///
/// with y' = a Delta y + u, y(0) = 0, discretized by implicit Euler. The dual
/// norm is the L1(I; L2) norm.
class ParabolicProblem {
 public:
  ParabolicProblem(pde::SpaceTimeGrid grid, double reg_alpha, double ball_radius,
                   double conductivity, ControlField target)
      : grid_(grid),
        reg_alpha_(reg_alpha),
        ball_radius_(ball_radius),
        target_(std::move(target)),
        heat_(grid, conductivity) {
    if (!(reg_alpha_ >= 0.0)) throw InvalidInput("ParabolicProblem: alpha < 0");
    if (!(ball_radius_ > 0.0)) throw InvalidInput("ParabolicProblem: M <= 0");
    if (target_.size() != grid_.size()) {
      throw InvalidInput("ParabolicProblem: target does not match the grid");
    }
  }

  [[nodiscard]] const pde::SpaceTimeGrid& grid() const { return grid_; }
  [[nodiscard]] double reg_alpha() const { return reg_alpha_; }
  [[nodiscard]] double ball_radius() const { return ball_radius_; }
  [[nodiscard]] double conductivity() const { return heat_.conductivity(); }
  [[nodiscard]] const ControlField& target() const { return target_; }
  [[nodiscard]] const pde::HeatOperator& heat() const { return heat_; }

  [[nodiscard]] ControlField zeros() const { return ControlField::zeros_like(target_); }

  [[nodiscard]] ControlField state(const ControlField& u) const {
    check(u, "state");
    return heat_.forward(u);
  }

  /// f = 1/2 sum_m tau ||y^m - y_d^m||^2; the gradient is the discrete
  /// adjoint state driven by the tracking residual.
  [[nodiscard]] SmoothEval smooth(const ControlField& u) const {
    const ControlField resid = difference(state(u), target_);
    return {0.5 * inner(resid, resid), heat_.adjoint(resid)};
  }

  [[nodiscard]] ExtendedReal nonsmooth(const ControlField& u) const {
    check(u, "nonsmooth");
    const auto norms = pde::slice_norms(u);
    const double limit = ball_radius_ * (1.0 + 1e-12);
    double acc = 0.0;
    for (double n : norms) {
      if (n > limit) return ExtendedReal::infeasible();
      acc += n;
    }
    return reg_alpha_ * grid_.tau() * acc;
  }

  /// Slicewise: -M p(t)/||p(t)|| where ||p(t)|| >= alpha, zero elsewhere.
  /// A zero slice maps to zero (only reachable for alpha = 0).
  [[nodiscard]] ControlField lmo(const ControlField& p) const {
    check(p, "lmo");
    const auto norms = pde::slice_norms(p);
    const std::size_t ns = grid_.slice_size();
    std::vector<double> v(p.size(), 0.0);
    for (std::size_t m = 0; m < norms.size(); ++m) {
      if (norms[m] >= reg_alpha_ && norms[m] > 0.0) {
        const double c = -ball_radius_ / norms[m];
        for (std::size_t i = m * ns; i < (m + 1) * ns; ++i) v[i] = c * p[i];
      }
    }
    return ControlField(target_, std::move(v));
  }

  [[nodiscard]] double dual_norm(const ControlField& u) const {
    return pde::group_l1_time(u);
  }

  class Segment {
   public:
    Segment(const ParabolicProblem& prob, const ControlField& u,
            const ControlField& v)
        : prob_(&prob),
          u_(u),
          dir_(difference(v, u)),
          resid_(difference(prob.state(u), prob.target())),
          k_dir_(prob.state(dir_)) {}

    ExtendedReal operator()(double s) const {
      const auto w = u_.mass();
      const std::size_t ns = prob_->grid().slice_size();
      const double tau = prob_->grid().tau();
      const double limit = prob_->ball_radius() * (1.0 + 1e-12);
      double f = 0.0;
      double g = 0.0;
      for (std::size_t m = 0; m * ns < w.size(); ++m) {
        double sq = 0.0;
        for (std::size_t i = m * ns; i < (m + 1) * ns; ++i) {
          const double r = resid_[i] + s * k_dir_[i];
          const double x = u_[i] + s * dir_[i];
          f += w[i] * r * r;
          sq += w[i] * x * x;
        }
        const double norm = std::sqrt(sq / tau);
        if (norm > limit) return ExtendedReal::infeasible();
        g += norm;
      }
      return 0.5 * f + prob_->reg_alpha() * tau * g;
    }

   private:
    const ParabolicProblem* prob_;
    ControlField u_;
    ControlField dir_;
    ControlField resid_;
    ControlField k_dir_;
  };

  [[nodiscard]] Segment segment(const ControlField& u, const ControlField& v) const {
    return Segment(*this, u, v);
  }

  /// Each slice is zero with probability 1/2 and otherwise a random direction
  /// scaled to a uniform radius in [0, M].
  template <class Rng>
  [[nodiscard]] ControlField sample_feasible(Rng& rng) const {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t ns = grid_.slice_size();
    const double w = grid_.space.cell_measure();
    std::vector<double> x(grid_.size());
    for (std::size_t m = 0; m < static_cast<std::size_t>(grid_.nt); ++m) {
      double sq = 0.0;
      for (std::size_t i = m * ns; i < (m + 1) * ns; ++i) {
        x[i] = normal(rng);
        sq += w * x[i] * x[i];
      }
      const bool off = unit(rng) < 0.5;
      const double c = off ? 0.0 : ball_radius_ * unit(rng) / std::sqrt(sq);
      for (std::size_t i = m * ns; i < (m + 1) * ns; ++i) x[i] *= c;
    }
    return ControlField(target_, std::move(x));
  }

 private:
  void check(const ControlField& u, const char* where) const {
    if (u.size() != grid_.size()) {
      throw InvalidInput(std::string("ParabolicProblem::") + where +
                         ": dimension mismatch");
    }
  }

  pde::SpaceTimeGrid grid_;
  double reg_alpha_;
  double ball_radius_;
  ControlField target_;
  pde::HeatOperator heat_;
};

static_assert(CompositeProblem<ParabolicProblem>);
static_assert(SegmentEvaluable<ParabolicProblem>);

inline SmoothEval f_and_grad(const ParabolicProblem& prob, const ControlField& u) {
  return prob.smooth(u);
}

inline ExtendedReal g_eval(const ParabolicProblem& prob, const ControlField& u) {
  return prob.nonsmooth(u);
}

inline ControlField lmo_parabolic(const ParabolicProblem& prob,
                                  const ControlField& p) {
  return prob.lmo(p);
}

/// ||u(t_m)|| and ||p(t_m)|| for every time level.
struct TimeProfile {
  std::vector<double> control_norms;
  std::vector<double> adjoint_norms;
};

inline TimeProfile time_profile(const ParabolicProblem& prob, const ControlField& u,
                                const ControlField& p) {
  require_same_grid(u, prob.target(), "time_profile");
  require_same_grid(p, prob.target(), "time_profile");
  return {pde::slice_norms(u), pde::slice_norms(p)};
}

/// Time measure of the slices whose norm lies in {0, M} up to rel_tol * M.
inline double switching_fraction(const ParabolicProblem& prob,
                                 const TimeProfile& profile,
                                 double rel_tol = 1e-6) {
  const double m = prob.ball_radius();
  double hits = 0.0;
  for (double n : profile.control_norms) {
    if (std::abs(n) <= rel_tol * m || std::abs(n - m) <= rel_tol * m) hits += 1.0;
  }
  return hits / static_cast<double>(profile.control_norms.size());
}

/// Time measure of {t : | ||p(t)|| - alpha | <= eps}.
inline double growth_measure_time(const ParabolicProblem& prob,
                                  const ControlField& p, double eps) {
  if (!(eps > 0.0)) throw InvalidInput("growth_measure_time: eps must be > 0");
  double acc = 0.0;
  for (double n : pde::slice_norms(p)) {
    if (std::abs(n - prob.reg_alpha()) <= eps) acc += prob.grid().tau();
  }
  return acc;
}

/// Smallest observed ratio (||p|| - (p, v)) / (2 ||p|| ||u - v||^2) with
/// u = p/||p|| over random v in the closed unit ball (half of them on the
/// sphere). Points v within 1e-8 of u are skipped.
template <class Rng>
double power_convexity_check(const ControlField& p, int trials, Rng& rng) {
  const double pn = pde::l2(p);
  if (!(pn > 0.0)) throw InvalidInput("power_convexity_check: p must be nonzero");
  const ControlField u = scaled(p, 1.0 / pn);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> x(p.size());
  for (int t = 0; t < trials; ++t) {
    for (double& xi : x) xi = normal(rng);
    ControlField v(p, x);
    const double radius = (t % 2 == 0) ? 1.0 : unit(rng);
    v = scaled(v, radius / pde::l2(v));
    const double dist = pde::l2(difference(u, v));
    if (dist < 1e-8) continue;
    const double ratio = (pn - inner(p, v)) / (2.0 * pn * dist * dist);
    best = std::min(best, ratio);
  }
  return best;
}

inline constexpr ExampleInfo kParabolicExamples[] = {
    {"parabolic-ex",
     "heat equation on the unit square, temporal group sparsity, a = 0.7"},
    {"parabolic-ex-1d",
     "1D variant of parabolic-ex for quick runs; not one of the reference "
     "examples"},
};

/// Directional-sparsity example on [0,1]^d x [0,1] with a = 0.7,
/// alpha = 0.0035, M = 0.8 and
///   y_d = sin(2 pi x1) sin(2 pi x2) sin(pi t) exp(2 x1) / 6
/// ("parabolic-ex-1d" drops the x2 factor and lives on the unit interval).
inline ParabolicProblem make_parabolic_example(std::string_view name, int nx,
                                               int nt) {
  using std::numbers::pi;
  constexpr double kConductivity = 0.7;
  constexpr double kAlpha = 0.0035;
  constexpr double kRadius = 0.8;
  if (name == "parabolic-ex") {
    const auto grid = pde::SpaceTimeGrid::make(pde::SpatialGrid::square(nx), nt);
    ControlField yd = grid.sample([](double x1, double x2, double t) {
      return std::sin(2 * pi * x1) * std::sin(2 * pi * x2) * std::sin(pi * t) *
             std::exp(2 * x1) / 6.0;
    });
    return ParabolicProblem(grid, kAlpha, kRadius, kConductivity, std::move(yd));
  }
  if (name == "parabolic-ex-1d") {
    const auto grid = pde::SpaceTimeGrid::make(pde::SpatialGrid::interval(nx), nt);
    ControlField yd = grid.sample([](double x1, double, double t) {
      return std::sin(2 * pi * x1) * std::sin(pi * t) * std::exp(2 * x1) / 6.0;
    });
    return ParabolicProblem(grid, kAlpha, kRadius, kConductivity, std::move(yd));
  }
  throw InvalidInput("make_parabolic_example: unknown example '" +
                     std::string(name) + "'");
}

}  // namespace gcg::problems
