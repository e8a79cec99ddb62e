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
#include "gcg/pde/laplacian.hpp"
#include "gcg/pde/norms.hpp"

namespace gcg::problems {

/// Sparse elliptic control with pointwise bounds:
///
///   min_u  1/2 ||K u - target||^2 + beta ||u||_{L1}   s.t.  lower <= u <= upper
///
/// where K solves -Delta y = u with homogeneous Dirichlet data and
/// lower <= 0 <= upper. The dual norm is the L1 norm.
class EllipticProblem {
 public:
  EllipticProblem(pde::SpatialGrid grid, double reg_beta, ControlField lower,
                  ControlField upper, ControlField target, pde::DiscreteOperator op)
      : grid_(grid),
        reg_beta_(reg_beta),
        lower_(std::move(lower)),
        upper_(std::move(upper)),
        target_(std::move(target)),
        op_(std::move(op)) {
    if (!(reg_beta_ >= 0.0)) throw InvalidInput("EllipticProblem: beta < 0");
    if (op_.size() != grid_.size() || lower_.size() != grid_.size()) {
      throw InvalidInput("EllipticProblem: data does not match the grid");
    }
    require_same_grid(lower_, upper_, "EllipticProblem");
    require_same_grid(lower_, target_, "EllipticProblem");
    double scale = 1.0;
    for (std::size_t i = 0; i < lower_.size(); ++i) {
      if (lower_[i] > 0.0 || upper_[i] < 0.0) {
        throw InvalidInput("EllipticProblem: bounds must satisfy lower <= 0 <= upper");
      }
      scale = std::max({scale, std::abs(lower_[i]), std::abs(upper_[i])});
    }
    scale_ = scale;
  }

  [[nodiscard]] const pde::SpatialGrid& grid() const { return grid_; }
  [[nodiscard]] double reg_beta() const { return reg_beta_; }
  [[nodiscard]] const ControlField& lower() const { return lower_; }
  [[nodiscard]] const ControlField& upper() const { return upper_; }
  [[nodiscard]] const ControlField& target() const { return target_; }
  [[nodiscard]] const pde::DiscreteOperator& op() const { return op_; }
  /// Largest bound magnitude (at least 1); sets feasibility and structure
  /// tolerances.
  [[nodiscard]] double scale() const { return scale_; }

  [[nodiscard]] ControlField zeros() const { return ControlField::zeros_like(lower_); }

  [[nodiscard]] ControlField state(const ControlField& u) const {
    check(u, "state");
    return pde::solve_poisson(op_, u);
  }

  /// f = 1/2 ||K u - target||^2, grad f = K (K u - target).
  [[nodiscard]] SmoothEval smooth(const ControlField& u) const {
    const ControlField resid = difference(state(u), target_);
    const double f = 0.5 * inner(resid, resid);
    return {f, pde::solve_poisson(op_, resid)};
  }

  [[nodiscard]] ExtendedReal nonsmooth(const ControlField& u) const {
    check(u, "nonsmooth");
    const double slack = 1e-12 * scale_;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] < lower_[i] - slack || u[i] > upper_[i] + slack) {
        return ExtendedReal::infeasible();
      }
    }
    return reg_beta_ * pde::l1(u);
  }

  /// Nodewise minimizer of p v + beta |v| over [lower, upper]:
  /// lower where p >= beta, upper where p <= -beta, zero otherwise.
  [[nodiscard]] ControlField lmo(const ControlField& p) const {
    check(p, "lmo");
    std::vector<double> v(p.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (p[i] >= reg_beta_) {
        v[i] = lower_[i];
      } else if (p[i] <= -reg_beta_) {
        v[i] = upper_[i];
      }
    }
    return ControlField(lower_, std::move(v));
  }

  [[nodiscard]] double dual_norm(const ControlField& u) const { return pde::l1(u); }

  /// j restricted to u + s (v - u); two solves up front, O(N) per trial s.
  class Segment {
   public:
    Segment(const EllipticProblem& prob, const ControlField& u,
            const ControlField& v)
        : prob_(&prob),
          u_(u),
          dir_(difference(v, u)),
          resid_(difference(prob.state(u), prob.target())),
          k_dir_(prob.state(dir_)) {}

    ExtendedReal operator()(double s) const {
      const auto w = u_.mass();
      const double beta = prob_->reg_beta();
      const double slack = 1e-12 * prob_->scale();
      double f = 0.0;
      double g = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const double r = resid_[i] + s * k_dir_[i];
        const double x = u_[i] + s * dir_[i];
        if (x < prob_->lower()[i] - slack || x > prob_->upper()[i] + slack) {
          return ExtendedReal::infeasible();
        }
        f += w[i] * r * r;
        g += w[i] * std::abs(x);
      }
      return 0.5 * f + beta * g;
    }

   private:
    const EllipticProblem* prob_;
    ControlField u_;
    ControlField dir_;
    ControlField resid_;
    ControlField k_dir_;
  };

  [[nodiscard]] Segment segment(const ControlField& u, const ControlField& v) const {
    return Segment(*this, u, v);
  }

  /// Uniform random point of the box.
  template <class Rng>
  [[nodiscard]] ControlField sample_feasible(Rng& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> x(lower_.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = lower_[i] + unit(rng) * (upper_[i] - lower_[i]);
    }
    return ControlField(lower_, std::move(x));
  }

 private:
  void check(const ControlField& u, const char* where) const {
    if (u.size() != grid_.size()) {
      throw InvalidInput(std::string("EllipticProblem::") + where +
                         ": dimension mismatch");
    }
  }

  pde::SpatialGrid grid_;
  double reg_beta_;
  ControlField lower_;
  ControlField upper_;
  ControlField target_;
  pde::DiscreteOperator op_;
  double scale_ = 1.0;
};

static_assert(CompositeProblem<EllipticProblem>);
static_assert(SegmentEvaluable<EllipticProblem>);

inline SmoothEval f_and_grad(const EllipticProblem& prob, const ControlField& u) {
  return prob.smooth(u);
}

inline ExtendedReal g_eval(const EllipticProblem& prob, const ControlField& u) {
  return prob.nonsmooth(u);
}

inline ControlField lmo_elliptic(const EllipticProblem& prob, const ControlField& p) {
  return prob.lmo(p);
}

struct StructureReport {
  /// Measure fraction where u is within tolerance of lower, 0 or upper.
  double three_valued_fraction = 0.0;
  /// Measure fraction where (u, p) satisfies the pointwise optimality case
  /// table: u = lower if p > beta, u = upper if p < -beta, u = 0 if
  /// |p| < beta, and u in [lower, 0] / [0, upper] on the switching sets.
  double case_consistent_fraction = 0.0;
};

inline StructureReport structure_report(const EllipticProblem& prob,
                                        const ControlField& u,
                                        const ControlField& p,
                                        double rel_tol = 1e-6) {
  require_same_grid(u, prob.lower(), "structure_report");
  require_same_grid(p, prob.lower(), "structure_report");
  const double tol = rel_tol * prob.scale();
  const double beta = prob.reg_beta();
  const double p_tol = 1e-12 * std::max(1.0, beta);
  const auto w = u.mass();
  double three = 0.0;
  double consistent = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double lo = prob.lower()[i];
    const double hi = prob.upper()[i];
    const double x = u[i];
    total += w[i];
    if (std::abs(x - lo) <= tol || std::abs(x) <= tol || std::abs(x - hi) <= tol) {
      three += w[i];
    }
    bool ok = false;
    if (p[i] > beta + p_tol) {
      ok = std::abs(x - lo) <= tol;
    } else if (p[i] < -beta - p_tol) {
      ok = std::abs(x - hi) <= tol;
    } else if (std::abs(p[i]) < beta - p_tol) {
      ok = std::abs(x) <= tol;
    } else if (p[i] > 0.0) {
      ok = x >= lo - tol && x <= tol;
    } else {
      ok = x >= -tol && x <= hi + tol;
    }
    if (ok) consistent += w[i];
  }
  return {three / total, consistent / total};
}

/// Measure of {x : | |p(x)| - beta | <= eps}.
inline double growth_measure(const EllipticProblem& prob, const ControlField& p,
                             double eps) {
  if (!(eps > 0.0)) throw InvalidInput("growth_measure: eps must be > 0");
  const auto w = p.mass();
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (std::abs(std::abs(p[i]) - prob.reg_beta()) <= eps) acc += w[i];
  }
  return acc;
}

struct ExampleInfo {
  std::string_view name;
  std::string_view description;
};

inline constexpr ExampleInfo kEllipticExamples[] = {
    {"stadler-ex1",
     "elliptic bang-bang-off control, bounds +-30, beta = 0.001"},
    {"stadler-ex3",
     "elliptic bang-bang-off control, varying upper bound, beta = 0.002"},
};

/// Builds one of the two bang-bang-off examples on an n x n interior grid.
///
/// "stadler-ex1": lower = -30, upper = 30,
///   y_d = sin(2 pi x1) sin(2 pi x2) exp(2 x1) / 6, source 0, beta = 0.001.
/// "stadler-ex3": lower = -10, upper = 0 for x1 <= 1/4 and -5 + 20 x1
///   beyond, y_d = sin(4 pi x1) cos(8 pi x2) exp(2 x1),
///   source = 10 cos(8 pi x1) sin(8 pi x2), beta = 0.002.
/// The target stored in the problem is y_d - K source.
inline EllipticProblem make_elliptic_example(std::string_view name, int n) {
  using std::numbers::pi;
  const auto grid = pde::SpatialGrid::square(n);
  pde::DiscreteOperator op = pde::assemble_laplacian(grid);
  if (name == "stadler-ex1") {
    ControlField lower = grid.sample([](double, double) { return -30.0; });
    ControlField upper = grid.sample([](double, double) { return 30.0; });
    ControlField yd = grid.sample([](double x1, double x2) {
      return std::sin(2 * pi * x1) * std::sin(2 * pi * x2) * std::exp(2 * x1) / 6.0;
    });
    return EllipticProblem(grid, 0.001, std::move(lower), std::move(upper),
                           std::move(yd), std::move(op));
  }
  if (name == "stadler-ex3") {
    ControlField lower = grid.sample([](double, double) { return -10.0; });
    ControlField upper = grid.sample(
        [](double x1, double) { return x1 <= 0.25 ? 0.0 : -5.0 + 20.0 * x1; });
    ControlField yd = grid.sample([](double x1, double x2) {
      return std::sin(4 * pi * x1) * std::cos(8 * pi * x2) * std::exp(2 * x1);
    });
    ControlField source = grid.sample([](double x1, double x2) {
      return 10.0 * std::cos(8 * pi * x1) * std::sin(8 * pi * x2);
    });
    ControlField target = difference(yd, pde::solve_poisson(op, source));
    return EllipticProblem(grid, 0.002, std::move(lower), std::move(upper),
                           std::move(target), std::move(op));
  }
  throw InvalidInput("make_elliptic_example: unknown example '" +
                     std::string(name) + "'");
}

}  // namespace gcg::problems
