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

#include <concepts>
#include <functional>
#include <limits>
#include <utility>

#include "gcg/core/control_field.hpp"

namespace gcg {

/// A value of the nonsmooth part: either a finite real or "+infinity",
/// carried as an explicit flag so descent comparisons stay well defined.
class ExtendedReal {
 public:
  constexpr ExtendedReal(double value) : value_(value), feasible_(true) {}  // NOLINT

  static constexpr ExtendedReal infeasible() { return ExtendedReal(); }

  [[nodiscard]] constexpr bool feasible() const { return feasible_; }
  [[nodiscard]] constexpr double value() const {
    return feasible_ ? value_ : std::numeric_limits<double>::infinity();
  }

  friend constexpr ExtendedReal operator+(ExtendedReal a, double b) {
    return a.feasible_ ? ExtendedReal(a.value_ + b) : a;
  }
  friend constexpr ExtendedReal operator+(double b, ExtendedReal a) {
    return a + b;
  }

 private:
  constexpr ExtendedReal() : value_(0.0), feasible_(false) {}

  double value_;
  bool feasible_;
};

/// Value and gradient of the smooth part. The gradient is the Riesz
/// representative with respect to the mass-weighted pairing `inner`.
struct SmoothEval {
  double value;
  ControlField gradient;
};

// clang-format off
/// f + g with f smooth and g convex, lower semicontinuous and possibly
/// extended-valued, plus a solver of the partially linearized problem
///   min_v <grad, v> + g(v).
template <class P>
concept CompositeProblem = requires(const P& p, const ControlField& u) {
  { p.smooth(u) } -> std::same_as<SmoothEval>;
  { p.nonsmooth(u) } -> std::convertible_to<ExtendedReal>;
  { p.lmo(u) } -> std::same_as<ControlField>;
  { p.dual_norm(u) } -> std::convertible_to<double>;
};

/// Problems that can evaluate j along the segment u + s (v - u) faster than
/// by calling smooth() + nonsmooth() on each trial point.
template <class P>
concept SegmentEvaluable = CompositeProblem<P> &&
    requires(const P& p, const ControlField& u, const ControlField& v) {
  { p.segment(u, v) };
  { p.segment(u, v)(0.5) } -> std::convertible_to<ExtendedReal>;
};
// clang-format on

/// Objective value j = f + g.
template <CompositeProblem P>
ExtendedReal objective(const P& problem, const ControlField& u) {
  const ExtendedReal g = problem.nonsmooth(u);
  if (!g.feasible()) return g;
  return problem.smooth(u).value + g;
}

/// Type-erased problem assembled from callables; handy for small or
/// synthetic instances.
struct FunctionProblem {
  std::function<SmoothEval(const ControlField&)> smooth_fn;
  std::function<ExtendedReal(const ControlField&)> nonsmooth_fn;
  std::function<ControlField(const ControlField&)> lmo_fn;
  std::function<double(const ControlField&)> dual_norm_fn;

  [[nodiscard]] SmoothEval smooth(const ControlField& u) const {
    return smooth_fn(u);
  }
  [[nodiscard]] ExtendedReal nonsmooth(const ControlField& u) const {
    return nonsmooth_fn(u);
  }
  [[nodiscard]] ControlField lmo(const ControlField& p) const {
    return lmo_fn(p);
  }
  [[nodiscard]] double dual_norm(const ControlField& u) const {
    return dual_norm_fn(u);
  }
};

static_assert(CompositeProblem<FunctionProblem>);

}  // namespace gcg
