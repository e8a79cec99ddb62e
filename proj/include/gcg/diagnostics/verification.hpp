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
#include <random>
#include <span>
#include <vector>

#include "gcg/core/control_field.hpp"
#include "gcg/core/errors.hpp"
#include "gcg/core/problem.hpp"
#include "gcg/core/solver.hpp"
#include "gcg/pde/constants.hpp"
#include "gcg/problems/elliptic.hpp"
#include "gcg/problems/parabolic.hpp"

namespace gcg::diagnostics {

struct EnvelopeCheck {
  bool holds = true;
  /// First k with r_k > r_0 / (1 + q k) + eps_fp; -1 when none.
  int first_violation = -1;
};

/// r_k <= r_0 / (1 + q k) + eps_fp for all k.
inline EnvelopeCheck check_envelope(std::span<const double> r, double q,
                                    double eps_fp) {
  EnvelopeCheck out;
  if (r.empty()) return out;
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double bound = r[0] / (1.0 + q * static_cast<double>(k)) + eps_fp;
    if (r[k] > bound) {
      out.holds = false;
      out.first_violation = static_cast<int>(k);
      return out;
    }
  }
  return out;
}

/// Largest dual norm of any iterate or LMO output along the run.
inline double measured_mstar(std::span<const IterateRecord> history) {
  double m = 0.0;
  for (const auto& rec : history) {
    m = std::max({m, rec.dual_norm_u, rec.dual_norm_v});
  }
  return m;
}

/// First index with r_k <= 1, or -1.
inline int first_index_below_one(std::span<const double> r) {
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k] <= 1.0) return static_cast<int>(k);
  }
  return -1;
}

/// Lipschitz surrogate L = c^2 with ||K u|| <= c ||u||_*.
inline double lipschitz_estimate(const problems::EllipticProblem& prob) {
  const double c = pde::estimate_c_constant(prob.op(), prob.zeros().mass());
  return c * c;
}

inline double lipschitz_estimate(const problems::ParabolicProblem& prob) {
  const auto& g = prob.grid();
  const pde::DiscreteOperator lap = pde::assemble_laplacian(g.space);
  const double lambda = pde::smallest_eigenvalue(lap);
  const double c = pde::heat_c_constant(lambda, g.tau(), prob.conductivity(), g.nt);
  return c * c;
}

/// Growth measures on the given eps grid, plus the total measure that
/// saturates them.
struct GrowthSamples {
  std::vector<double> epsilons;
  std::vector<double> measures;
  double total = 0.0;
};

inline GrowthSamples growth_samples(const problems::EllipticProblem& prob,
                                    const ControlField& p,
                                    std::span<const double> epsilons) {
  GrowthSamples s{{epsilons.begin(), epsilons.end()}, {}, p.measure()};
  for (double e : epsilons) s.measures.push_back(problems::growth_measure(prob, p, e));
  return s;
}

inline GrowthSamples growth_samples(const problems::ParabolicProblem& prob,
                                    const ControlField& p,
                                    std::span<const double> epsilons) {
  GrowthSamples s{{epsilons.begin(), epsilons.end()}, {}, prob.grid().horizon};
  for (double e : epsilons) {
    s.measures.push_back(problems::growth_measure_time(prob, p, e));
  }
  return s;
}

/// Smallest observed ratio
///   (<p_ref, u - u_ref> + g(u) - g(u_ref)) / ||u - u_ref||_*^q
/// over random feasible u. A positive value is an empirical growth constant.
/// Even trials use a uniform feasible draw w; odd trials move towards it,
/// u = u_ref + t (w - u_ref) with t = 10^(-3 U), to probe small distances.
template <class P, class Rng>
double strengthened_first_order_check(const P& prob, const ControlField& u_ref,
                                      const ControlField& p_ref, double q,
                                      int trials, Rng& rng) {
  if (!(q >= 1.0)) throw InvalidInput("strengthened_first_order_check: q < 1");
  const ExtendedReal g_ref = prob.nonsmooth(u_ref);
  if (!g_ref.feasible()) {
    throw InvalidInput("strengthened_first_order_check: reference is infeasible");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double best = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    ControlField u = prob.sample_feasible(rng);
    if (t % 2 == 1) u = lerp(u_ref, u, std::pow(10.0, -3.0 * unit(rng)));
    const ControlField d = difference(u, u_ref);
    const double dist = prob.dual_norm(d);
    if (!(dist > 0.0)) continue;
    const double num =
        inner(p_ref, d) + prob.nonsmooth(u).value() - g_ref.value();
    best = std::min(best, num / std::pow(dist, q));
  }
  return best;
}

struct CouplingCheck {
  bool holds = true;
  int first_violation = -1;
  /// Largest err_u - (r / theta)^(1/q) seen.
  double worst_excess = -std::numeric_limits<double>::infinity();
};

/// ||u^k - u_ref||_* <= (r_k / theta)^(1/q) + eps_fp along a run whose
/// history carries err_u against the same reference.
inline CouplingCheck residual_iterate_coupling(std::span<const IterateRecord> history,
                                               std::span<const double> r,
                                               double theta, double q,
                                               double eps_fp) {
  if (r.size() != history.size()) {
    throw InvalidInput("residual_iterate_coupling: size mismatch");
  }
  if (!(theta > 0.0) || !(q >= 1.0)) {
    throw InvalidInput("residual_iterate_coupling: need theta > 0 and q >= 1");
  }
  CouplingCheck out;
  for (std::size_t k = 0; k < history.size(); ++k) {
    if (!history[k].err_u) {
      throw InvalidInput("residual_iterate_coupling: history lacks err_u");
    }
    const double bound = std::pow(std::max(r[k], 0.0) / theta, 1.0 / q);
    const double excess = *history[k].err_u - bound;
    out.worst_excess = std::max(out.worst_excess, excess);
    if (excess > eps_fp && out.holds) {
      out.holds = false;
      out.first_violation = static_cast<int>(k);
    }
  }
  return out;
}

}  // namespace gcg::diagnostics
