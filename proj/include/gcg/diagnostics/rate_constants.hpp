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
#include <limits>
#include <vector>

#include "gcg/core/errors.hpp"

namespace gcg::diagnostics {

/// Theory-side constants for one run. Entries that do not apply (for example
/// the improved sublinear constants when q_growth <= 2) are NaN.
struct RateConstants {
  double q_env = std::numeric_limits<double>::quiet_NaN();
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double delta = std::numeric_limits<double>::quiet_NaN();
  double exponent_beta = std::numeric_limits<double>::quiet_NaN();
  double C_rec = std::numeric_limits<double>::quiet_NaN();
  double n_rec = std::numeric_limits<double>::quiet_NaN();
  double M_rec = std::numeric_limits<double>::quiet_NaN();
  double c1 = std::numeric_limits<double>::quiet_NaN();
  double c2 = std::numeric_limits<double>::quiet_NaN();
  double cbar = std::numeric_limits<double>::quiet_NaN();
  double L_est = std::numeric_limits<double>::quiet_NaN();
  double Mstar = std::numeric_limits<double>::quiet_NaN();
  double theta_hat = std::numeric_limits<double>::quiet_NaN();
  double q_growth = std::numeric_limits<double>::quiet_NaN();
  bool lambda_flagged = false;
  bool M_flagged = false;
};

/// q = alpha * min{(1 - alpha) gamma r0 / (2 L Mstar^2), 1}.
inline double envelope_q(double r0, double alpha, double gamma, double L,
                         double Mstar) {
  if (!(r0 > 0.0) || !(alpha > 0.0) || !(gamma > 0.0) || !(L > 0.0) ||
      !(Mstar > 0.0)) {
    throw InvalidInput("envelope_q: inputs must be positive");
  }
  if (!(alpha <= 0.5) || !(gamma < 1.0)) {
    throw InvalidInput("envelope_q: need alpha <= 1/2 and gamma < 1");
  }
  return alpha * std::min((1.0 - alpha) * gamma * r0 / (2.0 * L * Mstar * Mstar), 1.0);
}

struct LinearRate {
  double lambda = 0.0;
  /// lambda >= 1: the constants cannot certify a linear rate.
  bool flagged = false;
};

/// lambda = max{1 - 2 alpha gamma (1 - alpha) / (L cbar^2), 1 - alpha}.
inline LinearRate linear_lambda(double alpha, double gamma, double L, double cbar) {
  if (!(alpha > 0.0) || !(gamma > 0.0) || !(L > 0.0) || !(cbar > 0.0)) {
    throw InvalidInput("linear_lambda: inputs must be positive");
  }
  const double first = 1.0 - 2.0 * alpha * gamma * (1.0 - alpha) / (L * cbar * cbar);
  const double lambda = std::max(first, 1.0 - alpha);
  return {lambda, !(lambda < 1.0)};
}

struct SublinearConstants {
  double n = 0.0;
  /// NaN when the second branch of M is not real.
  double M = 0.0;
  bool M_real = true;
};

/// n = (2 - (1/delta)^beta) / ((1/delta)^beta - 1),
/// M = max{rK n^(1/beta), 1 / (delta (beta - (1 - beta)(2^beta - 1) C)^(1/beta))}.
inline SublinearConstants sublinear_constants(double delta, double exponent_beta,
                                              double C, double rK) {
  if (!(delta >= 0.5 && delta < 1.0)) {
    throw InvalidInput("sublinear_constants: delta must lie in [1/2, 1)");
  }
  if (!(exponent_beta > 0.0 && exponent_beta < 1.0)) {
    throw InvalidInput("sublinear_constants: beta must lie in (0, 1)");
  }
  if (!(C > 0.0)) throw InvalidInput("sublinear_constants: C must be > 0");
  if (!(rK >= 0.0)) throw InvalidInput("sublinear_constants: rK must be >= 0");
  const double b = exponent_beta;
  const double p = std::pow(1.0 / delta, b);
  SublinearConstants out;
  out.n = (2.0 - p) / (p - 1.0);
  const double first = rK * std::pow(out.n, 1.0 / b);
  const double base = b - (1.0 - b) * (std::pow(2.0, b) - 1.0) * C;
  if (!(base > 0.0) || !(out.n > 0.0)) {
    out.M_real = false;
    out.M = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.M = std::max(first, 1.0 / (delta * std::pow(base, 1.0 / b)));
  return out;
}

/// Growth-chain constants: c1 = (1/theta)^(1/q),
/// c2 = (L/theta)^(1/(q-1)) (1/theta)^(1/(q(q-1))).
inline void fill_growth_constants(RateConstants& rc) {
  const double q = rc.q_growth;
  const double t = rc.theta_hat;
  if (!(q > 1.0) || !(t > 0.0) || !(rc.L_est > 0.0)) return;
  rc.c1 = std::pow(1.0 / t, 1.0 / q);
  rc.c2 = std::pow(rc.L_est / t, 1.0 / (q - 1.0)) *
          std::pow(1.0 / t, 1.0 / (q * (q - 1.0)));
  rc.cbar = rc.c1 + rc.c2;
}

/// Assembles every constant that the inputs determine.
inline RateConstants compute_rate_constants(double alpha, double gamma, double L_est,
                                            double Mstar, double r0, double theta_hat,
                                            double kappa, double rK) {
  RateConstants rc;
  rc.L_est = L_est;
  rc.Mstar = Mstar;
  rc.theta_hat = theta_hat;
  rc.delta = 1.0 - alpha;
  if (r0 > 0.0 && L_est > 0.0 && Mstar > 0.0) {
    rc.q_env = envelope_q(r0, alpha, gamma, L_est, Mstar);
  }
  if (kappa > 0.0 && std::isfinite(kappa)) rc.q_growth = 1.0 + 1.0 / kappa;
  fill_growth_constants(rc);
  if (!std::isnan(rc.cbar)) {
    const LinearRate lr = linear_lambda(alpha, gamma, L_est, rc.cbar);
    rc.lambda = lr.lambda;
    rc.lambda_flagged = lr.flagged;
    rc.C_rec = 2.0 * alpha * gamma * (1.0 - alpha) / (L_est * rc.cbar * rc.cbar);
    const double q = rc.q_growth;
    if (q > 2.0) {
      rc.exponent_beta = 1.0 - 2.0 / (q * (q - 1.0));
      if (rc.delta >= 0.5 && rK >= 0.0) {
        const SublinearConstants sc =
            sublinear_constants(rc.delta, rc.exponent_beta, rc.C_rec, rK);
        rc.n_rec = sc.n;
        rc.M_rec = sc.M;
        rc.M_flagged = !sc.M_real;
      }
    }
  }
  return rc;
}

/// Outcome of iterating one of the extremal recursions against its bound.
struct RecursionCheck {
  std::vector<double> sequence;
  std::vector<double> bound;
  bool holds = true;
  /// First k with sequence[k] > bound[k]; -1 when the bound holds.
  int first_violation = -1;
};

/// h_0 = 1, h_{k+1} = h_k - q h_k^2, checked against 1/(1 + q k).
inline RecursionCheck recursion_oracle_linear(double q, int steps) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw InvalidInput("recursion_oracle_linear: q must lie in (0, 1]");
  }
  if (steps < 0) throw InvalidInput("recursion_oracle_linear: steps must be >= 0");
  RecursionCheck out;
  double h = 1.0;
  for (int k = 0; k <= steps; ++k) {
    const double bound = 1.0 / (1.0 + q * k);
    out.sequence.push_back(h);
    out.bound.push_back(bound);
    if (h > bound && out.holds) {
      out.holds = false;
      out.first_violation = k;
    }
    h = h - q * h * h;
  }
  return out;
}

/// h_{k+1} = max{delta, 1 - C h_k^beta} h_k, checked against
/// M / (k + n)^(1/beta) with (n, M) from sublinear_constants(delta, beta, C, h0).
/// Throws when M is not real for the given parameters.
inline RecursionCheck recursion_oracle_sublinear(double delta, double C,
                                               double exponent_beta, int steps,
                                               double h0 = 1.0) {
  if (steps < 0) throw InvalidInput("recursion_oracle_sublinear: steps must be >= 0");
  if (!(h0 >= 0.0)) throw InvalidInput("recursion_oracle_sublinear: h0 must be >= 0");
  const SublinearConstants sc = sublinear_constants(delta, exponent_beta, C, h0);
  if (!sc.M_real) {
    throw InvalidInput("recursion_oracle_sublinear: M is not real for these parameters");
  }
  RecursionCheck out;
  double h = h0;
  for (int k = 0; k <= steps; ++k) {
    const double bound = sc.M / std::pow(k + sc.n, 1.0 / exponent_beta);
    out.sequence.push_back(h);
    out.bound.push_back(bound);
    if (h > bound && out.holds) {
      out.holds = false;
      out.first_violation = k;
    }
    h = std::max(delta, 1.0 - C * std::pow(h, exponent_beta)) * h;
  }
  return out;
}

}  // namespace gcg::diagnostics
