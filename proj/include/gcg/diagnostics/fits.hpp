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
#include <span>
#include <vector>

#include "gcg/core/errors.hpp"
#include "gcg/core/solver.hpp"

namespace gcg::diagnostics {

/// r_k = j(u^k) - j_ref for every record.
inline std::vector<double> residuals(std::span<const IterateRecord> history,
                                     double j_ref) {
  std::vector<double> r;
  r.reserve(history.size());
  for (const auto& rec : history) r.push_back(rec.j_value - j_ref);
  return r;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y ~ slope * x + intercept.
inline LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidInput("least_squares: need at least two matching samples");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidInput("least_squares: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

/// Half-open index range [begin, end) of records used by a rate fit.
struct FitWindow {
  std::size_t begin = 0;
  std::size_t end = 0;
  double floor = 0.0;
  [[nodiscard]] std::size_t size() const { return end - begin; }
};

/// Pre-stagnation window: the leading run of residuals above
///   floor = max(10 eps_fp, 100 * smallest positive residual),
/// which drops the last two decades, where the reference iterate dominates
/// the error.
inline FitWindow pre_stagnation_window(std::span<const double> r, double eps_fp) {
  double smallest = std::numeric_limits<double>::infinity();
  for (double x : r) {
    if (x > 0.0) smallest = std::min(smallest, x);
  }
  FitWindow w;
  w.floor = 10.0 * eps_fp;
  if (std::isfinite(smallest)) w.floor = std::max(w.floor, 100.0 * smallest);
  while (w.end < r.size() && r[w.end] > w.floor) ++w.end;
  return w;
}

struct RateFit {
  double lambda_hat = 0.0;
  double r_squared = 0.0;
  FitWindow window;
};

/// Geometric rate fit: exp of the least-squares slope of log r_k vs k over
/// the given window. Needs at least five records in the window.
inline RateFit fit_rate(std::span<const double> r, FitWindow window) {
  if (window.end > r.size() || window.size() < 5) {
    throw InvalidInput("fit_rate: fewer than 5 usable records");
  }
  std::vector<double> k, lr;
  for (std::size_t i = window.begin; i < window.end; ++i) {
    if (!(r[i] > 0.0)) throw InvalidInput("fit_rate: nonpositive residual in window");
    k.push_back(static_cast<double>(i));
    lr.push_back(std::log(r[i]));
  }
  const LineFit fit = least_squares(k, lr);
  return {std::exp(fit.slope), fit.r_squared, window};
}

inline RateFit fit_rate(std::span<const double> r, double eps_fp) {
  return fit_rate(r, pre_stagnation_window(r, eps_fp));
}

/// eps = 2^-16, 2^-15, ..., 2^-4.
inline std::vector<double> dyadic_epsilons(int lo_exp = -16, int hi_exp = -4) {
  std::vector<double> eps;
  for (int e = lo_exp; e <= hi_exp; ++e) eps.push_back(std::ldexp(1.0, e));
  return eps;
}

struct KappaFit {
  double kappa_hat = std::numeric_limits<double>::quiet_NaN();
  double r_squared = std::numeric_limits<double>::quiet_NaN();
  /// All measures vanish: the growth bound holds for every kappa.
  bool vacuous = false;
  std::size_t samples_used = 0;
};

/// Log-log slope of measure vs eps. Zero bins are dropped, and so are bins
/// whose measure reaches `total_measure` (the band already covers the whole
/// domain and carries no information about the exponent).
inline KappaFit fit_kappa(std::span<const double> epsilons,
                          std::span<const double> measures,
                          double total_measure = std::numeric_limits<double>::infinity()) {
  if (epsilons.size() != measures.size()) {
    throw InvalidInput("fit_kappa: size mismatch");
  }
  KappaFit out;
  std::vector<double> le, lm;
  bool any_nonzero = false;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0) || !(measures[i] >= 0.0)) {
      throw InvalidInput("fit_kappa: eps must be > 0 and measures >= 0");
    }
    if (measures[i] == 0.0) continue;
    any_nonzero = true;
    if (measures[i] >= total_measure * (1.0 - 1e-12)) continue;
    le.push_back(std::log(epsilons[i]));
    lm.push_back(std::log(measures[i]));
  }
  if (!any_nonzero) {
    out.vacuous = true;
    return out;
  }
  if (le.size() < 4) throw InvalidInput("fit_kappa: fewer than 4 nonzero samples");
  const LineFit fit = least_squares(le, lm);
  out.kappa_hat = fit.slope;
  out.r_squared = fit.r_squared;
  out.samples_used = le.size();
  return out;
}

}  // namespace gcg::diagnostics
