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
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gcg/core/errors.hpp"
#include "gcg/core/solver.hpp"
#include "gcg/diagnostics/fits.hpp"
#include "gcg/diagnostics/rate_constants.hpp"
#include "gcg/diagnostics/report.hpp"
#include "gcg/diagnostics/verification.hpp"

namespace gcg::diagnostics {

struct AnalysisOptions {
  /// Random feasible points for the growth-constant spot check.
  int spot_trials = 100;
  std::uint64_t seed = 12345;
  /// Re-run the solver with err_u / err_v tracking and check the
  /// residual-iterate coupling.
  bool coupling = false;
};

/// Post-hoc diagnostics of one run, with its final iterate as reference.
struct RunAnalysis {
  double j_ref = 0.0;
  double eps_fp = 0.0;
  std::vector<double> residuals;
  double L_est = 0.0;
  double Mstar = 0.0;
  double r0 = 0.0;
  EnvelopeCheck envelope;
  std::optional<RateFit> rate;
  std::string rate_error;
  KappaFit kappa;
  std::string kappa_error;
  double theta_hat = std::numeric_limits<double>::quiet_NaN();
  RateConstants constants;
  int K = -1;
  std::optional<CouplingCheck> coupling;
  /// History of the tracking re-run, when requested.
  std::vector<IterateRecord> tracked_history;
};

template <class P>
RunAnalysis analyze(const P& prob, const ControlField& u0, const SolveResult& res,
                    const SolverConfig& config, const AnalysisOptions& opts = {}) {
  RunAnalysis a;
  a.j_ref = res.history.back().j_value;
  a.eps_fp = res.slack;
  a.residuals = residuals(res.history, a.j_ref);
  a.r0 = a.residuals.front();
  a.L_est = lipschitz_estimate(prob);
  a.Mstar = measured_mstar(res.history);
  if (a.r0 > 0.0 && a.Mstar > 0.0) {
    a.constants.q_env =
        envelope_q(a.r0, config.armijo.alpha, config.armijo.gamma, a.L_est, a.Mstar);
    a.envelope = check_envelope(a.residuals, a.constants.q_env, a.eps_fp);
  }
  try {
    a.rate = fit_rate(a.residuals, a.eps_fp);
  } catch (const InvalidInput& e) {
    a.rate_error = e.what();
  }

  const ControlField& p_ref = res.final_gradient;
  const GrowthSamples gs = growth_samples(prob, p_ref, dyadic_epsilons());
  try {
    a.kappa = fit_kappa(gs.epsilons, gs.measures, gs.total);
  } catch (const InvalidInput& e) {
    a.kappa_error = e.what();
  }

  const double kappa =
      (std::isfinite(a.kappa.kappa_hat) && a.kappa.kappa_hat > 0.0) ? a.kappa.kappa_hat
                                                                     : 1.0;
  const double q = 1.0 + 1.0 / kappa;
  std::mt19937_64 rng(opts.seed);
  a.theta_hat = strengthened_first_order_check(prob, res.final_iterate, p_ref, q,
                                               opts.spot_trials, rng);
  a.K = first_index_below_one(a.residuals);
  const double rK = a.K >= 0 ? a.residuals[static_cast<std::size_t>(a.K)] : a.r0;
  a.constants = compute_rate_constants(config.armijo.alpha, config.armijo.gamma,
                                       a.L_est, a.Mstar, a.r0, a.theta_hat, kappa, rK);

  if (opts.coupling && a.theta_hat > 0.0) {
    SolverConfig tracked = config;
    tracked.record_errors_against = res.final_iterate;
    const SolveResult rerun = gcg_solve(prob, u0, tracked);
    a.tracked_history = rerun.history;
    const std::vector<double> r2 = residuals(rerun.history, a.j_ref);
    a.coupling = residual_iterate_coupling(rerun.history, r2, a.theta_hat, q, a.eps_fp);
  }
  return a;
}

inline void add_to_report(Report& rep, const RunAnalysis& a) {
  rep.add("j_ref", a.j_ref);
  rep.add("eps_fp", a.eps_fp);
  rep.add("r0", a.r0);
  rep.add("L_est", a.L_est);
  rep.add("Mstar", a.Mstar);
  rep.add("envelope.q", a.constants.q_env);
  rep.add("envelope.holds", a.envelope.holds);
  rep.add("envelope.first_violation", a.envelope.first_violation);
  if (a.rate) {
    rep.add("rate.lambda_hat", a.rate->lambda_hat);
    rep.add("rate.r_squared", a.rate->r_squared);
    rep.add("rate.window_begin", static_cast<long long>(a.rate->window.begin));
    rep.add("rate.window_end", static_cast<long long>(a.rate->window.end));
  } else {
    rep.add("rate.error", a.rate_error);
  }
  if (a.kappa.vacuous) {
    rep.add("kappa.status", "assumption holds vacuously");
  } else if (!a.kappa_error.empty()) {
    rep.add("kappa.error", a.kappa_error);
  } else {
    rep.add("kappa.hat", a.kappa.kappa_hat);
    rep.add("kappa.r_squared", a.kappa.r_squared);
    rep.add("kappa.samples", static_cast<long long>(a.kappa.samples_used));
  }
  const RateConstants& c = a.constants;
  rep.add("theta_hat", a.theta_hat);
  rep.add("q_growth", c.q_growth);
  rep.add("c1", c.c1);
  rep.add("c2", c.c2);
  rep.add("cbar", c.cbar);
  rep.add("lambda", c.lambda);
  rep.add("lambda.flagged", c.lambda_flagged);
  rep.add("delta", c.delta);
  rep.add("exponent_beta", c.exponent_beta);
  rep.add("C_rec", c.C_rec);
  rep.add("n_rec", c.n_rec);
  rep.add("M_rec", c.M_rec);
  rep.add("M_rec.flagged", c.M_flagged);
  rep.add("K", a.K);
  if (a.coupling) {
    rep.add("coupling.holds", a.coupling->holds);
    rep.add("coupling.first_violation", a.coupling->first_violation);
    rep.add("coupling.worst_excess", a.coupling->worst_excess);
  }
}

}  // namespace gcg::diagnostics
