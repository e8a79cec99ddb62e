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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "gcg/core/solver.hpp"
#include "gcg/pde/laplacian.hpp"
#include "gcg/pde/norms.hpp"
#include "gcg/problems/elliptic.hpp"
#include "test_support.hpp"

namespace {

using gcg::ControlField;
using gcg::problems::EllipticProblem;
using gcg::problems::make_elliptic_example;

ControlField random_field(const ControlField& like, std::mt19937_64& rng,
                          double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<double> x(like.size());
  for (double& v : x) v = normal(rng);
  return ControlField(like, x);
}

EllipticProblem box_problem(int n, double beta, double lo, double hi,
                            std::function<double(double, double)> target) {
  const auto g = gcg::pde::SpatialGrid::square(n);
  return EllipticProblem(g, beta, g.sample([&](double, double) { return lo; }),
                         g.sample([&](double, double) { return hi; }), g.sample(target),
                         gcg::pde::assemble_laplacian(g));
}

TEST(EllipticSmooth, ZeroAtExactTarget) {
  const auto g = gcg::pde::SpatialGrid::square(5);
  const auto op = gcg::pde::assemble_laplacian(g);
  const ControlField u_star = g.sample([](double x, double y) { return x - y; });
  const EllipticProblem prob(g, 0.1, g.sample([](double, double) { return -2.0; }),
                             g.sample([](double, double) { return 2.0; }),
                             gcg::pde::solve_poisson(op, u_star), op);
  const auto ev = prob.smooth(u_star);
  EXPECT_NEAR(ev.value, 0.0, 1e-28);
  for (double x : ev.gradient.values()) EXPECT_NEAR(x, 0.0, 1e-15);
}

TEST(EllipticSmooth, GradientMatchesCentralDifferences) {
  std::mt19937_64 rng(29);
  const auto prob = make_elliptic_example("stadler-ex1", 16);
  for (int t = 0; t < 20; ++t) {
    const ControlField u = gcg::testing::smooth_random(prob.grid(), rng, 10.0);
    const ControlField du = gcg::testing::smooth_random(prob.grid(), rng);
    const auto ev = prob.smooth(u);
    EXPECT_GE(ev.value, 0.0);
    const double analytic = gcg::inner(ev.gradient, du);
    const double fd = gcg::testing::central_difference(
        [&](double s) { return prob.smooth(gcg::axpy(u, s, du)).value; }, 1e-5);
    EXPECT_LE(gcg::testing::relative_error(analytic, fd), 1e-6)
        << "trial " << t;
  }
}

TEST(EllipticSmooth, SolutionOperatorIsSelfAdjoint) {
  std::mt19937_64 rng(31);
  const auto prob = make_elliptic_example("stadler-ex1", 16);
  for (int t = 0; t < 20; ++t) {
    const ControlField u = random_field(prob.zeros(), rng);
    const ControlField w = random_field(prob.zeros(), rng);
    const double lhs = gcg::inner(prob.state(u), w);
    const double rhs = gcg::inner(u, prob.state(w));
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * gcg::pde::l2(u) * gcg::pde::l2(w));
  }
}

TEST(EllipticNonsmooth, Values) {
  const auto prob = make_elliptic_example("stadler-ex1", 8);
  EXPECT_EQ(prob.nonsmooth(prob.zeros()).value(), 0.0);
  const auto at_upper = prob.nonsmooth(prob.upper());
  ASSERT_TRUE(at_upper.feasible());
  EXPECT_DOUBLE_EQ(at_upper.value(), 0.001 * gcg::pde::l1(prob.upper()));
  std::vector<double> x(prob.zeros().size(), 0.0);
  x[7] = 30.5;
  EXPECT_FALSE(prob.nonsmooth(ControlField(prob.zeros(), x)).feasible());
}

TEST(EllipticLmo, ClosedFormCases) {
  const auto prob = box_problem(2, 0.3, -2.0, 3.0, [](double, double) { return 0.0; });
  const ControlField p(prob.zeros(), {0.0, 0.5, -0.5, 0.3});
  const ControlField v = prob.lmo(p);
  EXPECT_EQ(v[0], 0.0);
  EXPECT_EQ(v[1], -2.0);
  EXPECT_EQ(v[2], 3.0);
  EXPECT_EQ(v[3], -2.0);  // tie |p| = beta maps to the bound
  const ControlField v0 = prob.lmo(prob.zeros());
  for (double x : v0.values()) EXPECT_EQ(x, 0.0);
}

TEST(EllipticLmo, MatchesDenseSamplingOracle) {
  std::mt19937_64 rng(37);
  const auto g = gcg::pde::SpatialGrid::square(2);
  const ControlField lower = g.sample([](double x, double) { return -1.0 - x; });
  const ControlField upper = g.sample([](double, double y) { return 0.5 + 2 * y; });
  const double beta = 0.2;
  const EllipticProblem prob(g, beta, lower, upper, g.zeros(),
                             gcg::pde::assemble_laplacian(g));
  constexpr int kSamples = 100000;
  for (int trial = 0; trial < 10; ++trial) {
    const ControlField p = random_field(g.zeros(), rng, 0.4);
    const ControlField v = prob.lmo(p);
    for (std::size_t i = 0; i < p.size(); ++i) {
      // per node: minimize p s + beta |s| over a dense grid of [lower, upper]
      const double lo = lower[i], hi = upper[i];
      const double ds = (hi - lo) / (kSamples - 1);
      double best_s = lo;
      double best = p[i] * lo + beta * std::abs(lo);
      for (int k = 1; k < kSamples; ++k) {
        const double s = lo + k * ds;
        const double val = p[i] * s + beta * std::abs(s);
        if (val < best) {
          best = val;
          best_s = s;
        }
      }
      const double closed = p[i] * v[i] + beta * std::abs(v[i]);
      EXPECT_LE(closed, best + 1e-15);
      EXPECT_NEAR(v[i], best_s, ds);
    }
  }
}

TEST(EllipticLmo, OptimalityCertificate) {
  std::mt19937_64 rng(41);
  const auto prob = make_elliptic_example("stadler-ex3", 8);
  const double beta = prob.reg_beta();
  for (int trial = 0; trial < 5; ++trial) {
    const ControlField p = random_field(prob.zeros(), rng, 0.01);
    const ControlField v = prob.lmo(p);
    const double lin_v = gcg::inner(p, v) + beta * gcg::pde::l1(v);
    for (int k = 0; k < 1000; ++k) {
      const ControlField w = prob.sample_feasible(rng);
      EXPECT_LE(lin_v, gcg::inner(p, w) + beta * gcg::pde::l1(w) + 1e-12);
    }
  }
}

TEST(EllipticSegment, MatchesDirectEvaluation) {
  std::mt19937_64 rng(43);
  const auto prob = make_elliptic_example("stadler-ex1", 12);
  const ControlField u = prob.sample_feasible(rng);
  const ControlField v = prob.lmo(prob.smooth(u).gradient);
  const auto seg = prob.segment(u, v);
  for (double s : {0.0, 0.1, 0.5, 0.99, 1.0}) {
    const double direct = gcg::objective(prob, gcg::lerp(u, v, s)).value();
    EXPECT_NEAR(seg(s).value(), direct, 1e-13 * (1 + std::abs(direct)));
  }
}

TEST(EllipticStructure, LmoOutputsAreThreeValued) {
  std::mt19937_64 rng(47);
  const auto prob = make_elliptic_example("stadler-ex3", 10);
  const ControlField p = random_field(prob.zeros(), rng, 0.01);
  const ControlField v = prob.lmo(p);
  const auto rep = gcg::problems::structure_report(prob, v, p);
  EXPECT_DOUBLE_EQ(rep.three_valued_fraction, 1.0);
  EXPECT_DOUBLE_EQ(rep.case_consistent_fraction, 1.0);
}

TEST(EllipticStructure, MidpointIsNotThreeValued) {
  const auto prob = box_problem(6, 0.01, -1.0, 3.0, [](double, double) { return 0.0; });
  const ControlField mid(prob.zeros(), std::vector<double>(prob.zeros().size(), 1.0));
  EXPECT_DOUBLE_EQ(
      gcg::problems::structure_report(prob, mid, prob.zeros()).three_valued_fraction, 0.0);
}

TEST(EllipticGrowth, MeasureLimits) {
  const auto prob = box_problem(7, 0.3, -1.0, 1.0, [](double, double) { return 0.0; });
  const ControlField zero = prob.zeros();
  EXPECT_EQ(gcg::problems::growth_measure(prob, zero, 0.1), 0.0);
  EXPECT_DOUBLE_EQ(gcg::problems::growth_measure(prob, zero, 1e9), zero.measure());
  EXPECT_NEAR(zero.measure(), 1.0, 0.25);
  EXPECT_THROW((void)gcg::problems::growth_measure(prob, zero, 0.0), gcg::InvalidInput);
}

TEST(EllipticExamples, Parameters) {
  const auto ex1 = make_elliptic_example("stadler-ex1", 9);
  EXPECT_EQ(ex1.reg_beta(), 0.001);
  for (std::size_t i = 0; i < ex1.lower().size(); ++i) {
    EXPECT_EQ(ex1.upper()[i] - ex1.lower()[i], 60.0);
  }
  const auto ex3 = make_elliptic_example("stadler-ex3", 9);
  EXPECT_EQ(ex3.reg_beta(), 0.002);
  const auto& g = ex3.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x1 = g.x1(i);
    EXPECT_EQ(ex3.lower()[i], -10.0);
    EXPECT_DOUBLE_EQ(ex3.upper()[i], x1 <= 0.25 ? 0.0 : -5.0 + 20.0 * x1);
    EXPECT_GE(ex3.upper()[i], 0.0);
  }
  EXPECT_THROW((void)make_elliptic_example("stadler-ex2", 9), gcg::InvalidInput);
  EXPECT_THROW(EllipticProblem(g, 0.1, ex3.upper(), ex3.upper(), ex3.target(), ex3.op()),
               gcg::InvalidInput);
}

TEST(EllipticSolve, GapVanishesOnlyAtCaseConsistentPoints) {
  const auto prob = make_elliptic_example("stadler-ex3", 10);
  gcg::SolverConfig cfg;
  const auto res = gcg::gcg_solve(prob, prob.zeros(), cfg);
  ASSERT_EQ(res.status, gcg::SolveStatus::Converged);
  EXPECT_LE(res.history.back().gap, 1e-10);
  const auto rep =
      gcg::problems::structure_report(prob, res.final_iterate, res.final_gradient);
  EXPECT_DOUBLE_EQ(rep.case_consistent_fraction, 1.0);

  std::mt19937_64 rng(53);
  for (int t = 0; t < 20; ++t) {
    const ControlField u = prob.sample_feasible(rng);
    const auto ev = prob.smooth(u);
    const ControlField v = prob.lmo(ev.gradient);
    const double gap = gcg::dual_gap(u, ev.gradient, prob.nonsmooth(u).value(), v,
                                     prob.nonsmooth(v).value());
    EXPECT_GT(gap, 1e-10);
    EXPECT_LT(gcg::problems::structure_report(prob, u, ev.gradient).case_consistent_fraction,
              1.0);
  }
}

}  // namespace
