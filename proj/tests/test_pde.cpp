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
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "gcg/core/errors.hpp"
#include "gcg/pde/constants.hpp"
#include "gcg/pde/field_io.hpp"
#include "gcg/pde/grid.hpp"
#include "gcg/pde/heat.hpp"
#include "gcg/pde/laplacian.hpp"
#include "gcg/pde/norms.hpp"
#include "test_support.hpp"

namespace {

using gcg::ControlField;
using gcg::pde::SpaceTimeGrid;
using gcg::pde::SpatialGrid;
using std::numbers::pi;

Eigen::MatrixXd dense(const gcg::pde::DiscreteOperator& op) {
  return Eigen::MatrixXd(op.matrix());
}

ControlField random_field(const ControlField& like, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(like.size());
  for (double& v : x) v = normal(rng);
  return ControlField(like, x);
}

TEST(Grid, CoordinatesAndWeights) {
  const auto g = SpatialGrid::square(3);
  EXPECT_DOUBLE_EQ(g.h(), 0.25);
  EXPECT_EQ(g.size(), 9u);
  EXPECT_DOUBLE_EQ(g.cell_measure(), 0.0625);
  EXPECT_DOUBLE_EQ(g.x1(5), 0.75);
  EXPECT_DOUBLE_EQ(g.x2(5), 0.5);
  const auto f = g.sample([](double x1, double x2) { return x1 + 10 * x2; });
  EXPECT_DOUBLE_EQ(f[5], 5.75);
  EXPECT_THROW((void)SpatialGrid::square(0), gcg::InvalidInput);

  const auto line = SpatialGrid::interval(4);
  EXPECT_EQ(line.size(), 4u);
  EXPECT_DOUBLE_EQ(line.cell_measure(), 0.2);
}

TEST(Grid, SpaceTimeLayout) {
  const auto st = SpaceTimeGrid::make(SpatialGrid::interval(2), 4, 2.0);
  EXPECT_DOUBLE_EQ(st.tau(), 0.5);
  EXPECT_DOUBLE_EQ(st.time(0), 0.5);
  EXPECT_DOUBLE_EQ(st.time(3), 2.0);
  EXPECT_DOUBLE_EQ(st.weight(), 0.5 / 3.0);
  const auto f = st.sample([](double x, double, double t) { return x + 100 * t; });
  EXPECT_DOUBLE_EQ(f[3], 2.0 / 3.0 + 100.0);  // slice 1, node 1
  EXPECT_THROW((void)SpaceTimeGrid::make(SpatialGrid::interval(2), 0), gcg::InvalidInput);
  EXPECT_THROW((void)SpaceTimeGrid::make(SpatialGrid::interval(2), 3, 0.0),
               gcg::InvalidInput);
}

TEST(Laplacian, SingleNodeSquare) {
  const auto op = gcg::pde::assemble_laplacian(SpatialGrid::square(1));
  ASSERT_EQ(op.size(), 1u);
  EXPECT_DOUBLE_EQ(dense(op)(0, 0), 16.0);
}

TEST(Laplacian, StencilStructure) {
  const auto g = SpatialGrid::square(4);
  const Eigen::MatrixXd a = dense(gcg::pde::assemble_laplacian(g));
  const double inv_h2 = 1.0 / (g.h() * g.h());
  EXPECT_DOUBLE_EQ((a - a.transpose()).norm(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    EXPECT_DOUBLE_EQ(a(i, i), 4.0 * inv_h2);
    int off = 0;
    for (int j = 0; j < a.cols(); ++j) {
      if (j != i && a(i, j) != 0.0) {
        EXPECT_DOUBLE_EQ(a(i, j), -inv_h2);
        ++off;
      }
    }
    const int ix = i % 4, iy = i / 4;
    const int expected = (ix > 0) + (ix < 3) + (iy > 0) + (iy < 3);
    EXPECT_EQ(off, expected);
  }
}

TEST(Poisson, OneDimensionalHandValues) {
  const auto g = SpatialGrid::interval(3);
  const auto op = gcg::pde::assemble_laplacian(g);
  const auto y = gcg::pde::solve_poisson(op, g.sample([](double, double) { return 1.0; }));
  EXPECT_NEAR(y[0], 0.09375, 1e-15);
  EXPECT_NEAR(y[1], 0.125, 1e-15);
  EXPECT_NEAR(y[2], 0.09375, 1e-15);
}

TEST(Poisson, MatchesDenseSolve) {
  std::mt19937_64 rng(7);
  const auto g = SpatialGrid::square(9);
  const auto op = gcg::pde::assemble_laplacian(g);
  const ControlField b = random_field(g.zeros(), rng);
  const auto y = gcg::pde::solve_poisson(op, b);
  const Eigen::VectorXd ref =
      dense(op).ldlt().solve(Eigen::Map<const Eigen::VectorXd>(b.values().data(),
                                                              static_cast<Eigen::Index>(b.size())));
  for (std::size_t i = 0; i < b.size(); ++i) {
    EXPECT_NEAR(y[i], ref(static_cast<Eigen::Index>(i)), 1e-12 * ref.lpNorm<Eigen::Infinity>());
  }
}

TEST(Poisson, SecondOrderConvergence) {
  // -Delta (sin pi x1 sin pi x2) = 2 pi^2 sin pi x1 sin pi x2
  const auto exact = [](double x1, double x2) { return std::sin(pi * x1) * std::sin(pi * x2); };
  double prev = 0.0;
  for (int n : {7, 15, 31}) {
    const auto g = SpatialGrid::square(n);
    const auto op = gcg::pde::assemble_laplacian(g);
    const auto y = gcg::pde::solve_poisson(
        op, g.sample([&](double x1, double x2) { return 2 * pi * pi * exact(x1, x2); }));
    double err = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      err = std::max(err, std::abs(y[i] - exact(g.x1(i), g.x2(i))));
    }
    if (prev > 0.0) {
      EXPECT_NEAR(prev / err, 4.0, 0.3);
    }
    prev = err;
  }
}

TEST(Poisson, ApplyInvertsSolve) {
  std::mt19937_64 rng(11);
  const auto g = SpatialGrid::square(6);
  const auto op = gcg::pde::assemble_laplacian(g);
  const ControlField b = random_field(g.zeros(), rng);
  const auto y = op.solve(b.values());
  const auto back = op.apply(y);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_NEAR(back[i], b[i], 1e-10);
  EXPECT_THROW((void)op.solve(std::vector<double>(3, 1.0)), gcg::InvalidInput);
}

TEST(Constants, SmallestEigenvalueMatchesClosedForm) {
  for (int n : {4, 16, 33}) {
    const auto g2 = SpatialGrid::square(n);
    const double h = g2.h();
    const double s = std::sin(pi * h / 2);
    EXPECT_NEAR(gcg::pde::smallest_eigenvalue(gcg::pde::assemble_laplacian(g2)),
                8.0 / (h * h) * s * s, 1e-9 * 8.0 / (h * h) * s * s);
    const auto g1 = SpatialGrid::interval(n);
    EXPECT_NEAR(gcg::pde::smallest_eigenvalue(gcg::pde::assemble_laplacian(g1)),
                4.0 / (h * h) * s * s, 1e-9 * 4.0 / (h * h) * s * s);
  }
}

TEST(Constants, EllipticConstantSingleNode) {
  const auto g = SpatialGrid::square(1);
  const auto op = gcg::pde::assemble_laplacian(g);
  EXPECT_DOUBLE_EQ(gcg::pde::estimate_c_constant(op, g.zeros().mass()), 0.125);
}

TEST(Constants, EllipticConstantMatchesDenseInverse) {
  const auto g = SpatialGrid::square(6);
  const auto op = gcg::pde::assemble_laplacian(g);
  const double w = g.cell_measure();
  const Eigen::MatrixXd k = dense(op).inverse();
  double best = 0.0;
  for (int j = 0; j < k.cols(); ++j) best = std::max(best, std::sqrt(w) * k.col(j).norm() / w);
  const double c = gcg::pde::estimate_c_constant(op, g.zeros().mass());
  EXPECT_NEAR(c, best, 1e-12 * best);

  // ||K u||_{L2} <= c ||u||_{L1} on random fields
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const ControlField u = random_field(g.zeros(), rng);
    const auto y = gcg::pde::solve_poisson(op, u);
    EXPECT_LE(gcg::pde::l2(y), c * gcg::pde::l1(u) * (1 + 1e-12));
  }
}

TEST(Heat, SingleNodeSingleStep) {
  // A = [8] on the interval with one node; (1 + 1*2*8) y = 1 * 1
  const auto st = SpaceTimeGrid::make(SpatialGrid::interval(1), 1);
  const auto u = st.sample([](double, double, double) { return 1.0; });
  const auto y = gcg::pde::heat_forward(u, st, 2.0);
  EXPECT_DOUBLE_EQ(y[0], 1.0 / 17.0);
}

Eigen::MatrixXd dense_heat_matrix(const SpaceTimeGrid& st, double a) {
  const auto lap = dense(gcg::pde::assemble_laplacian(st.space));
  const auto ns = static_cast<Eigen::Index>(st.slice_size());
  const Eigen::MatrixXd step_inv =
      (Eigen::MatrixXd::Identity(ns, ns) + st.tau() * a * lap).inverse();
  // y^m = sum_{l <= m} S^{m-l+1} tau u^l with S the inverse step matrix.
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(ns * st.nt, ns * st.nt);
  for (int m = 0; m < st.nt; ++m) {
    for (int l = 0; l <= m; ++l) {
      Eigen::MatrixXd p = Eigen::MatrixXd::Identity(ns, ns);
      for (int r = 0; r <= m - l; ++r) p = step_inv * p;
      k.block(m * ns, l * ns, ns, ns) = st.tau() * p;
    }
  }
  return k;
}

TEST(Heat, ForwardMatchesDenseOperator) {
  const auto st = SpaceTimeGrid::make(SpatialGrid::square(3), 5);
  const double a = 0.7;
  const Eigen::MatrixXd k = dense_heat_matrix(st, a);
  std::mt19937_64 rng(13);
  const ControlField u = random_field(st.zeros(), rng);
  const auto y = gcg::pde::heat_forward(u, st, a);
  const Eigen::VectorXd ref =
      k * Eigen::Map<const Eigen::VectorXd>(u.values().data(), static_cast<Eigen::Index>(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i) {
    EXPECT_NEAR(y[i], ref(static_cast<Eigen::Index>(i)), 1e-13);
  }
}

TEST(Heat, AdjointIdentity) {
  std::mt19937_64 rng(17);
  for (const auto& space : {SpatialGrid::interval(7), SpatialGrid::square(5)}) {
    const auto st = SpaceTimeGrid::make(space, 9);
    const gcg::pde::HeatOperator heat(st, 0.7);
    for (int t = 0; t < 20; ++t) {
      const ControlField u = random_field(st.zeros(), rng);
      const ControlField w = random_field(st.zeros(), rng);
      const double lhs = gcg::inner(heat.forward(u), w);
      const double rhs = gcg::inner(u, heat.adjoint(w));
      EXPECT_LE(std::abs(lhs - rhs), 1e-12 * gcg::pde::l2(u) * gcg::pde::l2(w));
    }
  }
}

TEST(Heat, RejectsBadInput) {
  const auto st = SpaceTimeGrid::make(SpatialGrid::interval(3), 2);
  EXPECT_THROW(gcg::pde::HeatOperator(st, 0.0), gcg::InvalidInput);
  const gcg::pde::HeatOperator heat(st, 1.0);
  EXPECT_THROW((void)heat.forward(SpatialGrid::interval(3).zeros()), gcg::InvalidInput);
}

TEST(Constants, HeatConstantMatchesDenseSupremum) {
  // sup ||K u||_{L2(Q)} / ||u||_{L1(I;L2)} is attained on single slices:
  // max over m of the weighted operator norm of column block m divided by tau.
  const auto st = SpaceTimeGrid::make(SpatialGrid::interval(5), 6, 1.0);
  const double a = 0.7;
  const Eigen::MatrixXd k = dense_heat_matrix(st, a);
  const double w = st.space.cell_measure();
  const auto ns = static_cast<Eigen::Index>(st.slice_size());
  double best = 0.0;
  for (int m = 0; m < st.nt; ++m) {
    // ||K x||_Q = sqrt(tau w) |K x|, ||x||_{L2} = sqrt(w) |x|, norm weight tau.
    const Eigen::MatrixXd block = k.middleCols(m * ns, ns);
    const double sigma = Eigen::JacobiSVD<Eigen::MatrixXd>(block).singularValues()(0);
    best = std::max(best, std::sqrt(st.tau() * w) * sigma / (std::sqrt(w) * st.tau()));
  }
  const double lambda = gcg::pde::smallest_eigenvalue(gcg::pde::assemble_laplacian(st.space));
  const double c = gcg::pde::heat_c_constant(lambda, st.tau(), a, st.nt);
  EXPECT_NEAR(c, best, 1e-9 * best);
}

TEST(Norms, BasicValuesAndProperties) {
  const ControlField u({1.0, -2.0, 3.0}, {0.5, 0.5, 1.0});
  EXPECT_DOUBLE_EQ(gcg::pde::l1(u), 0.5 + 1.0 + 3.0);
  EXPECT_DOUBLE_EQ(gcg::pde::l2(u), std::sqrt(0.5 + 2.0 + 9.0));
  EXPECT_THROW((void)gcg::pde::slice_norms(u), gcg::InvalidInput);

  const auto st = SpaceTimeGrid::make(SpatialGrid::interval(3), 4);
  std::mt19937_64 rng(19);
  for (int t = 0; t < 20; ++t) {
    const ControlField a = random_field(st.zeros(), rng);
    const ControlField b = random_field(st.zeros(), rng);
    const double na = gcg::pde::group_l1_time(a);
    EXPECT_GE(na, 0.0);
    EXPECT_NEAR(gcg::pde::group_l1_time(gcg::scaled(a, -3.0)), 3.0 * na, 1e-12 * na);
    EXPECT_LE(gcg::pde::group_l1_time(gcg::axpy(a, 1.0, b)),
              na + gcg::pde::group_l1_time(b) + 1e-12);
    // L1(I;L2) <= sqrt(T) L2(Q) by Cauchy-Schwarz in time
    EXPECT_LE(na, gcg::pde::l2(a) * (1 + 1e-12));
  }
  // a field supported on one slice with spatial norm 2
  std::vector<double> x(st.size(), 0.0);
  const double w = st.space.cell_measure();
  x[3] = 2.0 / std::sqrt(w);
  const ControlField single(st.zeros(), x);
  EXPECT_NEAR(gcg::pde::slice_norms(single)[1], 2.0, 1e-14);
  EXPECT_NEAR(gcg::pde::group_l1_time(single), 2.0 * st.tau(), 1e-14);
}

TEST(FieldIo, RoundTripIsExact) {
  std::mt19937_64 rng(23);
  const auto st = SpaceTimeGrid::make(SpatialGrid::square(3), 4);
  const ControlField u = random_field(st.zeros(), rng);
  std::stringstream ss;
  gcg::pde::write_field(ss, u);
  const ControlField back = gcg::pde::read_field(ss, true);
  EXPECT_EQ(gcg::testing::to_vector(back), gcg::testing::to_vector(u));
  EXPECT_EQ(back.meta(), u.meta());
  EXPECT_DOUBLE_EQ(back.mass()[0], u.mass()[0]);

  const auto g = SpatialGrid::interval(5);
  const ControlField v = random_field(g.zeros(), rng);
  std::stringstream s2;
  gcg::pde::write_field(s2, v);
  const ControlField back2 = gcg::pde::read_field(s2, false);
  EXPECT_EQ(gcg::testing::to_vector(back2), gcg::testing::to_vector(v));
  EXPECT_DOUBLE_EQ(back2.mass()[0], g.cell_measure());
}

TEST(FieldIo, MalformedInputThrows) {
  std::stringstream bad("3 3");
  EXPECT_THROW((void)gcg::pde::read_field(bad, false), gcg::InvalidInput);
  std::stringstream truncated("2 2 0.3333333\n1\n2\n");
  EXPECT_THROW((void)gcg::pde::read_field(truncated, false), gcg::InvalidInput);
}

}  // namespace
