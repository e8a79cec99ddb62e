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

// A hand-written composite problem: least squares with an l1 penalty and a
// box constraint, fed to the solver through FunctionProblem.

#include <cmath>
#include <iostream>
#include <vector>

#include "gcg/core/problem.hpp"
#include "gcg/core/solver.hpp"

int main() {
  const std::vector<double> target = {0.8, -0.05, -1.7, 0.3};
  const double beta = 0.1;
  gcg::GridMeta meta;
  meta.nx = static_cast<int>(target.size());
  const gcg::ControlField zero(std::vector<double>(target.size(), 0.0),
                               std::vector<double>(target.size(), 1.0), meta);

  gcg::FunctionProblem prob;
  prob.smooth_fn = [&](const gcg::ControlField& u) {
    std::vector<double> r(u.size());
    double f = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] = u[i] - target[i];
      f += 0.5 * r[i] * r[i];
    }
    return gcg::SmoothEval{f, gcg::ControlField(u, r)};
  };
  prob.nonsmooth_fn = [&](const gcg::ControlField& u) -> gcg::ExtendedReal {
    double g = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (std::abs(u[i]) > 1.0) return gcg::ExtendedReal::infeasible();
      g += beta * std::abs(u[i]);
    }
    return g;
  };
  prob.lmo_fn = [&](const gcg::ControlField& p) {
    std::vector<double> v(p.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (p[i] >= beta) v[i] = -1.0;
      if (p[i] <= -beta) v[i] = 1.0;
    }
    return gcg::ControlField(p, v);
  };
  prob.dual_norm_fn = [](const gcg::ControlField& u) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::abs(u[i]);
    return s;
  };

  const gcg::SolveResult res = gcg::gcg_solve(prob, zero, gcg::SolverConfig{});
  std::cout << gcg::to_string(res.status) << " after " << res.iterations()
            << " iterations\n";
  for (std::size_t i = 0; i < target.size(); ++i) {
    std::cout << "u[" << i << "] = " << res.final_iterate[i] << '\n';
  }
}
