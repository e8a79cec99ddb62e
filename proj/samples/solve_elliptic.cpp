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

// Solves the first elliptic example on a coarse grid and prints the
// iteration history summary and the structure of the computed control.

#include <iostream>

#include "gcg/core/solver.hpp"
#include "gcg/problems/elliptic.hpp"

int main() {
  const auto prob = gcg::problems::make_elliptic_example("stadler-ex1", 16);

  gcg::SolverConfig config;
  config.max_iter = 300;
  const gcg::SolveResult res = gcg::gcg_solve(prob, prob.zeros(), config);

  std::cout << "status     " << gcg::to_string(res.status) << '\n'
            << "iterations " << res.iterations() << '\n'
            << "objective  " << res.history.back().j_value << '\n'
            << "gap        " << res.history.back().gap << '\n';

  const auto s =
      gcg::problems::structure_report(prob, res.final_iterate, res.final_gradient);
  std::cout << "three-valued fraction " << s.three_valued_fraction << '\n';
}
