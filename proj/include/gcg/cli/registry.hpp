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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gcg/core/errors.hpp"
#include "gcg/problems/elliptic.hpp"
#include "gcg/problems/parabolic.hpp"

namespace gcg::cli {

using problems::ExampleInfo;

/// Registered examples in alphabetical order.
inline std::vector<ExampleInfo> list_problems() {
  std::vector<ExampleInfo> out;
  for (const auto& e : problems::kEllipticExamples) out.push_back(e);
  for (const auto& e : problems::kParabolicExamples) out.push_back(e);
  std::sort(out.begin(), out.end(),
            [](const ExampleInfo& a, const ExampleInfo& b) { return a.name < b.name; });
  return out;
}

inline bool is_registered(std::string_view name) {
  for (const auto& e : list_problems()) {
    if (e.name == name) return true;
  }
  return false;
}

inline bool is_parabolic(std::string_view name) {
  for (const auto& e : problems::kParabolicExamples) {
    if (e.name == name) return true;
  }
  return false;
}

using AnyProblem = std::variant<problems::EllipticProblem, problems::ParabolicProblem>;

/// Unknown names throw InvalidInput.
inline AnyProblem make_problem(std::string_view name, int n, int nt) {
  if (!is_registered(name)) {
    throw InvalidInput("unknown problem '" + std::string(name) +
                       "' (see the list subcommand)");
  }
  if (is_parabolic(name)) return problems::make_parabolic_example(name, n, nt);
  return problems::make_elliptic_example(name, n);
}

}  // namespace gcg::cli
