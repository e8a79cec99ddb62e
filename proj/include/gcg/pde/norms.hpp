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
#include <cstddef>
#include <vector>

#include "gcg/core/control_field.hpp"
#include "gcg/core/errors.hpp"

namespace gcg::pde {

/// sum_i w_i |u_i|
inline double l1(const ControlField& u) {
  const auto w = u.mass();
  const auto x = u.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::abs(x[i]);
  return acc;
}

/// sqrt(sum_i w_i u_i^2)
inline double l2(const ControlField& u) { return std::sqrt(inner(u, u)); }

/// Spatial L2 norm of every time slice of a space-time field. The slice
/// norm uses the spatial weights w_i / tau.
inline std::vector<double> slice_norms(const ControlField& u) {
  const GridMeta& meta = u.meta();
  if (!meta.is_space_time() || !(meta.tau > 0.0)) {
    throw InvalidInput("slice_norms: field is not a space-time field");
  }
  const std::size_t ns = meta.nodes_per_slice();
  if (ns * meta.slices() != u.size()) {
    throw InvalidInput("slice_norms: grid descriptor does not match field size");
  }
  const auto w = u.mass();
  const auto x = u.values();
  std::vector<double> norms(meta.slices(), 0.0);
  for (std::size_t m = 0; m < norms.size(); ++m) {
    double acc = 0.0;
    for (std::size_t i = m * ns; i < (m + 1) * ns; ++i) acc += w[i] * x[i] * x[i];
    norms[m] = std::sqrt(acc / meta.tau);
  }
  return norms;
}

/// sum_m tau * ||u(t_m)||_{L2}, the L1(I; L2) norm.
inline double group_l1_time(const ControlField& u) {
  double acc = 0.0;
  for (double n : slice_norms(u)) acc += n;
  return u.meta().tau * acc;
}

}  // namespace gcg::pde
