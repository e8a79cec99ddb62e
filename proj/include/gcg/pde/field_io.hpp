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
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "gcg/core/control_field.hpp"
#include "gcg/core/errors.hpp"

namespace gcg::pde {

/// Plain-text field dump. Header "nx ny h" for spatial fields, or
/// "nx ny nt h tau" for space-time fields, then one value per line in
/// storage order (x fastest, then y, then time), 17 significant digits.
inline void write_field(std::ostream& os, const ControlField& u) {
  const GridMeta& m = u.meta();
  char buf[64];
  const auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  if (m.is_space_time()) {
    os << m.nx << ' ' << m.ny << ' ' << m.nt << ' ' << num(m.h) << ' '
       << num(m.tau) << '\n';
  } else {
    os << m.nx << ' ' << m.ny << ' ' << num(m.h) << '\n';
  }
  for (double x : u.values()) os << num(x) << '\n';
}

/// Inverse of write_field. Weights are rebuilt as h^d (times tau for
/// space-time fields), where d = 1 when ny == 1 < nx and d = 2 otherwise.
inline ControlField read_field(std::istream& is, bool space_time) {
  GridMeta m;
  if (space_time) {
    is >> m.nx >> m.ny >> m.nt >> m.h >> m.tau;
  } else {
    is >> m.nx >> m.ny >> m.h;
  }
  if (!is || m.nx < 1 || m.ny < 1 || !(m.h > 0.0) ||
      (space_time && (m.nt < 1 || !(m.tau > 0.0)))) {
    throw InvalidInput("read_field: malformed header");
  }
  const std::size_t count = m.nodes_per_slice() * m.slices();
  std::vector<double> values(count);
  for (auto& x : values) {
    if (!(is >> x)) throw InvalidInput("read_field: truncated value list");
  }
  const int dim = (m.ny == 1 && m.nx > 1) ? 1 : 2;
  double w = std::pow(m.h, dim);
  if (space_time) w *= m.tau;
  return ControlField(std::move(values), std::vector<double>(count, w), m);
}

}  // namespace gcg::pde
