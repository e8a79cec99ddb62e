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
#include <utility>
#include <vector>

#include "gcg/core/control_field.hpp"
#include "gcg/core/errors.hpp"

namespace gcg::pde {

/// Uniform grid of interior nodes on the unit interval (dim = 1) or the unit
/// square (dim = 2); h = 1/(n+1). Node (ix, iy) has coordinates
/// ((ix+1) h, (iy+1) h) and flat index iy * n + ix.
struct SpatialGrid {
  int n = 1;
  int dim = 2;

  static SpatialGrid square(int n) { return make(n, 2); }
  static SpatialGrid interval(int n) { return make(n, 1); }

  [[nodiscard]] double h() const { return 1.0 / (n + 1); }
  [[nodiscard]] std::size_t size() const {
    const auto m = static_cast<std::size_t>(n);
    return dim == 1 ? m : m * m;
  }
  /// Quadrature weight of one node (composite midpoint rule).
  [[nodiscard]] double cell_measure() const { return std::pow(h(), dim); }

  [[nodiscard]] double x1(std::size_t idx) const {
    return static_cast<double>(idx % static_cast<std::size_t>(n) + 1) * h();
  }
  [[nodiscard]] double x2(std::size_t idx) const {
    return dim == 1 ? 0.0
                    : static_cast<double>(idx / static_cast<std::size_t>(n) + 1) * h();
  }

  [[nodiscard]] GridMeta meta() const {
    return GridMeta{n, dim == 1 ? 1 : n, 0, h(), 0.0};
  }

  [[nodiscard]] ControlField zeros() const {
    return ControlField(std::vector<double>(size(), 0.0),
                        std::vector<double>(size(), cell_measure()), meta());
  }

  template <class Fn>
  [[nodiscard]] ControlField sample(Fn&& fn) const {
    std::vector<double> values(size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = fn(x1(i), x2(i));
    return ControlField(std::move(values),
                        std::vector<double>(size(), cell_measure()), meta());
  }

 private:
  static SpatialGrid make(int n, int dim) {
    if (n < 1) throw InvalidInput("SpatialGrid: n must be >= 1");
    return SpatialGrid{n, dim};
  }
};

/// Spatial grid times nt implicit-Euler levels t_m = m tau, m = 1..nt.
/// Space-time fields are stored slice after slice.
struct SpaceTimeGrid {
  SpatialGrid space;
  int nt = 1;
  double horizon = 1.0;

  static SpaceTimeGrid make(SpatialGrid space, int nt, double horizon = 1.0) {
    if (nt < 1) throw InvalidInput("SpaceTimeGrid: nt must be >= 1");
    if (!(horizon > 0.0)) throw InvalidInput("SpaceTimeGrid: T must be > 0");
    return SpaceTimeGrid{space, nt, horizon};
  }

  [[nodiscard]] double tau() const { return horizon / nt; }
  [[nodiscard]] double time(int m) const { return (m + 1) * tau(); }
  [[nodiscard]] std::size_t slice_size() const { return space.size(); }
  [[nodiscard]] std::size_t size() const {
    return space.size() * static_cast<std::size_t>(nt);
  }
  [[nodiscard]] double weight() const { return tau() * space.cell_measure(); }

  [[nodiscard]] GridMeta meta() const {
    GridMeta m = space.meta();
    m.nt = nt;
    m.tau = tau();
    return m;
  }

  [[nodiscard]] ControlField zeros() const {
    return ControlField(std::vector<double>(size(), 0.0),
                        std::vector<double>(size(), weight()), meta());
  }

  /// fn(x1, x2, t) sampled at every node and time level.
  template <class Fn>
  [[nodiscard]] ControlField sample(Fn&& fn) const {
    std::vector<double> values(size());
    const std::size_t ns = slice_size();
    for (int m = 0; m < nt; ++m) {
      const double t = time(m);
      for (std::size_t i = 0; i < ns; ++i) {
        values[static_cast<std::size_t>(m) * ns + i] =
            fn(space.x1(i), space.x2(i), t);
      }
    }
    return ControlField(std::move(values), std::vector<double>(size(), weight()),
                        meta());
  }
};

}  // namespace gcg::pde
