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
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "gcg/core/errors.hpp"

namespace gcg {

/// Describes the grid a field lives on. `nt == 0` marks a purely spatial
/// field; otherwise values are stored slice by slice (time-major).
struct GridMeta {
  int nx = 1;
  int ny = 1;
  int nt = 0;
  double h = 1.0;
  double tau = 0.0;

  [[nodiscard]] bool is_space_time() const { return nt > 0; }
  [[nodiscard]] std::size_t nodes_per_slice() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  }
  [[nodiscard]] std::size_t slices() const {
    return is_space_time() ? static_cast<std::size_t>(nt) : 1;
  }

  friend bool operator==(const GridMeta&, const GridMeta&) = default;
};

/// A discrete control: nodal amplitudes together with the quadrature
/// weights that define every integral and pairing on the grid.
///
/// The weights are immutable and shared between copies, so iterates that
/// live on the same grid do not duplicate them.
class ControlField {
 public:
  ControlField(std::vector<double> values, std::vector<double> mass,
               GridMeta meta = {})
      : values_(std::move(values)),
        mass_(std::make_shared<const std::vector<double>>(std::move(mass))),
        meta_(meta) {
    validate();
  }

  /// Field with `values` on the same grid (and sharing the weights) as `like`.
  ControlField(const ControlField& like, std::vector<double> values)
      : values_(std::move(values)), mass_(like.mass_), meta_(like.meta_) {
    if (values_.size() != mass_->size()) {
      throw InvalidInput("ControlField: value/mass length mismatch");
    }
    check_finite();
  }

  static ControlField zeros_like(const ControlField& like) {
    return ControlField(like, std::vector<double>(like.size(), 0.0));
  }

  static ControlField constant(std::size_t n, double value, double weight,
                               GridMeta meta = {}) {
    return ControlField(std::vector<double>(n, value),
                        std::vector<double>(n, weight), meta);
  }

  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::span<double> values() { return values_; }
  [[nodiscard]] std::span<const double> mass() const { return *mass_; }
  [[nodiscard]] const GridMeta& meta() const { return meta_; }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  [[nodiscard]] bool same_grid(const ControlField& other) const {
    return size() == other.size() &&
           (mass_ == other.mass_ || *mass_ == *other.mass_);
  }

  /// Total measure of the grid, i.e. the sum of the weights.
  [[nodiscard]] double measure() const {
    double total = 0.0;
    for (double w : *mass_) total += w;
    return total;
  }

  [[nodiscard]] bool all_finite() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](double x) { return std::isfinite(x); });
  }

 private:
  void validate() const {
    if (values_.empty()) throw InvalidInput("ControlField: empty field");
    if (values_.size() != mass_->size()) {
      throw InvalidInput("ControlField: value/mass length mismatch");
    }
    for (double w : *mass_) {
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw InvalidInput("ControlField: mass weights must be positive");
      }
    }
    check_finite();
  }

  void check_finite() const {
    if (!all_finite()) throw InvalidInput("ControlField: non-finite value");
  }

  std::vector<double> values_;
  std::shared_ptr<const std::vector<double>> mass_;
  GridMeta meta_;
};

inline void require_same_grid(const ControlField& a, const ControlField& b,
                              const char* where) {
  if (!a.same_grid(b)) {
    throw InvalidInput(std::string(where) + ": fields live on different grids");
  }
}

/// Mass-weighted pairing sum_i w_i a_i b_i.
inline double inner(const ControlField& a, const ControlField& b) {
  require_same_grid(a, b, "inner");
  const auto w = a.mass();
  const auto x = a.values();
  const auto y = b.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * x[i] * y[i];
  return acc;
}

/// u + s (v - u)
inline ControlField lerp(const ControlField& u, const ControlField& v,
                         double s) {
  require_same_grid(u, v, "lerp");
  std::vector<double> out(u.size());
  const auto a = u.values();
  const auto b = v.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + s * (b[i] - a[i]);
  return ControlField(u, std::move(out));
}

/// a - b
inline ControlField difference(const ControlField& a, const ControlField& b) {
  require_same_grid(a, b, "difference");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return ControlField(a, std::move(out));
}

/// c * a
inline ControlField scaled(const ControlField& a, double c) {
  std::vector<double> out(a.values().begin(), a.values().end());
  for (double& x : out) x *= c;
  return ControlField(a, std::move(out));
}

/// a + c * b
inline ControlField axpy(const ControlField& a, double c,
                         const ControlField& b) {
  require_same_grid(a, b, "axpy");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + c * b[i];
  return ControlField(a, std::move(out));
}

}  // namespace gcg
