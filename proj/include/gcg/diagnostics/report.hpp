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

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

namespace gcg::diagnostics {

/// Shortest decimal text that reads back to the same double. Non-finite
/// values print as "nan", "inf" and "-inf".
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// Ordered "name = value" report.
class Report {
 public:
  void add(std::string name, double value) {
    entries_.emplace_back(std::move(name), format_double(value));
  }
  void add(std::string name, int value) {
    entries_.emplace_back(std::move(name), std::to_string(value));
  }
  void add(std::string name, long long value) {
    entries_.emplace_back(std::move(name), std::to_string(value));
  }
  void add(std::string name, bool value) {
    entries_.emplace_back(std::move(name), value ? "true" : "false");
  }
  void add(std::string name, std::string_view value) {
    entries_.emplace_back(std::move(name), std::string(value));
  }
  void add(std::string name, const char* value) {
    add(std::move(name), std::string_view(value));
  }

  [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  void write(std::ostream& os) const {
    for (const auto& [k, v] : entries_) os << k << " = " << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace gcg::diagnostics
