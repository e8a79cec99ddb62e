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
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "gcg/core/errors.hpp"
#include "gcg/core/solver.hpp"
#include "gcg/diagnostics/report.hpp"

namespace gcg::cli {

inline constexpr std::string_view kHistoryHeader = "k,j,gap,step,backtracks,err_u,err_v";

/// One row per record; err columns are empty when not tracked.
inline void write_history_csv(std::ostream& os, std::span<const IterateRecord> history) {
  using diagnostics::format_double;
  os << kHistoryHeader << '\n';
  for (const auto& r : history) {
    os << r.k << ',' << format_double(r.j_value) << ',' << format_double(r.gap) << ','
       << format_double(r.step) << ',' << r.backtracks << ','
       << (r.err_u ? format_double(*r.err_u) : "") << ','
       << (r.err_v ? format_double(*r.err_v) : "") << '\n';
  }
}

namespace detail {

inline double parse_csv_double(std::string_view s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw InvalidInput("history csv: bad number '" + std::string(s) + "'");
  }
  return x;
}

inline int parse_csv_int(std::string_view s) {
  int x = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw InvalidInput("history csv: bad integer '" + std::string(s) + "'");
  }
  return x;
}

}  // namespace detail

/// Inverse of write_history_csv (dual-norm columns are not stored).
inline std::vector<IterateRecord> read_history_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kHistoryHeader) {
    throw InvalidInput("history csv: missing header");
  }
  std::vector<IterateRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> cols;
    std::string_view view(line);
    for (;;) {
      const auto comma = view.find(',');
      cols.push_back(view.substr(0, comma));
      if (comma == std::string_view::npos) break;
      view.remove_prefix(comma + 1);
    }
    if (cols.size() != 7) throw InvalidInput("history csv: expected 7 columns");
    IterateRecord r;
    r.k = detail::parse_csv_int(cols[0]);
    r.j_value = detail::parse_csv_double(cols[1]);
    r.gap = detail::parse_csv_double(cols[2]);
    r.step = detail::parse_csv_double(cols[3]);
    r.backtracks = detail::parse_csv_int(cols[4]);
    if (!cols[5].empty()) r.err_u = detail::parse_csv_double(cols[5]);
    if (!cols[6].empty()) r.err_v = detail::parse_csv_double(cols[6]);
    out.push_back(r);
  }
  return out;
}

}  // namespace gcg::cli
