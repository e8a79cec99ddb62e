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
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <system_error>

#include "gcg/core/errors.hpp"
#include "gcg/core/solver.hpp"

namespace gcg::cli {

/// One experiment. Empty output paths are derived from output_dir and the
/// problem name.
struct RunConfig {
  std::string problem = "stadler-ex1";
  int n = 32;
  int nt = 100;
  double gap_tol = 1e-10;
  int max_iter = 1000;
  double alpha = 0.5;
  double gamma = 0.99;
  std::string output_dir = ".";
  std::string history_path;
  std::string field_path;
  std::string report_path;
  std::string profile_path;
  bool track_errors = false;
  bool diagnostics = true;
  std::uint64_t seed = 12345;

  [[nodiscard]] SolverConfig solver_config() const {
    SolverConfig c;
    c.gap_tol = gap_tol;
    c.max_iter = max_iter;
    c.armijo.alpha = alpha;
    c.armijo.gamma = gamma;
    return c;
  }

  void validate() const {
    if (n < 1) throw InvalidInput("n must be >= 1");
    if (nt < 1) throw InvalidInput("nt must be >= 1");
    solver_config().validate();
  }

  /// Fills empty output paths from output_dir.
  void resolve_paths() {
    namespace fs = std::filesystem;
    const fs::path dir(output_dir);
    const auto fill = [&](std::string& path, std::string_view suffix) {
      if (path.empty()) path = (dir / (problem + std::string(suffix))).string();
    };
    fill(history_path, "_history.csv");
    fill(field_path, "_control.field");
    fill(report_path, "_report.txt");
    fill(profile_path, "_time_profile.csv");
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw InvalidInput("config: bad value for '" + std::string(key) + "': " +
                       std::string(text));
  }
  return value;
}

inline bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw InvalidInput("config: bad boolean for '" + std::string(key) + "': " +
                     std::string(text));
}

}  // namespace detail

/// Applies one key/value pair. Unknown keys throw InvalidInput.
inline void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  using detail::parse_bool;
  using detail::parse_number;
  if (key == "problem") cfg.problem = value;
  else if (key == "n") cfg.n = parse_number<int>(key, value);
  else if (key == "nt") cfg.nt = parse_number<int>(key, value);
  else if (key == "tol") cfg.gap_tol = parse_number<double>(key, value);
  else if (key == "max_iter") cfg.max_iter = parse_number<int>(key, value);
  else if (key == "alpha") cfg.alpha = parse_number<double>(key, value);
  else if (key == "gamma") cfg.gamma = parse_number<double>(key, value);
  else if (key == "output_dir") cfg.output_dir = value;
  else if (key == "history") cfg.history_path = value;
  else if (key == "field") cfg.field_path = value;
  else if (key == "report") cfg.report_path = value;
  else if (key == "profile") cfg.profile_path = value;
  else if (key == "errors") cfg.track_errors = parse_bool(key, value);
  else if (key == "diagnostics") cfg.diagnostics = parse_bool(key, value);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else throw InvalidInput("config: unknown key '" + std::string(key) + "'");
}

/// Flat "key = value" lines; '#' starts a comment.
inline std::map<std::string, std::string> parse_config_text(std::istream& is) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = detail::trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidInput("config line " + std::to_string(lineno) + ": expected key=value");
    }
    out[std::string(detail::trim(view.substr(0, eq)))] =
        std::string(detail::trim(view.substr(eq + 1)));
  }
  return out;
}

inline void apply_settings(RunConfig& cfg,
                           const std::map<std::string, std::string>& settings) {
  for (const auto& [k, v] : settings) apply_setting(cfg, k, v);
}

/// Defaults, overridden by the config file, overridden by explicit flags.
inline RunConfig resolve_config(const std::map<std::string, std::string>& file_settings,
                                const std::map<std::string, std::string>& flag_settings) {
  RunConfig cfg;
  apply_settings(cfg, file_settings);
  apply_settings(cfg, flag_settings);
  return cfg;
}

}  // namespace gcg::cli
