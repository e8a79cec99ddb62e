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
#include <cstddef>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "gcg/cli/history_csv.hpp"
#include "gcg/cli/registry.hpp"
#include "gcg/cli/run_config.hpp"
#include "gcg/core/errors.hpp"
#include "gcg/core/solver.hpp"
#include "gcg/diagnostics/analysis.hpp"
#include "gcg/diagnostics/report.hpp"
#include "gcg/pde/field_io.hpp"

namespace gcg::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kIo = 3 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a run produces, before it is written to disk.
struct RunOutput {
  SolveResult result;
  /// History written to the CSV; carries err_u / err_v when tracked.
  std::vector<IterateRecord> history;
  diagnostics::Report report;
  /// Parabolic runs only: "m,t,u_norm,p_norm" rows.
  std::string time_profile;
};

namespace detail {

inline void add_structure(diagnostics::Report& rep, const problems::EllipticProblem& prob,
                          const SolveResult& res) {
  const auto s = problems::structure_report(prob, res.final_iterate, res.final_gradient);
  rep.add("structure.three_valued_fraction", s.three_valued_fraction);
  rep.add("structure.case_consistent_fraction", s.case_consistent_fraction);
}

inline void add_structure(diagnostics::Report& rep, const problems::ParabolicProblem& prob,
                          const SolveResult& res) {
  const auto profile =
      problems::time_profile(prob, res.final_iterate, res.final_gradient);
  rep.add("structure.switching_fraction", problems::switching_fraction(prob, profile));
}

inline std::string profile_text(const problems::EllipticProblem&, const SolveResult&) {
  return {};
}

inline std::string profile_text(const problems::ParabolicProblem& prob,
                                const SolveResult& res) {
  using diagnostics::format_double;
  const auto profile =
      problems::time_profile(prob, res.final_iterate, res.final_gradient);
  std::ostringstream os;
  os << "m,t,u_norm,p_norm\n";
  for (std::size_t m = 0; m < profile.control_norms.size(); ++m) {
    os << m << ',' << format_double(prob.grid().time(static_cast<int>(m))) << ','
       << format_double(profile.control_norms[m]) << ','
       << format_double(profile.adjoint_norms[m]) << '\n';
  }
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << text;
  os.flush();
  if (!os) throw IoError("write failed for '" + path + "'");
}

}  // namespace detail

/// Solves and analyses one configuration without touching the file system.
inline RunOutput execute(const RunConfig& cfg) {
  cfg.validate();
  const AnyProblem any = make_problem(cfg.problem, cfg.n, cfg.nt);
  return std::visit(
      [&](const auto& prob) {
        const SolverConfig sc = cfg.solver_config();
        const ControlField u0 = prob.zeros();
        RunOutput out{gcg_solve(prob, u0, sc), {}, {}, {}};
        out.history = out.result.history;
        auto& rep = out.report;
        rep.add("problem", cfg.problem);
        rep.add("n", cfg.n);
        if (is_parabolic(cfg.problem)) rep.add("nt", cfg.nt);
        rep.add("status", to_string(out.result.status));
        rep.add("iterations", out.result.iterations());
        rep.add("final_j", out.result.history.back().j_value);
        rep.add("final_gap", out.result.history.back().gap);
        detail::add_structure(rep, prob, out.result);
        if (cfg.diagnostics || cfg.track_errors) {
          diagnostics::AnalysisOptions opts;
          opts.seed = cfg.seed;
          opts.coupling = cfg.track_errors;
          const diagnostics::RunAnalysis a =
              diagnostics::analyze(prob, u0, out.result, sc, opts);
          if (cfg.diagnostics) diagnostics::add_to_report(rep, a);
          if (cfg.track_errors && !a.tracked_history.empty()) {
            out.history = a.tracked_history;
          }
        }
        out.time_profile = detail::profile_text(prob, out.result);
        return out;
      },
      any);
}

/// Writes history CSV, field dump, report and (parabolic) time profile.
inline void write_outputs(const RunConfig& cfg, const RunOutput& out) {
  RunConfig c = cfg;
  c.resolve_paths();
  std::error_code ec;
  std::filesystem::create_directories(c.output_dir, ec);
  if (ec) throw IoError("cannot create '" + c.output_dir + "': " + ec.message());
  std::ostringstream csv;
  write_history_csv(csv, out.history);
  detail::write_file(c.history_path, csv.str());
  std::ostringstream field;
  pde::write_field(field, out.result.final_iterate);
  detail::write_file(c.field_path, field.str());
  std::ostringstream rep;
  out.report.write(rep);
  detail::write_file(c.report_path, rep.str());
  if (!out.time_profile.empty()) detail::write_file(c.profile_path, out.time_profile);
}

/// Runs one configuration and maps failures to exit codes, logging a
/// one-line summary or the error message.
inline int run(const RunConfig& cfg, std::ostream& log) {
  try {
    const RunOutput out = execute(cfg);
    write_outputs(cfg, out);
    log << cfg.problem << ": " << to_string(out.result.status) << " after "
        << out.result.iterations() << " iterations, gap "
        << diagnostics::format_double(out.result.history.back().gap) << '\n';
    return kOk;
  } catch (const InvalidInput& e) {
    log << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    log << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const IoError& e) {
    log << "I/O error: " << e.what() << '\n';
    return kIo;
  }
}

/// Runs independent configurations on up to `jobs` threads. Logs are
/// collected per run and emitted in input order; the result is the largest
/// exit code.
inline int run_batch(const std::vector<RunConfig>& configs, int jobs, std::ostream& log) {
  std::vector<std::string> logs(configs.size());
  std::vector<int> codes(configs.size(), kOk);
  std::size_t next = 0;
  std::mutex mu;
  const auto worker = [&] {
    for (;;) {
      std::size_t i = 0;
      {
        std::lock_guard lock(mu);
        if (next >= configs.size()) return;
        i = next++;
      }
      std::ostringstream os;
      codes[i] = run(configs[i], os);
      logs[i] = os.str();
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(configs.size())));
  std::vector<std::thread> threads;
  for (int t = 0; t < n; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  int worst = kOk;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    log << logs[i];
    worst = std::max(worst, codes[i]);
  }
  return worst;
}

}  // namespace gcg::cli
