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

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gcg/cli/registry.hpp"
#include "gcg/cli/run_config.hpp"
#include "gcg/cli/runner.hpp"

namespace {

using Settings = std::map<std::string, std::string>;

Settings load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw gcg::cli::IoError("cannot read config '" + path + "'");
  return gcg::cli::parse_config_text(is);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized conditional gradient experiments"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List the registered problems");

  auto* run = app.add_subcommand("run", "Solve one problem and write its outputs");
  std::string config_path;
  run->add_option("--config", config_path, "Flat key=value config file");
  // Flags are kept as text and only applied when given, so that they
  // override the config file, which overrides the defaults.
  struct Flag {
    const char* name;
    const char* key;
    const char* help;
  };
  const std::vector<Flag> flags = {
      {"--problem", "problem", "Registered problem name"},
      {"--n", "n", "Interior grid points per space direction"},
      {"--nt", "nt", "Time steps (parabolic problems)"},
      {"--tol", "tol", "Gap tolerance"},
      {"--max-iter", "max_iter", "Iteration limit"},
      {"--alpha", "alpha", "Armijo alpha in (0, 1/2]"},
      {"--gamma", "gamma", "Armijo backtracking factor in (0, 1)"},
      {"--output-dir", "output_dir", "Directory for derived output paths"},
      {"--history", "history", "History CSV path"},
      {"--field", "field", "Final control dump path"},
      {"--report", "report", "Diagnostics report path"},
      {"--profile", "profile", "Time profile CSV path (parabolic)"},
      {"--seed", "seed", "Seed for the randomized diagnostics"},
  };
  std::vector<std::string> values(flags.size());
  std::vector<CLI::Option*> options;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    options.push_back(run->add_option(flags[i].name, values[i], flags[i].help));
  }
  bool errors = false;
  bool no_diagnostics = false;
  auto* errors_flag =
      run->add_flag("--errors", errors, "Track ||u^k - u_ref|| and ||v^k - u_ref||");
  auto* nodiag_flag =
      run->add_flag("--no-diagnostics", no_diagnostics, "Skip the post-hoc analysis");

  auto* batch = app.add_subcommand("batch", "Run several config files");
  std::vector<std::string> batch_configs;
  int jobs = 1;
  batch->add_option("configs", batch_configs, "Config files")->required();
  batch->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? gcg::cli::kOk : gcg::cli::kUsage;
  }

  if (list->parsed()) {
    const auto entries = gcg::cli::list_problems();
    std::size_t width = 0;
    for (const auto& e : entries) width = std::max(width, e.name.size());
    for (const auto& e : entries) {
      std::cout << std::left << std::setw(static_cast<int>(width + 2)) << e.name
                << e.description << '\n';
    }
    return gcg::cli::kOk;
  }

  try {
    if (batch->parsed()) {
      std::vector<gcg::cli::RunConfig> configs;
      for (const auto& path : batch_configs) {
        configs.push_back(gcg::cli::resolve_config(load_config_file(path), {}));
      }
      return gcg::cli::run_batch(configs, jobs, std::cout);
    }
    Settings file;
    if (!config_path.empty()) file = load_config_file(config_path);
    Settings given;
    for (std::size_t i = 0; i < flags.size(); ++i) {
      if (options[i]->count() > 0) given[flags[i].key] = values[i];
    }
    if (errors_flag->count() > 0) given["errors"] = "true";
    if (nodiag_flag->count() > 0) given["diagnostics"] = "false";
    const gcg::cli::RunConfig cfg = gcg::cli::resolve_config(file, given);
    return gcg::cli::run(cfg, std::cout);
  } catch (const gcg::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gcg::cli::kUsage;
  } catch (const gcg::cli::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return gcg::cli::kIo;
  }
}
