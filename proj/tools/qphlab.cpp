// Copyright 2026 The qphlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line experiment runner. One subcommand per built-in experiment;
// `--config file.json` supplies a base configuration and explicit flags
// override it. Exit codes: 0 success, 2 validation/usage error, 3 when a
// measured quantity violated a certified bound.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qphlab/experiments.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw std::invalid_argument("cannot read config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

// Per-subcommand parse state. Flag values live in a std::map so the
// addresses handed to CLI11 stay stable while options are added.
struct SubState {
  const qphlab::ExperimentDef* def = nullptr;
  std::string config_path;
  std::uint64_t seed = 1;
  long trials = 0;
  std::string out_path;
  int threads = 1;
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_options;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

int run_subcommand(const SubState& state) {
  qphlab::ExperimentConfig cfg;
  if (!state.config_path.empty()) {
    cfg = qphlab::config_from_json(slurp(state.config_path));
    if (!cfg.experiment.empty() && cfg.experiment != state.def->name) {
      throw std::invalid_argument("config file names experiment '" + cfg.experiment +
                                  "' but the command line asked for '" + state.def->name + "'");
    }
  }
  cfg.experiment = state.def->name;
  if (state.seed_opt->count() > 0) cfg.seed = state.seed;
  if (state.trials_opt->count() > 0) cfg.trials = state.trials;
  if (state.out_opt->count() > 0) cfg.out_path = state.out_path;
  if (state.threads_opt->count() > 0) cfg.threads = state.threads;
  for (const auto& [name, option] : state.flag_options) {
    if (option->count() > 0) cfg.params[name] = state.flag_values.at(name);
  }

  qphlab::ExperimentResult result = qphlab::run_experiment(cfg);
  if (cfg.out_path.empty()) {
    std::cout << qphlab::emit_csv(result.rows);
  } else {
    qphlab::write_csv(cfg.out_path, result.rows);
  }
  if (result.violation) {
    std::cerr << "invariant violation: " << result.violation_message << "\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qphlab: desk-scale laboratory for quantified proof-system games"};
  app.set_version_flag("--version", "qphlab 0.1.0");
  app.require_subcommand(1);

  int exit_code = 0;
  std::vector<std::shared_ptr<SubState>> states;
  for (const qphlab::ExperimentDef& def : qphlab::experiment_registry()) {
    auto state = std::make_shared<SubState>();
    state->def = &def;
    states.push_back(state);

    CLI::App* sub = app.add_subcommand(def.name, def.help);
    sub->add_option("--config", state->config_path, "JSON config file (flags override it)");
    state->seed_opt = sub->add_option("--seed", state->seed, "base RNG seed [1]");
    state->trials_opt = sub->add_option(
        "--trials", state->trials,
        "Monte-Carlo trials [" + std::to_string(def.default_trials) + "]");
    state->out_opt = sub->add_option("--out", state->out_path, "CSV output path [stdout]");
    state->threads_opt =
        sub->add_option("--threads", state->threads, "worker threads; 0 = hardware [1]");
    for (const qphlab::ParamSpec& param : def.params) {
      auto [it, inserted] = state->flag_values.emplace(param.name, param.default_value);
      state->flag_options[param.name] = sub->add_option(
          "--" + param.name, it->second, param.help + " [" + param.default_value + "]");
    }
    sub->callback([state, &exit_code] { exit_code = run_subcommand(*state); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
