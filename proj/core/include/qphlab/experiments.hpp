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

#ifndef QPHLAB_EXPERIMENTS_HPP
#define QPHLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qphlab {

// One output record. `params` is a frozen "key=value;key=value" snapshot
// with keys in sorted order, so every row is self-describing.
struct ResultRow {
  std::string experiment;
  std::string params;
  std::string metric;
  double value = 0.0;
  std::optional<double> stderr_value;
  std::uint64_t seed = 0;

  bool operator==(const ResultRow&) const = default;
};

// Real serialized with 17 significant digits: round-trip exact for double,
// and exact dyadics render short ("0.75" stays "0.75").
std::string format_real(double v);

// "k=v;..." over the map's (sorted) iteration order. Keys and values must be
// free of the separators and of CSV metacharacters.
std::string params_string(const std::map<std::string, std::string>& params);

// CSV with header "experiment,params,metric,value,stderr,seed", UTF-8, LF
// line endings; an absent stderr renders as an empty field. The writer
// rejects rows whose text fields would need quoting.
std::string emit_csv(const std::vector<ResultRow>& rows);
void write_csv(const std::string& path, const std::vector<ResultRow>& rows);

// Inverse of emit_csv; round-trips every row bit-exactly.
std::vector<ResultRow> parse_csv(const std::string& text);

// A run request. Parameter values are kept as strings ("0.25", "7", "2x2")
// and validated against the experiment's schema by run_experiment; trials = 0
// picks the experiment default.
struct ExperimentConfig {
  std::string experiment;
  std::map<std::string, std::string> params;
  long trials = 0;
  std::uint64_t seed = 1;
  std::string out_path;
  int threads = 1;
};

// Parses {"experiment": ..., "params": {...}, "trials": N, "seed": N,
// "out": ..., "threads": N}; every key optional except that an empty
// experiment name fails validation later. Numeric parameter values are
// rendered to strings; arrays become "x"-separated dimension lists.
ExperimentConfig config_from_json(const std::string& text);

struct ExperimentResult {
  std::vector<ResultRow> rows;
  // True when a measured quantity violated a certified bound; the CLI turns
  // this into exit code 3 (a bound failure is an error, not a result).
  bool violation = false;
  std::string violation_message;
};

struct ParamSpec {
  std::string name;
  std::string default_value;
  std::string help;
};

struct ExperimentDef {
  std::string name;
  std::string help;
  long default_trials = 1;
  std::vector<ParamSpec> params;
  std::function<ExperimentResult(const ExperimentConfig&)> run;
};

// Built-in experiments: apt-bound-scan, amplification-check,
// qcph-simulation-check, isolation-frequency, bv-noise-sweep, game-value,
// measurement-lemma-scan.
const std::vector<ExperimentDef>& experiment_registry();
const ExperimentDef* find_experiment(const std::string& name);

// Validates the config against the experiment's schema, fills defaults, runs
// the trials (config.threads workers; per-trial streams keyed by seed and
// trial index), and stamps name/params/seed onto every row. Output is
// identical for every thread count.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace qphlab

#endif  // QPHLAB_EXPERIMENTS_HPP
