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

#include "qphlab/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "qphlab/circuit.hpp"
#include "qphlab/game_solver.hpp"
#include "qphlab/isolation.hpp"
#include "qphlab/linalg.hpp"
#include "qphlab/parallel.hpp"
#include "qphlab/product_tests.hpp"
#include "qphlab/search_to_decision.hpp"
#include "qphlab/transforms.hpp"
#include "qphlab/verifier.hpp"

namespace qphlab {

namespace {

// One-sided 99% normal quantile, used for Monte-Carlo lower confidence bounds.
constexpr double kZ99 = 2.3263478740408408;

using ParamMap = std::map<std::string, std::string>;

void check_csv_field(const std::string& field, const char* what) {
  for (char ch : field) {
    if (ch == ',' || ch == '"' || ch == '\n' || ch == '\r') {
      throw std::invalid_argument(std::string("csv: ") + what +
                                  " contains a comma, quote, or newline: " + field);
    }
  }
}

// ---- Typed parameter access (values are validated strings) ----

const std::string& raw_param(const ExperimentConfig& cfg, const std::string& name) {
  auto it = cfg.params.find(name);
  if (it == cfg.params.end()) {
    throw std::invalid_argument("missing parameter '" + name + "'");
  }
  return it->second;
}

long get_int(const ExperimentConfig& cfg, const std::string& name) {
  const std::string& text = raw_param(cfg, name);
  size_t used = 0;
  long value = 0;
  try {
    value = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::invalid_argument("parameter '" + name + "' wants an integer, got '" + text + "'");
  }
  return value;
}

double get_real(const ExperimentConfig& cfg, const std::string& name) {
  const std::string& text = raw_param(cfg, name);
  size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || !std::isfinite(value)) {
    throw std::invalid_argument("parameter '" + name + "' wants a real, got '" + text + "'");
  }
  return value;
}

const std::string& get_str(const ExperimentConfig& cfg, const std::string& name) {
  return raw_param(cfg, name);
}

// Dimension list "2x2x3" -> {2,2,3}; empty string -> {}.
std::vector<Index> get_dims(const ExperimentConfig& cfg, const std::string& name) {
  const std::string& text = raw_param(cfg, name);
  std::vector<Index> dims;
  if (text.empty()) return dims;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t next = text.find('x', pos);
    std::string piece = text.substr(pos, next == std::string::npos ? next : next - pos);
    size_t used = 0;
    long d = 0;
    try {
      d = std::stol(piece, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != piece.size() || piece.empty() || d < 1) {
      throw std::invalid_argument("parameter '" + name + "' wants dims like 2x2, got '" + text +
                                  "'");
    }
    dims.push_back(d);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return dims;
}

long require_range(long value, long lo, long hi, const std::string& name) {
  if (value < lo || value > hi) {
    throw std::invalid_argument("parameter '" + name + "' = " + std::to_string(value) +
                                " outside [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                "]");
  }
  return value;
}

// Effective parameter snapshot for a row, with optional per-row extras.
ResultRow make_row(const ParamMap& params, std::string metric, double value,
                   std::optional<double> se = std::nullopt) {
  ResultRow row;
  row.params = params_string(params);
  row.metric = std::move(metric);
  row.value = value;
  row.stderr_value = se;
  return row;
}

ParamMap with_trial(const ParamMap& params, long trial) {
  ParamMap out = params;
  out["trial"] = std::to_string(trial);
  return out;
}

void flag_violation(ExperimentResult& res, bool ok, const std::string& message) {
  if (!ok && !res.violation) {
    res.violation = true;
    res.violation_message = message;
  }
}

struct RateSummary {
  double rate = 0.0;
  double se = 0.0;
  double lcb99 = 0.0;
};

RateSummary summarize_rate(const std::vector<unsigned char>& wins) {
  RateSummary s;
  double n = static_cast<double>(wins.size());
  double hits = 0.0;
  for (unsigned char w : wins) hits += w;
  s.rate = hits / n;
  s.se = std::sqrt(std::max(0.0, s.rate * (1.0 - s.rate) / n));
  s.lcb99 = s.rate - kZ99 * s.se;
  return s;
}

GameSolveOptions solve_options_from(const ExperimentConfig& cfg) {
  GameSolveOptions opts;
  opts.grid_theta = static_cast<int>(require_range(get_int(cfg, "grid_theta"), 2, 4096, "grid_theta"));
  opts.grid_phi = static_cast<int>(require_range(get_int(cfg, "grid_phi"), 2, 8192, "grid_phi"));
  opts.seed = cfg.seed;
  return opts;
}

// ---- Toy games reused across experiments ----

// Scaled SWAP-test game on two qubit proofs: played honestly (equal proofs)
// it accepts with probability `scale`, so the ForAll-Exists value is `scale`.
QuantifiedGame scaled_swap_game(double scale, Quantifier first, Quantifier second) {
  AcceptOperator swap = swap_test_operator(2);
  return QuantifiedGame(AcceptOperator(swap.mat * scale, swap.layout), {first, second},
                        {ProofKind::Pure, ProofKind::Pure});
}

// Scaled equality game on two classical bits: accept probability is `scale`
// when the bits agree and 0 otherwise.
QuantifiedGame scaled_equality_game(double scale, Quantifier first, Quantifier second) {
  std::vector<double> probs = {scale, 0.0, 0.0, scale};
  return QuantifiedGame(diagonal_accept_operator(probs, proof_layout({2, 2})), {first, second},
                        {ProofKind::Classical, ProofKind::Classical});
}

// ---- apt-bound-scan ----
//
// Per trial: draw one random state per tested subsystem and a random joint
// state on the copies-plus-side-information register, run the certified
// product-overlap search on the latter, and check that the product test's
// measured acceptance stays below the soundness ceiling the search implies.

ExperimentResult run_apt_bound_scan(const ExperimentConfig& cfg) {
  long n = require_range(get_int(cfg, "n"), 1, 6, "n");
  long m = require_range(get_int(cfg, "m"), 1, 6, "m");
  long d = require_range(get_int(cfg, "d"), 2, 16, "d");
  long dprime = require_range(get_int(cfg, "dprime"), 1, 16, "dprime");
  std::vector<Index> a_dims = get_dims(cfg, "dims");
  if (a_dims.empty()) a_dims.assign(static_cast<size_t>(n), d);

  AptLayout layout;
  layout.subsystem_dims = a_dims;
  layout.copies = static_cast<int>(m);
  layout.extra_dim = dprime;

  ProductOverlapOptions search;
  search.mode = SearchMode::Certified;
  search.grid_theta = static_cast<int>(require_range(get_int(cfg, "grid_theta"), 2, 4096, "grid_theta"));
  search.grid_phi = static_cast<int>(require_range(get_int(cfg, "grid_phi"), 2, 8192, "grid_phi"));

  AcceptOperator apt = apt_operator(layout);
  Index bc = layout.bc_dim();

  std::vector<double> margins(static_cast<size_t>(cfg.trials), 0.0);
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t t) {
    SplitMix64 rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
    std::vector<ProofState> proofs;
    proofs.reserve(layout.subsystem_dims.size() + 1);
    for (Index dim : layout.subsystem_dims) proofs.emplace_back(random_state(dim, rng));
    QState phi = random_state(bc, rng);
    double acceptance = accept_probability(apt, [&] {
      std::vector<ProofState> all = proofs;
      all.emplace_back(phi);
      return all;
    }());
    ProductOverlapResult overlap = best_product_overlap(phi, layout, search);
    margins[static_cast<size_t>(t)] = apt_acceptance_bound(overlap, layout) - acceptance;
  });

  ExperimentResult res;
  for (long t = 0; t < cfg.trials; ++t) {
    bool ok = margins[static_cast<size_t>(t)] >= -tol::kNumeric;
    res.rows.push_back(
        make_row(with_trial(cfg.params, t), "bound_satisfied", ok ? 1.0 : 0.0));
    flag_violation(res, ok,
                   "apt-bound-scan: trial " + std::to_string(t) + " exceeded the ceiling by " +
                       format_real(-margins[static_cast<size_t>(t)]));
  }
  return res;
}

// ---- amplification-check ----
//
// Builds YES/NO instances of the scaled SWAP game (values c and s), applies
// the one-sided amplifier, solves both transformed games with a certified
// grid, and checks the advertised completeness floor and soundness ceiling
// against the certified brackets.

ExperimentResult run_amplification_check(const ExperimentConfig& cfg) {
  long m = require_range(get_int(cfg, "m"), 1, 4, "m");
  double c = get_real(cfg, "c");
  double s = get_real(cfg, "s");
  GameSolveOptions solver = solve_options_from(cfg);

  AmplifiedGameSpec yes_spec(scaled_swap_game(c, Quantifier::ForAll, Quantifier::Exists), c, s,
                             static_cast<int>(m));
  AmplifiedGameSpec no_spec(scaled_swap_game(s, Quantifier::ForAll, Quantifier::Exists), c, s,
                            static_cast<int>(m));
  QuantifiedGame yes_game = one_sided_amplify(yes_spec);
  QuantifiedGame no_game = one_sided_amplify(no_spec);

  // Honest response: both base provers send |0>, the amplified last register
  // carries the bundled copies.
  QState zero = basis_state({2}, 0);
  std::vector<QState> honest = honest_amplified_response(yes_spec, {zero, zero});
  std::vector<ProofState> honest_proofs(honest.begin(), honest.end());
  double yes_honest = accept_probability(yes_game.accept, honest_proofs);

  GameValueResult yes = solve_game(yes_game, solver);
  GameValueResult no = solve_game(no_game, solver);
  double yes_bound = amplified_yes_bound(c, s, static_cast<int>(m));
  double no_bound = amplified_no_bound(s, static_cast<int>(m), 1);
  bool yes_ok = yes.value + yes.gap + tol::kNumeric >= yes_bound &&
                yes_honest + tol::kNumeric >= yes_bound;
  bool no_ok = no.value - no.gap - tol::kNumeric <= no_bound;

  ExperimentResult res;
  res.rows.push_back(make_row(cfg.params, "yes_honest", yes_honest));
  res.rows.push_back(make_row(cfg.params, "yes_value", yes.value));
  res.rows.push_back(make_row(cfg.params, "yes_gap", yes.gap));
  res.rows.push_back(make_row(cfg.params, "yes_bound", yes_bound));
  res.rows.push_back(make_row(cfg.params, "yes_ok", yes_ok ? 1.0 : 0.0));
  res.rows.push_back(make_row(cfg.params, "no_value", no.value));
  res.rows.push_back(make_row(cfg.params, "no_gap", no.gap));
  res.rows.push_back(make_row(cfg.params, "no_bound", no_bound));
  res.rows.push_back(make_row(cfg.params, "no_ok", no_ok ? 1.0 : 0.0));
  flag_violation(res, yes_ok, "amplification-check: completeness floor missed");
  flag_violation(res, no_ok, "amplification-check: soundness ceiling exceeded");
  return res;
}

// ---- qcph-simulation-check ----
//
// Builds YES/NO instances of the scaled equality game over two classical
// bits (values c and s), applies the classical-to-pure simulation, solves
// the transformed games, and checks the derived completeness/soundness
// bounds plus exact diagonality of the measurement branch.

ExperimentResult run_qcph_simulation_check(const ExperimentConfig& cfg) {
  long m = require_range(get_int(cfg, "m"), 1, 6, "m");
  double c = get_real(cfg, "c");
  double s = get_real(cfg, "s");
  GameSolveOptions solver = solve_options_from(cfg);

  SimulationGameSpec yes_spec(scaled_equality_game(c, Quantifier::ForAll, Quantifier::Exists),
                              static_cast<int>(m));
  SimulationGameSpec no_spec(scaled_equality_game(s, Quantifier::ForAll, Quantifier::Exists),
                             static_cast<int>(m));
  QuantifiedGame yes_game = qcph_to_qphpure_transform(yes_spec);
  QuantifiedGame no_game = qcph_to_qphpure_transform(no_spec);

  AcceptOperator meas = simulation_measure_operator(yes_spec);
  double off = 0.0;
  for (Index i = 0; i < meas.dim(); ++i) {
    for (Index j = 0; j < meas.dim(); ++j) {
      if (i != j) off = std::max(off, std::abs(meas.mat(i, j)));
    }
  }
  bool meas_ok = off < 1e-12;

  std::vector<QState> honest = honest_simulation_response(yes_spec, {"0", "0"});
  std::vector<ProofState> honest_proofs(honest.begin(), honest.end());
  double yes_honest = accept_probability(yes_game.accept, honest_proofs);

  GameValueResult yes = solve_game(yes_game, solver);
  GameValueResult no = solve_game(no_game, solver);
  double yes_bound = simulation_yes_bound(c, static_cast<int>(m));
  double no_bound = simulation_no_bound(s, static_cast<int>(m), 1);
  bool yes_ok = yes.value + yes.gap + tol::kNumeric >= yes_bound &&
                yes_honest + tol::kNumeric >= yes_bound;
  bool no_ok = no.value - no.gap - tol::kNumeric <= no_bound;

  ExperimentResult res;
  res.rows.push_back(make_row(cfg.params, "meas_offdiag", off));
  res.rows.push_back(make_row(cfg.params, "meas_ok", meas_ok ? 1.0 : 0.0));
  res.rows.push_back(make_row(cfg.params, "yes_honest", yes_honest));
  res.rows.push_back(make_row(cfg.params, "yes_value", yes.value));
  res.rows.push_back(make_row(cfg.params, "yes_gap", yes.gap));
  res.rows.push_back(make_row(cfg.params, "yes_bound", yes_bound));
  res.rows.push_back(make_row(cfg.params, "yes_ok", yes_ok ? 1.0 : 0.0));
  res.rows.push_back(make_row(cfg.params, "no_value", no.value));
  res.rows.push_back(make_row(cfg.params, "no_gap", no.gap));
  res.rows.push_back(make_row(cfg.params, "no_bound", no_bound));
  res.rows.push_back(make_row(cfg.params, "no_ok", no_ok ? 1.0 : 0.0));
  flag_violation(res, meas_ok, "qcph-simulation-check: measurement branch not diagonal");
  flag_violation(res, yes_ok, "qcph-simulation-check: completeness floor missed");
  flag_violation(res, no_ok, "qcph-simulation-check: soundness ceiling exceeded");
  return res;
}

// ---- isolation-frequency ----
//
// YES threshold instance whose accepting witnesses are the first `witnesses`
// bit strings; per trial, hash-isolate and count how often the result is a
// unique-witness YES. The frequency's 99% lower confidence bound must clear
// the 1/(32 ell^2) floor.

ExperimentResult run_isolation_frequency(const ExperimentConfig& cfg) {
  long ell = require_range(get_int(cfg, "ell"), 2, 8, "ell");
  long witnesses =
      require_range(get_int(cfg, "witnesses"), 1, 1L << ell, "witnesses");

  std::vector<std::string> accepted;
  accepted.reserve(static_cast<size_t>(witnesses));
  for (long w = 0; w < witnesses; ++w) {
    accepted.push_back(bits_of_index(w, static_cast<int>(ell)));
  }
  long long denom = 1;
  for (int i = 0; i < 4; ++i) denom *= ell;
  TqcmappInstance inst(lookup_verifier_circuit(0, static_cast<int>(ell), accepted), "",
                       Rational(1, denom), Rational(denom - 1, denom), static_cast<int>(ell));
  std::vector<double> acceptances = witness_acceptances(inst);

  std::vector<unsigned char> wins(static_cast<size_t>(cfg.trials), 0);
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t t) {
    SplitMix64 rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
    UqcmappInstance hashed = vv_isolate(inst, rng);
    wins[static_cast<size_t>(t)] =
        uqcmapp_status_from(acceptances, hashed) == InstanceStatus::Yes ? 1 : 0;
  });

  RateSummary rate = summarize_rate(wins);
  double floor = 1.0 / (32.0 * static_cast<double>(ell) * static_cast<double>(ell));
  bool floor_ok = rate.lcb99 >= floor;

  ExperimentResult res;
  res.rows.push_back(make_row(cfg.params, "unique_frequency", rate.rate, rate.se));
  res.rows.push_back(make_row(cfg.params, "frequency_lcb99", rate.lcb99));
  res.rows.push_back(make_row(cfg.params, "unique_floor", floor));
  res.rows.push_back(make_row(cfg.params, "floor_ok", floor_ok ? 1.0 : 0.0));
  flag_violation(res, floor_ok,
                 "isolation-frequency: 99% lower confidence bound " + format_real(rate.lcb99) +
                     " fell below the floor " + format_real(floor));
  return res;
}

// ---- bv-noise-sweep ----
//
// Per trial: hide a random parity target, run the one-query parity finder
// against a decision oracle with per-entry flip rate eta (eta = -1 picks the
// 2^-n rate the recovery floor is stated at), and count exact recoveries.
// model=table drives the fast sign-table oracle; model=circuit compiles a
// noisy lookup decider and uses it as a phase oracle.

ExperimentResult run_bv_noise_sweep(const ExperimentConfig& cfg) {
  long n = require_range(get_int(cfg, "n"), 1, 14, "n");
  double eta = get_real(cfg, "eta");
  const std::string& model = get_str(cfg, "model");
  if (model != "table" && model != "circuit") {
    throw std::invalid_argument("parameter 'model' wants table or circuit, got '" + model + "'");
  }
  if (model == "circuit" && n > 8) {
    throw std::invalid_argument("model=circuit simulates the decider; n <= 8 required");
  }
  double eta_eff = eta < 0.0 ? std::pow(2.0, -static_cast<double>(n)) : eta;
  if (eta_eff >= 0.5) {
    throw std::invalid_argument("parameter 'eta' wants a flip rate below 1/2");
  }

  std::vector<unsigned char> wins(static_cast<size_t>(cfg.trials), 0);
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t t) {
    SplitMix64 rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
    Index target = static_cast<Index>(rng.uniform_below(1ull << n));
    std::string target_bits = bits_of_index(target, static_cast<int>(n));
    std::string out;
    if (model == "table") {
      NoisyDecisionOracle oracle(
          [target](const std::string& z) {
            return (std::popcount(static_cast<unsigned long long>(index_of_bits(z)) &
                                  static_cast<unsigned long long>(target)) &
                    1) != 0;
          },
          eta_eff);
      out = bernstein_vazirani(oracle, static_cast<int>(n), rng);
    } else {
      std::vector<bool> table(static_cast<size_t>(1) << n);
      for (size_t z = 0; z < table.size(); ++z) {
        table[z] = (std::popcount(static_cast<unsigned long long>(z) &
                                  static_cast<unsigned long long>(target)) &
                    1) != 0;
      }
      Circuit decider = noisy_lookup_decider(table, static_cast<int>(n), eta_eff, rng);
      out = bernstein_vazirani(decider, rng);
    }
    wins[static_cast<size_t>(t)] = out == target_bits ? 1 : 0;
  });

  RateSummary rate = summarize_rate(wins);
  double floor = 1.0 - std::sqrt(std::pow(2.0, -static_cast<double>(n - 4)));
  bool floor_applies = eta_eff <= std::pow(2.0, -static_cast<double>(n)) * (1.0 + 1e-12);
  bool floor_ok = !floor_applies || rate.lcb99 >= floor;

  ExperimentResult res;
  res.rows.push_back(make_row(cfg.params, "success_rate", rate.rate, rate.se));
  res.rows.push_back(make_row(cfg.params, "success_lcb99", rate.lcb99));
  res.rows.push_back(make_row(cfg.params, "success_floor", floor));
  res.rows.push_back(make_row(cfg.params, "floor_applies", floor_applies ? 1.0 : 0.0));
  res.rows.push_back(make_row(cfg.params, "floor_ok", floor_ok ? 1.0 : 0.0));
  flag_violation(res, floor_ok,
                 "bv-noise-sweep: 99% lower confidence bound " + format_real(rate.lcb99) +
                     " fell below the recovery floor " + format_real(floor));
  return res;
}

// ---- game-value ----
//
// Solves a named toy game whose value is known in closed form and checks the
// certified bracket against it. Heuristic mode reports the value found by
// local search without a bracket (and without a violation check).

struct NamedGame {
  QuantifiedGame game;
  double expected;
};

NamedGame named_game(const std::string& name, long d) {
  if (name == "swap-exists-forall") {
    // Adversary picks an orthogonal state: value 1/2 for every d >= 2.
    AcceptOperator swap = swap_test_operator(d);
    return {QuantifiedGame(std::move(swap), {Quantifier::Exists, Quantifier::ForAll},
                           {ProofKind::Pure, ProofKind::Pure}),
            0.5};
  }
  if (name == "swap-forall-exists") {
    // Second prover copies the first: value 1.
    AcceptOperator swap = swap_test_operator(d);
    return {QuantifiedGame(std::move(swap), {Quantifier::ForAll, Quantifier::Exists},
                           {ProofKind::Pure, ProofKind::Pure}),
            1.0};
  }
  if (name == "equality-exists-forall") {
    return {scaled_equality_game(1.0, Quantifier::Exists, Quantifier::ForAll), 0.0};
  }
  if (name == "equality-forall-exists") {
    return {scaled_equality_game(1.0, Quantifier::ForAll, Quantifier::Exists), 1.0};
  }
  throw std::invalid_argument(
      "parameter 'game' wants one of swap-exists-forall, swap-forall-exists, "
      "equality-exists-forall, equality-forall-exists; got '" +
      name + "'");
}

ExperimentResult run_game_value(const ExperimentConfig& cfg) {
  long d = require_range(get_int(cfg, "d"), 2, 8, "d");
  const std::string& mode = get_str(cfg, "mode");
  if (mode != "certified" && mode != "heuristic") {
    throw std::invalid_argument("parameter 'mode' wants certified or heuristic, got '" + mode +
                                "'");
  }
  NamedGame named = named_game(get_str(cfg, "game"), d);

  GameSolveOptions solver = solve_options_from(cfg);
  solver.mode = mode == "certified" ? SolveMode::Certified : SolveMode::Heuristic;
  solver.restarts = static_cast<int>(require_range(get_int(cfg, "restarts"), 1, 1024, "restarts"));
  GameValueResult result = solve_game(named.game, solver);

  bool value_ok = true;
  if (result.certified) {
    value_ok = std::abs(result.value - named.expected) <= result.gap + tol::kNumeric;
  }

  ExperimentResult res;
  res.rows.push_back(make_row(cfg.params, "value", result.value));
  if (result.certified) {
    res.rows.push_back(make_row(cfg.params, "gap", result.gap));
  }
  res.rows.push_back(make_row(cfg.params, "certified", result.certified ? 1.0 : 0.0));
  res.rows.push_back(make_row(cfg.params, "expected_value", named.expected));
  res.rows.push_back(make_row(cfg.params, "value_ok", value_ok ? 1.0 : 0.0));
  flag_violation(res, value_ok,
                 "game-value: certified bracket " + format_real(result.value) + " +/- " +
                     format_real(result.gap) + " excludes the known value " +
                     format_real(named.expected));
  return res;
}

// ---- measurement-lemma-scan ----
//
// Per trial: random state, a nearby state at Euclidean distance eps_actual,
// and a random projector; the trace norm of the difference of the projected
// rank-one operators must stay below 2 * eps_actual (+1e-8 slack).

ExperimentResult run_measurement_lemma_scan(const ExperimentConfig& cfg) {
  long d = require_range(get_int(cfg, "d"), 2, 64, "d");
  double eps = get_real(cfg, "eps");
  if (eps <= 0.0 || eps > 1.0) {
    throw std::invalid_argument("parameter 'eps' wants a perturbation scale in (0, 1]");
  }
  long rank = require_range(get_int(cfg, "rank"), 0, d, "rank");

  std::vector<double> excess(static_cast<size_t>(cfg.trials), 0.0);
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t t) {
    SplitMix64 rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
    QState psi = random_state(d, rng);
    QState direction = random_state(d, rng);
    Vector moved = psi.amp + eps * direction.amp;
    moved.normalize();
    double eps_actual = (psi.amp - moved).norm();
    Index r = rank > 0 ? rank : 1 + static_cast<Index>(rng.uniform_below(
                                        static_cast<std::uint64_t>(d - 1)));
    Matrix proj = random_projector(d, r, rng);
    Matrix diff = proj * (psi.amp * psi.amp.adjoint() - moved * moved.adjoint()) * proj.adjoint();
    excess[static_cast<size_t>(t)] = trace_norm(diff) - 2.0 * eps_actual;
  });

  ExperimentResult res;
  double max_excess = -4.0;
  for (long t = 0; t < cfg.trials; ++t) {
    double e = excess[static_cast<size_t>(t)];
    max_excess = std::max(max_excess, e);
    bool ok = e <= tol::kEigen;
    res.rows.push_back(make_row(with_trial(cfg.params, t), "bound_satisfied", ok ? 1.0 : 0.0));
    flag_violation(res, ok,
                   "measurement-lemma-scan: trial " + std::to_string(t) +
                       " exceeded 2*eps by " + format_real(e));
  }
  res.rows.push_back(make_row(cfg.params, "max_excess", max_excess));
  return res;
}

std::vector<ExperimentDef> build_registry() {
  std::vector<ExperimentDef> defs;
  defs.push_back(
      {"apt-bound-scan",
       "check the product-test soundness ceiling on random inputs",
       500,
       {{"n", "1", "tested subsystems (ignored when dims is set)"},
        {"m", "1", "purported copies"},
        {"d", "2", "dimension of each tested subsystem (ignored when dims is set)"},
        {"dprime", "1", "side-information dimension (1 = absent)"},
        {"dims", "", "explicit subsystem dims like 2x2 (overrides n and d)"},
        {"grid_theta", "71", "latitudes per certified search sphere"},
        {"grid_phi", "142", "longitudes per certified search sphere"}},
       run_apt_bound_scan});
  defs.push_back(
      {"amplification-check",
       "verify the one-sided amplifier's completeness floor and soundness ceiling",
       1,
       {{"m", "2", "bundled copies"},
        {"c", "0.9", "base completeness"},
        {"s", "0.6", "base soundness"},
        {"grid_theta", "17", "latitudes per certified solver sphere"},
        {"grid_phi", "34", "longitudes per certified solver sphere"}},
       run_amplification_check});
  defs.push_back(
      {"qcph-simulation-check",
       "verify the classical-to-pure simulation bounds and measurement diagonality",
       1,
       {{"m", "1", "bundled copies"},
        {"c", "1.0", "base completeness"},
        {"s", "0.2", "base soundness"},
        {"grid_theta", "71", "latitudes per certified solver sphere"},
        {"grid_phi", "142", "longitudes per certified solver sphere"}},
       run_qcph_simulation_check});
  defs.push_back({"isolation-frequency",
                  "measure how often affine hashing isolates a unique witness",
                  100000,
                  {{"ell", "3", "witness length in bits"},
                   {"witnesses", "1", "number of accepting witnesses (1 to 2^ell)"}},
                  run_isolation_frequency});
  defs.push_back(
      {"bv-noise-sweep",
       "measure one-query parity recovery against a noisy decision oracle",
       10000,
       {{"n", "6", "hidden-string length in bits"},
        {"eta", "-1", "oracle flip rate; -1 = the 2^-n rate of the recovery floor"},
        {"model", "table", "oracle realization: table (sign flips) or circuit (decider)"}},
       run_bv_noise_sweep});
  defs.push_back(
      {"game-value",
       "solve a named toy game and check the certified bracket against its known value",
       1,
       {{"game", "swap-exists-forall", "named game"},
        {"d", "2", "proof dimension for the swap games (certified mode needs 2)"},
        {"mode", "certified", "certified or heuristic"},
        {"restarts", "8", "local-search restarts in heuristic mode"},
        {"grid_theta", "71", "latitudes per certified solver sphere"},
        {"grid_phi", "142", "longitudes per certified solver sphere"}},
       run_game_value});
  defs.push_back({"measurement-lemma-scan",
                  "check the projected-state trace-norm bound on random draws",
                  1000,
                  {{"d", "4", "state dimension"},
                   {"eps", "0.1", "perturbation scale before renormalizing"},
                   {"rank", "0", "projector rank; 0 = random in 1..d-1"}},
                  run_measurement_lemma_scan});
  return defs;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string params_string(const std::map<std::string, std::string>& params) {
  std::string out;
  for (const auto& [key, value] : params) {
    if (key.empty() || key.find_first_of("=;,\"\n\r") != std::string::npos ||
        value.find_first_of("=;,\"\n\r") != std::string::npos) {
      throw std::invalid_argument("params_string: key/value may not contain separators: '" + key +
                                  "'");
    }
    if (!out.empty()) out += ';';
    out += key;
    out += '=';
    out += value;
  }
  return out;
}

std::string emit_csv(const std::vector<ResultRow>& rows) {
  if (rows.empty()) {
    throw std::invalid_argument("emit_csv: no rows");
  }
  std::string out = "experiment,params,metric,value,stderr,seed\n";
  for (const ResultRow& row : rows) {
    if (!std::isfinite(row.value)) {
      throw std::invalid_argument("emit_csv: non-finite value in metric '" + row.metric + "'");
    }
    if (row.stderr_value && !std::isfinite(*row.stderr_value)) {
      throw std::invalid_argument("emit_csv: non-finite stderr in metric '" + row.metric + "'");
    }
    check_csv_field(row.experiment, "experiment");
    check_csv_field(row.params, "params");
    check_csv_field(row.metric, "metric");
    out += row.experiment;
    out += ',';
    out += row.params;
    out += ',';
    out += row.metric;
    out += ',';
    out += format_real(row.value);
    out += ',';
    if (row.stderr_value) out += format_real(*row.stderr_value);
    out += ',';
    out += std::to_string(row.seed);
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::string text = emit_csv(rows);
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("write_csv: cannot open '" + path + "' for writing");
  }
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) {
    throw std::runtime_error("write_csv: write to '" + path + "' failed");
  }
}

std::vector<ResultRow> parse_csv(const std::string& text) {
  std::vector<ResultRow> rows;
  size_t pos = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) {
      throw std::invalid_argument("parse_csv: missing trailing newline");
    }
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (!saw_header) {
      if (line != "experiment,params,metric,value,stderr,seed") {
        throw std::invalid_argument("parse_csv: bad header '" + line + "'");
      }
      saw_header = true;
      continue;
    }
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma == std::string::npos ? comma : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 6) {
      throw std::invalid_argument("parse_csv: expected 6 fields, got " +
                                  std::to_string(fields.size()));
    }
    ResultRow row;
    row.experiment = fields[0];
    row.params = fields[1];
    row.metric = fields[2];
    try {
      size_t used = 0;
      row.value = std::stod(fields[3], &used);
      if (used != fields[3].size()) throw std::invalid_argument("trailing text");
      if (!fields[4].empty()) {
        row.stderr_value = std::stod(fields[4], &used);
        if (used != fields[4].size()) throw std::invalid_argument("trailing text");
      }
      row.seed = std::stoull(fields[5], &used);
      if (used != fields[5].size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_csv: bad numeric field in line '" + line + "'");
    }
    rows.push_back(std::move(row));
  }
  if (!saw_header) {
    throw std::invalid_argument("parse_csv: empty input");
  }
  return rows;
}

ExperimentConfig config_from_json(const std::string& text) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!parsed.is_object()) {
    throw std::invalid_argument("config: top level must be a JSON object");
  }
  ExperimentConfig cfg;
  for (const auto& [key, value] : parsed.items()) {
    if (key == "experiment") {
      cfg.experiment = value.get<std::string>();
    } else if (key == "params") {
      if (!value.is_object()) {
        throw std::invalid_argument("config: 'params' must be an object");
      }
      for (const auto& [name, pv] : value.items()) {
        if (pv.is_string()) {
          cfg.params[name] = pv.get<std::string>();
        } else if (pv.is_number_integer()) {
          cfg.params[name] = std::to_string(pv.get<long long>());
        } else if (pv.is_number_unsigned()) {
          cfg.params[name] = std::to_string(pv.get<unsigned long long>());
        } else if (pv.is_number_float()) {
          cfg.params[name] = format_real(pv.get<double>());
        } else if (pv.is_array()) {
          std::string dims;
          for (const auto& entry : pv) {
            if (!entry.is_number_integer() && !entry.is_number_unsigned()) {
              throw std::invalid_argument("config: dimension lists hold integers");
            }
            if (!dims.empty()) dims += 'x';
            dims += std::to_string(entry.get<long long>());
          }
          cfg.params[name] = dims;
        } else {
          throw std::invalid_argument("config: parameter '" + name +
                                      "' must be a string, number, or integer array");
        }
      }
    } else if (key == "trials") {
      cfg.trials = value.get<long>();
    } else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "out") {
      cfg.out_path = value.get<std::string>();
    } else if (key == "threads") {
      cfg.threads = value.get<int>();
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

const std::vector<ExperimentDef>& experiment_registry() {
  static const std::vector<ExperimentDef> registry = build_registry();
  return registry;
}

const ExperimentDef* find_experiment(const std::string& name) {
  for (const ExperimentDef& def : experiment_registry()) {
    if (def.name == name) return &def;
  }
  return nullptr;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const ExperimentDef* def = find_experiment(config.experiment);
  if (def == nullptr) {
    throw std::invalid_argument("unknown experiment '" + config.experiment + "'");
  }
  ExperimentConfig cfg = config;
  if (cfg.trials == 0) cfg.trials = def->default_trials;
  if (cfg.trials < 1) {
    throw std::invalid_argument("trials must be at least 1");
  }
  for (const auto& [key, value] : cfg.params) {
    bool known = std::any_of(def->params.begin(), def->params.end(),
                             [&key](const ParamSpec& p) { return p.name == key; });
    if (!known) {
      throw std::invalid_argument("experiment '" + def->name + "' has no parameter '" + key + "'");
    }
  }
  for (const ParamSpec& spec : def->params) {
    cfg.params.emplace(spec.name, spec.default_value);
  }
  ExperimentResult result = def->run(cfg);
  for (ResultRow& row : result.rows) {
    row.experiment = def->name;
    row.seed = cfg.seed;
  }
  return result;
}

}  // namespace qphlab
