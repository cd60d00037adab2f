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

#ifndef QPHLAB_SEARCH_TO_DECISION_HPP_
#define QPHLAB_SEARCH_TO_DECISION_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qphlab/isolation.hpp"

namespace qphlab {

// Single-query search-to-decision: recover a hidden parity string from a
// (possibly noisy) decision oracle via the one-query parity-finding circuit
// (Hadamards, one phase-oracle call, Hadamards, measure), then extract
// unique witnesses of hashed instances with it.

// Abstract decision oracle: an exact 0/1 predicate over n-bit strings whose
// answers are flipped independently with probability `flip_rate`. One flip
// pattern is drawn per run (the run makes a single query).
struct NoisyDecisionOracle {
  std::function<bool(const std::string&)> predicate;
  double flip_rate = 0.0;

  NoisyDecisionOracle(std::function<bool(const std::string&)> p, double eta);
};

// One run against the abstract oracle; returns the measured n-bit string.
// With an exact oracle encoding f(z) = <z,s> mod 2 the result is s with
// probability 1; with flip rate eta per entry the expected success
// probability stays above the 1 - sqrt(2^-(n-4)) floor for eta <= 2^-n.
std::string bernstein_vazirani(const NoisyDecisionOracle& oracle, int n, SplitMix64& rng);

// One run with a decider circuit as the phase oracle (apply the circuit,
// Z on the output wire, apply the inverse). The circuit must have a single
// proof register (the query register) and classical-reversible gates so its
// work wires uncompute.
std::string bernstein_vazirani(const Circuit& decider, SplitMix64& rng);

// Exact probability that one run over the given 2^n-entry truth table
// measures `target`: |2^-n sum_z (-1)^{table[z] + <target,z>}|^2.
double bv_success_probability(const std::vector<bool>& table, const std::string& target);

// The hashed instance phi_z: adds the constraint <z, d> = 1 (mod 2), so d is
// a witness of phi_z iff d is a witness of phi and <z,d> = 1.
UqcmappInstance restrict_to_parity(const UqcmappInstance& phi, const std::string& z);

// Truth table z -> [phi_z is a unique-witness YES instance]. When phi has a
// unique witness d, this is exactly the parity z -> <z,d>. The second
// overload reuses precomputed witness acceptances.
std::vector<bool> parity_predicate_table(const UqcmappInstance& phi);
std::vector<bool> parity_predicate_table(const UqcmappInstance& phi,
                                         const std::vector<double>& acceptances);

// Decider circuits realizing a fixed truth table over `bits`-bit queries;
// the noisy variant flips each table entry with probability `entry_error`
// before materializing the circuit.
Circuit exact_lookup_decider(const std::vector<bool>& table, int bits);
Circuit noisy_lookup_decider(const std::vector<bool>& table, int bits, double entry_error,
                             SplitMix64& rng);

// Full extraction: run the parity finder over the z -> phi_z reduction, then
// post-check the candidate exactly (acceptance >= p2 and all constraints).
// Returns the witness string, or nothing when the post-check fails.
std::optional<std::string> search_to_decision(const UqcmappInstance& inst,
                                              const NoisyDecisionOracle& oracle,
                                              SplitMix64& rng);
std::optional<std::string> search_to_decision(const UqcmappInstance& inst,
                                              const Circuit& decider, SplitMix64& rng);

// ---- Composed three-step pipeline ----
//
// Step 1: hash-isolate the threshold instance. Step 2: extract a candidate
// witness with the parity finder over a noisy lookup decider. Step 3: if the
// exact post-check passes, the verifier's acceptance on the extracted
// witness is the trial's accept probability; otherwise the trial rejects.
struct QcklContext {
  TqcmappInstance inst;
  std::vector<double> acceptances;  // exact, indexed by witness
};

QcklContext make_qckl_context(const Circuit& v, const std::string& x, const std::string& y1,
                              Rational p1, Rational p2, int ell);

struct QcklTrial {
  bool isolated = false;       // hashing left a unique witness
  bool witness_found = false;  // extraction passed the post-check
  std::string witness;
  double accept_probability = 0.0;
};

QcklTrial qckl_trial(const QcklContext& ctx, double decider_entry_error, SplitMix64& rng);

}  // namespace qphlab

#endif  // QPHLAB_SEARCH_TO_DECISION_HPP_
