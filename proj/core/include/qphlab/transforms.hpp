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

#ifndef QPHLAB_TRANSFORMS_HPP_
#define QPHLAB_TRANSFORMS_HPP_

#include <string>
#include <vector>

#include "qphlab/product_tests.hpp"
#include "qphlab/verifier.hpp"

namespace qphlab {

// Verifier transformations that trade proof structure for error bounds.
// Both take a small game, return a new game on enlarged registers, and are
// built as explicit operators so the game solver can measure their
// completeness and soundness directly.

// ---- One-sided error amplification ----
//
// Input: a game with pure proofs whose prefix starts with ForAll and ends
// with Exists (so the last prover is the honest one in the YES orientation).
// The transformed verifier keeps proofs 1..i-1 and replaces the last proof
// with a register holding m bundles of proofs 1..i-1 (B) followed by m
// copies of proof i (C). It flips a fair coin between:
//   * the asymmetric product test between the first i-1 proofs and B, and
//   * m parallel runs of the base verifier, run j consuming bundle j and
//     copy j, accepting iff at least a (c+s)/2 fraction accept.
struct AmplifiedGameSpec {
  QuantifiedGame base;
  double c = 1.0;
  double s = 0.0;
  int copies = 1;

  AmplifiedGameSpec(QuantifiedGame base_game, double completeness, double soundness,
                    int copy_count);
};

QuantifiedGame one_sided_amplify(const AmplifiedGameSpec& spec);

// The honest last-prover response: proofs 1..i-1 unchanged, last register
// set to (psi_1 x ... x psi_{i-1})^(x)m (x) psi_i^(x)m.
std::vector<QState> honest_amplified_response(const AmplifiedGameSpec& spec,
                                              const std::vector<QState>& base_proofs);

// Honest-strategy acceptance floor of the transformed verifier:
// 1/2 + 1/2 (1 - exp(-(c-s)^2 m / 2)).
double amplified_yes_bound(double c, double s, int copies);

// Adversarial ceiling of the transformed verifier in the NO orientation:
// 1 - 1/(4 m n) + s, with n the number of product subsystems under test.
double amplified_no_bound(double s, int copies, int subsystems);

// ---- Classical-proof simulation by pure-state proofs ----
//
// Input: a verifier over k classical proofs (diagonal acceptance table,
// alternating prefix starting with ForAll, k even). The transformed
// verifier takes k pure proofs, the last one carrying m bundled copies of
// proofs 1..k-1 (A) plus the k-th classical proof (B). It flips a fair coin
// between the product test and a full standard-basis measurement; on a copy
// mismatch at minimal index i it accepts iff i is a universal position, and
// otherwise runs the classical verifier on the measured strings.
struct SimulationGameSpec {
  QuantifiedGame base;
  int copies = 1;

  SimulationGameSpec(QuantifiedGame base_game, int copy_count);

  int num_proofs() const { return static_cast<int>(base.prefix.size()); }
};

// Universal positions of a k-register alternating prefix that starts with
// ForAll: the odd 1-based indices {1, 3, ..., k-1}.
std::vector<int> universal_indices(int k);

QuantifiedGame qcph_to_qphpure_transform(const SimulationGameSpec& spec);

// The measurement branch alone (exactly diagonal), for direct inspection.
AcceptOperator simulation_measure_operator(const SimulationGameSpec& spec);

// Honest response for classical strategy strings y_1..y_k: basis proofs for
// the first k-1 registers and basis(A = bundles of y_1..y_{k-1}, B = y_k).
std::vector<QState> honest_simulation_response(const SimulationGameSpec& spec,
                                               const std::vector<std::string>& strings);

// Honest-strategy acceptance floor: 1/2 + 1/2 (c - 2^-m).
double simulation_yes_bound(double c, int copies);

// Adversarial ceiling in the NO orientation: 1 - 1/(4 m n) + s.
double simulation_no_bound(double s, int copies, int subsystems);

}  // namespace qphlab

#endif  // QPHLAB_TRANSFORMS_HPP_
