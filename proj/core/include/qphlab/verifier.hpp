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

#ifndef QPHLAB_VERIFIER_HPP
#define QPHLAB_VERIFIER_HPP

#include <string>
#include <variant>
#include <vector>

#include "qphlab/circuit.hpp"
#include "qphlab/linalg.hpp"

namespace qphlab {

struct ProofRegister {
  std::string name;
  Index dim;

  bool operator==(const ProofRegister&) const = default;
};

// POVM element for "accept" over an ordered list of proof registers.
// Invariant: Hermitian within 1e-10 and 0 <= M <= I within 1e-9.
struct AcceptOperator {
  Matrix mat;
  std::vector<ProofRegister> layout;

  AcceptOperator(Matrix m, std::vector<ProofRegister> regs);
  Index dim() const { return mat.rows(); }
  std::vector<Index> dims() const;
};

// Convenience layout builder: registers named p1, p2, ... with given dims.
std::vector<ProofRegister> proof_layout(const std::vector<Index>& dims);

// Diagonal acceptance operator from per-basis-outcome accept probabilities
// (all entries in [0,1]); the table is indexed like the joint basis.
AcceptOperator diagonal_accept_operator(const std::vector<double>& probs,
                                        std::vector<ProofRegister> regs);

// Compiles a verifier circuit into its acceptance operator on the proof
// registers: M = (I (x) <0|_anc) U^dag |1><1|_out U (I (x) |0>_anc).
AcceptOperator accept_operator_from_circuit(const Circuit& c);

// A proof is a pure state, a density operator, or a classical bit string
// (embedded as the corresponding computational basis state).
using ProofState = std::variant<QState, DensityOp, std::string>;

// Tr(M (x)rho); exact quadratic form for all-pure inputs. Result is clamped
// to [0, 1] (operator invariants keep any excursion below 1e-9).
double accept_probability(const AcceptOperator& m, const std::vector<ProofState>& proofs);

// m-fold product verifier that accepts iff at least ceil(threshold * m)
// copies accept (a count landing exactly on threshold*m counts as accept).
// The result's registers are the base registers repeated copy-major:
// copy 1's registers, then copy 2's, ...
AcceptOperator parallel_repetition(const AcceptOperator& base, int copies, double threshold);

// Accept count needed by parallel_repetition: smallest integer j with
// j >= threshold*copies, exact ties counting as accept.
int repetition_accept_count(int copies, double threshold);

enum class Quantifier { Exists, ForAll };

enum class ProofKind { Classical, Pure, Mixed };

// Alternating-quantifier acceptance game. The game value quantifies register
// r by max (Exists) or min (ForAll), left to right; YES instances of a
// promise problem have value >= c and NO instances value <= s.
struct QuantifiedGame {
  AcceptOperator accept;
  std::vector<Quantifier> prefix;
  std::vector<ProofKind> kinds;

  QuantifiedGame(AcceptOperator op, std::vector<Quantifier> quantifiers,
                 std::vector<ProofKind> proof_kinds);
};

}  // namespace qphlab

#endif  // QPHLAB_VERIFIER_HPP
