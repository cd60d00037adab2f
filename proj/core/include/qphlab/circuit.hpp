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

#ifndef QPHLAB_CIRCUIT_HPP
#define QPHLAB_CIRCUIT_HPP

#include <string>
#include <vector>

#include "qphlab/linalg.hpp"

namespace qphlab {

// Gate set for verifier circuits. Multi-wire operands are ordered
// (control..., target...): CNOT (control, target), CSWAP (control, a, b),
// TOFFOLI (control, control, target).
enum class Gate { H, X, Z, S, T, CNOT, CSWAP, TOFFOLI };

int gate_arity(Gate g);
const char* gate_name(Gate g);
Gate gate_from_name(const std::string& name);

struct GateOp {
  Gate g;
  std::vector<int> wires;

  bool operator==(const GateOp&) const = default;
};

// Wire roles. Proof registers and ancilla wires partition the wire set;
// ancillas start in |0>. The output wire is a designated wire of either kind
// and is measured in the computational basis at the end (outcome 1 = accept).
struct WireLayout {
  std::vector<std::vector<int>> proofs;
  std::vector<int> ancilla;
  int output = 0;

  bool operator==(const WireLayout&) const = default;
};

struct Circuit {
  int num_wires = 0;
  std::vector<GateOp> gates;
  WireLayout layout;

  bool operator==(const Circuit&) const = default;
};

// Throws std::invalid_argument on out-of-range wires, repeated operands,
// non-partitioning layout, or a missing/invalid output wire.
void validate_circuit(const Circuit& c);

// Statevector with wire w stored at bit w of the index (wire 0 = least
// significant). Applies one gate in place.
void apply_gate(const GateOp& op, int num_wires, Vector& state);

// Applies the whole gate list in place; `state` must have dimension 2^wires.
void apply_circuit(const Circuit& c, Vector& state);

// Exact inverse as a gate list in the same gate set (S^-1 = S Z, T^-1 = T S Z;
// everything else is self-inverse).
Circuit inverse_circuit(const Circuit& c);

// Initial wire state for the given proof-register states; ancillas |0>.
// Within a register, the first listed wire is the most significant bit of the
// register index, matching the bit-string convention everywhere else.
Vector initial_state(const Circuit& c, const std::vector<QState>& proofs);

// Runs the circuit on the given proof states and returns the final state.
Vector simulate(const Circuit& c, const std::vector<QState>& proofs);

// Probability that measuring the output wire of `state` yields 1.
double output_one_probability(const Circuit& c, const Vector& state);

// ---- JSON (bit-exact round trip) ----
//
// {"wires": n,
//  "gates": [{"g": "H", "t": [0]}, ...],
//  "layout": {"proofs": [[0], [1]], "ancilla": [2], "output": 2}}
std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);

// ---- Builders ----

// H, per-qubit-pair CSWAPs, H on a fresh control wire; reject on outcome 1.
// Registers: proof 0 = first state, proof 1 = second; ancilla/output = control.
Circuit swap_test_circuit(int qubits_per_state);

// Appends X^(1-pattern) conjugated multi-controlled X (controls -> target).
// Needs max(0, controls-2) clean ancilla wires, which are returned to |0>.
void append_multi_controlled_x(Circuit& c, const std::vector<int>& controls,
                               const std::vector<bool>& pattern, int target,
                               const std::vector<int>& ancillas);

// Classical lookup verifier: wires = [input register, witness register,
// ancillas, output]; accepts (output wire -> 1) exactly the (input, witness)
// pairs listed in `accepted`, each given as the concatenated bit string.
Circuit lookup_verifier_circuit(int input_bits, int witness_bits,
                                const std::vector<std::string>& accepted);

}  // namespace qphlab

#endif  // QPHLAB_CIRCUIT_HPP
