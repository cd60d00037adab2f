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

#include "qphlab/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace qphlab {

namespace {
constexpr int kMaxSimWires = 20;  // 2^20 complex amplitudes = 16 MiB
const double kInvSqrt2 = 0.70710678118654752440084436210485;
}  // namespace

int gate_arity(Gate g) {
  switch (g) {
    case Gate::H:
    case Gate::X:
    case Gate::Z:
    case Gate::S:
    case Gate::T:
      return 1;
    case Gate::CNOT:
      return 2;
    case Gate::CSWAP:
    case Gate::TOFFOLI:
      return 3;
  }
  throw std::invalid_argument("gate_arity: unknown gate");
}

const char* gate_name(Gate g) {
  switch (g) {
    case Gate::H: return "H";
    case Gate::X: return "X";
    case Gate::Z: return "Z";
    case Gate::S: return "S";
    case Gate::T: return "T";
    case Gate::CNOT: return "CNOT";
    case Gate::CSWAP: return "CSWAP";
    case Gate::TOFFOLI: return "TOFFOLI";
  }
  throw std::invalid_argument("gate_name: unknown gate");
}

Gate gate_from_name(const std::string& name) {
  if (name == "H") return Gate::H;
  if (name == "X") return Gate::X;
  if (name == "Z") return Gate::Z;
  if (name == "S") return Gate::S;
  if (name == "T") return Gate::T;
  if (name == "CNOT") return Gate::CNOT;
  if (name == "CSWAP") return Gate::CSWAP;
  if (name == "TOFFOLI") return Gate::TOFFOLI;
  throw std::invalid_argument("gate_from_name: unknown gate \"" + name + "\"");
}

void validate_circuit(const Circuit& c) {
  if (c.num_wires < 1 || c.num_wires > kMaxSimWires) {
    throw std::invalid_argument("circuit: wire count must be in [1, " +
                                std::to_string(kMaxSimWires) + "]");
  }
  for (const GateOp& op : c.gates) {
    if (static_cast<int>(op.wires.size()) != gate_arity(op.g)) {
      throw std::invalid_argument(std::string("circuit: ") + gate_name(op.g) + " expects " +
                                  std::to_string(gate_arity(op.g)) + " wires");
    }
    std::vector<int> ws = op.wires;
    std::sort(ws.begin(), ws.end());
    if (std::adjacent_find(ws.begin(), ws.end()) != ws.end()) {
      throw std::invalid_argument("circuit: gate operands must be distinct wires");
    }
    for (int w : op.wires) {
      if (w < 0 || w >= c.num_wires) {
        throw std::invalid_argument("circuit: gate wire out of range");
      }
    }
  }
  // Proof registers + ancillas must partition the wire set.
  std::vector<int> role(static_cast<size_t>(c.num_wires), 0);
  for (const auto& reg : c.layout.proofs) {
    if (reg.empty()) {
      throw std::invalid_argument("circuit: empty proof register");
    }
    for (int w : reg) {
      if (w < 0 || w >= c.num_wires || role[static_cast<size_t>(w)]++) {
        throw std::invalid_argument("circuit: layout wire repeated or out of range");
      }
    }
  }
  for (int w : c.layout.ancilla) {
    if (w < 0 || w >= c.num_wires || role[static_cast<size_t>(w)]++) {
      throw std::invalid_argument("circuit: layout wire repeated or out of range");
    }
  }
  for (int w = 0; w < c.num_wires; ++w) {
    if (!role[static_cast<size_t>(w)]) {
      throw std::invalid_argument("circuit: wire " + std::to_string(w) +
                                  " missing from layout partition");
    }
  }
  if (c.layout.output < 0 || c.layout.output >= c.num_wires) {
    throw std::invalid_argument("circuit: output wire out of range");
  }
}

void apply_gate(const GateOp& op, int num_wires, Vector& state) {
  const Index n = Index(1) << num_wires;
  if (state.size() != n) {
    throw std::invalid_argument("apply_gate: state dimension mismatch");
  }
  auto bit = [](Index i, int w) { return (i >> w) & 1; };
  switch (op.g) {
    case Gate::H: {
      const Index t = Index(1) << op.wires[0];
      for (Index i = 0; i < n; ++i) {
        if (i & t) continue;
        Complex a = state(i), b = state(i | t);
        state(i) = kInvSqrt2 * (a + b);
        state(i | t) = kInvSqrt2 * (a - b);
      }
      break;
    }
    case Gate::X: {
      const Index t = Index(1) << op.wires[0];
      for (Index i = 0; i < n; ++i) {
        if (!(i & t)) std::swap(state(i), state(i | t));
      }
      break;
    }
    case Gate::Z: {
      const Index t = Index(1) << op.wires[0];
      for (Index i = 0; i < n; ++i) {
        if (i & t) state(i) = -state(i);
      }
      break;
    }
    case Gate::S: {
      const Index t = Index(1) << op.wires[0];
      for (Index i = 0; i < n; ++i) {
        if (i & t) state(i) *= Complex(0.0, 1.0);
      }
      break;
    }
    case Gate::T: {
      const Index t = Index(1) << op.wires[0];
      const Complex phase(kInvSqrt2, kInvSqrt2);
      for (Index i = 0; i < n; ++i) {
        if (i & t) state(i) *= phase;
      }
      break;
    }
    case Gate::CNOT: {
      const Index ctrl = Index(1) << op.wires[0];
      const Index t = Index(1) << op.wires[1];
      for (Index i = 0; i < n; ++i) {
        if ((i & ctrl) && !(i & t)) std::swap(state(i), state(i | t));
      }
      break;
    }
    case Gate::CSWAP: {
      const Index ctrl = Index(1) << op.wires[0];
      const Index a = Index(1) << op.wires[1];
      const Index b = Index(1) << op.wires[2];
      for (Index i = 0; i < n; ++i) {
        if ((i & ctrl) && (i & a) && !(i & b)) std::swap(state(i), state((i ^ a) | b));
      }
      break;
    }
    case Gate::TOFFOLI: {
      const Index c1 = Index(1) << op.wires[0];
      const Index c2 = Index(1) << op.wires[1];
      const Index t = Index(1) << op.wires[2];
      for (Index i = 0; i < n; ++i) {
        if ((i & c1) && (i & c2) && !(i & t)) std::swap(state(i), state(i | t));
      }
      break;
    }
  }
  (void)bit;
}

void apply_circuit(const Circuit& c, Vector& state) {
  for (const GateOp& op : c.gates) {
    apply_gate(op, c.num_wires, state);
  }
}

Circuit inverse_circuit(const Circuit& c) {
  Circuit inv;
  inv.num_wires = c.num_wires;
  inv.layout = c.layout;
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    switch (it->g) {
      case Gate::S:  // S^-1 = S Z (diagonal, order free)
        inv.gates.push_back({Gate::S, it->wires});
        inv.gates.push_back({Gate::Z, it->wires});
        break;
      case Gate::T:  // T^-1 = T S Z
        inv.gates.push_back({Gate::T, it->wires});
        inv.gates.push_back({Gate::S, it->wires});
        inv.gates.push_back({Gate::Z, it->wires});
        break;
      default:  // H, X, Z, CNOT, CSWAP, TOFFOLI are involutions
        inv.gates.push_back(*it);
        break;
    }
  }
  return inv;
}

Vector initial_state(const Circuit& c, const std::vector<QState>& proofs) {
  validate_circuit(c);
  if (proofs.size() != c.layout.proofs.size()) {
    throw std::invalid_argument("initial_state: expected " +
                                std::to_string(c.layout.proofs.size()) + " proof states");
  }
  for (size_t r = 0; r < proofs.size(); ++r) {
    Index want = Index(1) << c.layout.proofs[r].size();
    if (proofs[r].dim() != want) {
      throw std::invalid_argument("initial_state: proof " + std::to_string(r) +
                                  " has dimension " + std::to_string(proofs[r].dim()) +
                                  ", register needs " + std::to_string(want));
    }
  }
  const Index n = Index(1) << c.num_wires;
  Vector state = Vector::Zero(n);
  // Enumerate the joint proof index; everything else lives in |0>.
  Index joint = 1;
  for (const auto& p : proofs) joint *= p.dim();
  for (Index ji = 0; ji < joint; ++ji) {
    Index rem = ji;
    Complex amp(1.0, 0.0);
    Index wire_index = 0;
    for (size_t r = proofs.size(); r-- > 0;) {
      Index d = proofs[r].dim();
      Index ir = rem % d;
      rem /= d;
      amp *= proofs[r].amp(ir);
      const auto& ws = c.layout.proofs[r];
      const int L = static_cast<int>(ws.size());
      for (int j = 0; j < L; ++j) {
        if ((ir >> (L - 1 - j)) & 1) {
          wire_index |= Index(1) << ws[static_cast<size_t>(j)];
        }
      }
    }
    state(wire_index) += amp;
  }
  return state;
}

Vector simulate(const Circuit& c, const std::vector<QState>& proofs) {
  Vector state = initial_state(c, proofs);
  apply_circuit(c, state);
  return state;
}

double output_one_probability(const Circuit& c, const Vector& state) {
  const Index n = Index(1) << c.num_wires;
  if (state.size() != n) {
    throw std::invalid_argument("output_one_probability: state dimension mismatch");
  }
  const Index mask = Index(1) << c.layout.output;
  double p = 0.0;
  for (Index i = 0; i < n; ++i) {
    if (i & mask) p += std::norm(state(i));
  }
  return p;
}

std::string circuit_to_json(const Circuit& c) {
  validate_circuit(c);
  nlohmann::ordered_json j;
  j["wires"] = c.num_wires;
  j["gates"] = nlohmann::ordered_json::array();
  for (const GateOp& op : c.gates) {
    nlohmann::ordered_json g;
    g["g"] = gate_name(op.g);
    g["t"] = op.wires;
    j["gates"].push_back(std::move(g));
  }
  j["layout"]["proofs"] = c.layout.proofs;
  j["layout"]["ancilla"] = c.layout.ancilla;
  j["layout"]["output"] = c.layout.output;
  return j.dump();
}

Circuit circuit_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("circuit_from_json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("wires") || !j.contains("gates") || !j.contains("layout")) {
    throw std::invalid_argument("circuit_from_json: need keys wires, gates, layout");
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "wires" && key != "gates" && key != "layout") {
      throw std::invalid_argument("circuit_from_json: unknown key '" + key + "'");
    }
  }
  Circuit c;
  if (!j["wires"].is_number_integer()) {
    throw std::invalid_argument("circuit_from_json: wires must be an integer");
  }
  c.num_wires = j["wires"].get<int>();
  if (!j["gates"].is_array()) {
    throw std::invalid_argument("circuit_from_json: gates must be an array");
  }
  for (const auto& g : j["gates"]) {
    if (!g.is_object() || !g.contains("g") || !g.contains("t") || !g["g"].is_string() ||
        !g["t"].is_array()) {
      throw std::invalid_argument("circuit_from_json: each gate needs string g and array t");
    }
    for (const auto& [key, value] : g.items()) {
      if (key != "g" && key != "t") {
        throw std::invalid_argument("circuit_from_json: unknown gate key '" + key + "'");
      }
    }
    GateOp op;
    op.g = gate_from_name(g["g"].get<std::string>());
    for (const auto& w : g["t"]) {
      if (!w.is_number_integer()) {
        throw std::invalid_argument("circuit_from_json: gate wires must be integers");
      }
      op.wires.push_back(w.get<int>());
    }
    c.gates.push_back(std::move(op));
  }
  const auto& lay = j["layout"];
  if (!lay.is_object() || !lay.contains("proofs") || !lay.contains("ancilla") ||
      !lay.contains("output") || !lay["proofs"].is_array() || !lay["ancilla"].is_array() ||
      !lay["output"].is_number_integer()) {
    throw std::invalid_argument("circuit_from_json: layout needs proofs, ancilla, output");
  }
  for (const auto& [key, value] : lay.items()) {
    if (key != "proofs" && key != "ancilla" && key != "output") {
      throw std::invalid_argument("circuit_from_json: unknown layout key '" + key + "'");
    }
  }
  for (const auto& reg : lay["proofs"]) {
    if (!reg.is_array()) {
      throw std::invalid_argument("circuit_from_json: each proof register must be an array");
    }
    std::vector<int> ws;
    for (const auto& w : reg) ws.push_back(w.get<int>());
    c.layout.proofs.push_back(std::move(ws));
  }
  for (const auto& w : lay["ancilla"]) c.layout.ancilla.push_back(w.get<int>());
  c.layout.output = lay["output"].get<int>();
  validate_circuit(c);
  return c;
}

Circuit swap_test_circuit(int qubits_per_state) {
  if (qubits_per_state < 1) {
    throw std::invalid_argument("swap_test_circuit: need at least one qubit per state");
  }
  Circuit c;
  const int q = qubits_per_state;
  const int ctrl = 2 * q;
  c.num_wires = 2 * q + 1;
  c.gates.push_back({Gate::H, {ctrl}});
  for (int i = 0; i < q; ++i) {
    c.gates.push_back({Gate::CSWAP, {ctrl, i, q + i}});
  }
  c.gates.push_back({Gate::H, {ctrl}});
  std::vector<int> reg_a(static_cast<size_t>(q)), reg_b(static_cast<size_t>(q));
  for (int i = 0; i < q; ++i) {
    reg_a[static_cast<size_t>(i)] = i;
    reg_b[static_cast<size_t>(i)] = q + i;
  }
  c.layout.proofs = {reg_a, reg_b};
  c.layout.ancilla = {ctrl};
  c.layout.output = ctrl;  // outcome 1 = reject
  return c;
}

void append_multi_controlled_x(Circuit& c, const std::vector<int>& controls,
                               const std::vector<bool>& pattern, int target,
                               const std::vector<int>& ancillas) {
  const int k = static_cast<int>(controls.size());
  if (k < 1) {
    throw std::invalid_argument("append_multi_controlled_x: need at least one control");
  }
  if (pattern.size() != controls.size()) {
    throw std::invalid_argument("append_multi_controlled_x: pattern length mismatch");
  }
  if (static_cast<int>(ancillas.size()) < std::max(0, k - 2)) {
    throw std::invalid_argument("append_multi_controlled_x: need " + std::to_string(k - 2) +
                                " ancilla wires");
  }
  auto flip_zeros = [&]() {
    for (int i = 0; i < k; ++i) {
      if (!pattern[static_cast<size_t>(i)]) {
        c.gates.push_back({Gate::X, {controls[static_cast<size_t>(i)]}});
      }
    }
  };
  flip_zeros();
  if (k == 1) {
    c.gates.push_back({Gate::CNOT, {controls[0], target}});
  } else if (k == 2) {
    c.gates.push_back({Gate::TOFFOLI, {controls[0], controls[1], target}});
  } else {
    // AND-cascade into ancillas; the last AND lands on the target directly.
    std::vector<GateOp> compute;
    compute.push_back({Gate::TOFFOLI, {controls[0], controls[1], ancillas[0]}});
    for (int j = 2; j < k - 1; ++j) {
      compute.push_back({Gate::TOFFOLI,
                         {controls[static_cast<size_t>(j)], ancillas[static_cast<size_t>(j - 2)],
                          ancillas[static_cast<size_t>(j - 1)]}});
    }
    for (const auto& g : compute) c.gates.push_back(g);
    c.gates.push_back(
        {Gate::TOFFOLI,
         {controls[static_cast<size_t>(k - 1)], ancillas[static_cast<size_t>(k - 3)], target}});
    for (auto it = compute.rbegin(); it != compute.rend(); ++it) c.gates.push_back(*it);
  }
  flip_zeros();
}

Circuit lookup_verifier_circuit(int input_bits, int witness_bits,
                                const std::vector<std::string>& accepted) {
  if (witness_bits < 1 || input_bits < 0) {
    throw std::invalid_argument("lookup_verifier_circuit: need witness_bits >= 1");
  }
  const int k = input_bits + witness_bits;
  const int num_anc = std::max(0, k - 2);
  Circuit c;
  c.num_wires = k + num_anc + 1;
  const int out = k + num_anc;
  std::vector<int> controls(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) controls[static_cast<size_t>(i)] = i;
  std::vector<int> anc(static_cast<size_t>(num_anc));
  for (int i = 0; i < num_anc; ++i) anc[static_cast<size_t>(i)] = k + i;
  for (const std::string& pat : accepted) {
    if (static_cast<int>(pat.size()) != k) {
      throw std::invalid_argument("lookup_verifier_circuit: pattern \"" + pat +
                                  "\" must have length " + std::to_string(k));
    }
    std::vector<bool> bits(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
      if (pat[static_cast<size_t>(i)] != '0' && pat[static_cast<size_t>(i)] != '1') {
        throw std::invalid_argument("lookup_verifier_circuit: pattern must be binary");
      }
      bits[static_cast<size_t>(i)] = pat[static_cast<size_t>(i)] == '1';
    }
    append_multi_controlled_x(c, controls, bits, out, anc);
  }
  if (input_bits > 0) {
    std::vector<int> in_reg(static_cast<size_t>(input_bits));
    for (int i = 0; i < input_bits; ++i) in_reg[static_cast<size_t>(i)] = i;
    std::vector<int> wit_reg(static_cast<size_t>(witness_bits));
    for (int i = 0; i < witness_bits; ++i) wit_reg[static_cast<size_t>(i)] = input_bits + i;
    c.layout.proofs = {in_reg, wit_reg};
  } else {
    std::vector<int> wit_reg(static_cast<size_t>(witness_bits));
    for (int i = 0; i < witness_bits; ++i) wit_reg[static_cast<size_t>(i)] = i;
    c.layout.proofs = {wit_reg};
  }
  c.layout.ancilla = anc;
  c.layout.ancilla.push_back(out);
  c.layout.output = out;
  return c;
}

}  // namespace qphlab
