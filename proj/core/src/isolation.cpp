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

#include "qphlab/isolation.hpp"

#include <stdexcept>

#include "json.hpp"

namespace qphlab {

namespace {

// Numeric slack when comparing simulated acceptance against exact rational
// thresholds; instances are expected to stay clear of their thresholds.
constexpr double kThresholdSlack = 1e-9;

using ordered_json = nlohmann::ordered_json;

}  // namespace

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den < 1) throw std::invalid_argument("Rational: denominator must be >= 1");
  if (num < 0 || num > den) throw std::invalid_argument("Rational: need 0 <= num/den <= 1");
}

TqcmappInstance::TqcmappInstance(Circuit u, std::string input, Rational lo, Rational hi,
                                 int witness_len)
    : verifier(std::move(u)), x(std::move(input)), p1(lo), p2(hi), ell(witness_len) {
  validate_circuit(verifier);
  if (ell < 1) throw std::invalid_argument("TqcmappInstance: witness length must be >= 1");
  if (!(p1.value() < p2.value())) {
    throw std::invalid_argument("TqcmappInstance: need p1 < p2");
  }
  for (char ch : x) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("TqcmappInstance: input must be a bit string");
    }
  }
  size_t want_regs = x.empty() ? 1 : 2;
  if (verifier.layout.proofs.size() != want_regs) {
    throw std::invalid_argument("TqcmappInstance: verifier needs " +
                                std::to_string(want_regs) + " proof registers");
  }
  if (!x.empty() && verifier.layout.proofs[0].size() != x.size()) {
    throw std::invalid_argument("TqcmappInstance: input register width mismatch");
  }
  if (verifier.layout.proofs[want_regs - 1].size() != static_cast<size_t>(ell)) {
    throw std::invalid_argument("TqcmappInstance: witness register width mismatch");
  }
}

bool satisfies_constraints(const std::vector<AffineConstraint>& constraints, Index witness,
                           int ell) {
  for (const AffineConstraint& c : constraints) {
    if (c.coeffs.size() != static_cast<size_t>(ell)) {
      throw std::invalid_argument("satisfies_constraints: constraint width mismatch");
    }
    int parity = 0;
    for (int j = 0; j < ell; ++j) {
      int bit = static_cast<int>((witness >> (ell - 1 - j)) & 1);
      parity ^= (c.coeffs[static_cast<size_t>(j)] & 1) & bit;
    }
    if (parity != (c.rhs & 1)) return false;
  }
  return true;
}

std::vector<double> witness_acceptances(const TqcmappInstance& inst) {
  const Index count = Index(1) << inst.ell;
  std::vector<double> acc(static_cast<size_t>(count));
  std::vector<QState> proofs;
  if (!inst.x.empty()) {
    proofs.push_back(basis_state({Index(1) << inst.x.size()}, index_of_bits(inst.x)));
  }
  proofs.push_back(basis_state({count}, 0));
  size_t wit_slot = proofs.size() - 1;
  for (Index d = 0; d < count; ++d) {
    proofs[wit_slot] = basis_state({count}, d);
    Vector final_state = simulate(inst.verifier, proofs);
    acc[static_cast<size_t>(d)] = output_one_probability(inst.verifier, final_state);
  }
  return acc;
}

std::vector<Index> witness_set(const TqcmappInstance& inst) {
  std::vector<double> acc = witness_acceptances(inst);
  std::vector<Index> out;
  double hi = inst.p2.value() - kThresholdSlack;
  for (Index d = 0; d < static_cast<Index>(acc.size()); ++d) {
    if (acc[static_cast<size_t>(d)] >= hi) out.push_back(d);
  }
  return out;
}

namespace {

InstanceStatus status_from(const std::vector<double>& acc,
                           const std::vector<AffineConstraint>& constraints, int ell,
                           double p1, double p2, bool unique_variant) {
  long above_p2 = 0, between = 0;
  for (Index d = 0; d < static_cast<Index>(acc.size()); ++d) {
    if (!satisfies_constraints(constraints, d, ell)) continue;
    double a = acc[static_cast<size_t>(d)];
    if (a >= p2 - kThresholdSlack) {
      ++above_p2;
    } else if (a > p1 + kThresholdSlack) {
      ++between;
    }
  }
  if (unique_variant) {
    if (above_p2 == 1 && between == 0) return InstanceStatus::Yes;
    if (above_p2 == 0 && between == 0) return InstanceStatus::No;
    return InstanceStatus::Invalid;
  }
  if (above_p2 > 0) return InstanceStatus::Yes;
  if (between > 0) return InstanceStatus::Invalid;
  return InstanceStatus::No;
}

}  // namespace

InstanceStatus tqcmapp_status(const TqcmappInstance& inst) {
  return status_from(witness_acceptances(inst), {}, inst.ell, inst.p1.value(),
                     inst.p2.value(), false);
}

InstanceStatus uqcmapp_status(const UqcmappInstance& inst) {
  return uqcmapp_status_from(witness_acceptances(inst.base), inst);
}

InstanceStatus uqcmapp_status_from(const std::vector<double>& acceptances,
                                   const UqcmappInstance& inst) {
  return status_from(acceptances, inst.constraints, inst.base.ell, inst.base.p1.value(),
                     inst.base.p2.value(), true);
}

UqcmappInstance vv_isolate(const TqcmappInstance& inst, SplitMix64& rng) {
  int k = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(inst.ell) + 1));
  std::vector<AffineConstraint> constraints;
  constraints.reserve(static_cast<size_t>(k));
  for (int row = 0; row < k; ++row) {
    AffineConstraint c;
    c.coeffs.resize(static_cast<size_t>(inst.ell));
    for (int j = 0; j < inst.ell; ++j) {
      c.coeffs[static_cast<size_t>(j)] = static_cast<int>(rng.next_u64() & 1);
    }
    c.rhs = static_cast<int>(rng.next_u64() & 1);
    constraints.push_back(std::move(c));
  }
  return UqcmappInstance{inst, std::move(constraints)};
}

std::string instance_to_json(const UqcmappInstance& inst) {
  ordered_json j;
  j["circuit"] = ordered_json::parse(circuit_to_json(inst.base.verifier));
  j["x"] = inst.base.x;
  j["p1"] = {inst.base.p1.num, inst.base.p1.den};
  j["p2"] = {inst.base.p2.num, inst.base.p2.den};
  j["ell"] = inst.base.ell;
  ordered_json cs = ordered_json::array();
  for (const AffineConstraint& c : inst.constraints) {
    ordered_json row = ordered_json::array();
    for (int coef : c.coeffs) row.push_back(coef);
    row.push_back(c.rhs);
    cs.push_back(std::move(row));
  }
  j["constraints"] = std::move(cs);
  return j.dump(2) + "\n";
}

UqcmappInstance instance_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("instance JSON: ") + e.what());
  }
  for (const char* key : {"circuit", "x", "p1", "p2", "ell", "constraints"}) {
    if (!j.contains(key)) {
      throw std::invalid_argument(std::string("instance JSON: missing key \"") + key + "\"");
    }
  }
  Circuit circ = circuit_from_json(j["circuit"].dump());
  auto rational_at = [&](const char* key) {
    const ordered_json& r = j[key];
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() ||
        !r[1].is_number_integer()) {
      throw std::invalid_argument(std::string("instance JSON: \"") + key +
                                  "\" must be [num, den]");
    }
    return Rational(r[0].get<long long>(), r[1].get<long long>());
  };
  if (!j["x"].is_string() || !j["ell"].is_number_integer()) {
    throw std::invalid_argument("instance JSON: bad \"x\" or \"ell\"");
  }
  TqcmappInstance base(std::move(circ), j["x"].get<std::string>(), rational_at("p1"),
                       rational_at("p2"), j["ell"].get<int>());
  std::vector<AffineConstraint> constraints;
  if (!j["constraints"].is_array()) {
    throw std::invalid_argument("instance JSON: \"constraints\" must be an array");
  }
  for (const ordered_json& row : j["constraints"]) {
    if (!row.is_array() || row.size() != static_cast<size_t>(base.ell) + 1) {
      throw std::invalid_argument("instance JSON: each constraint needs ell coefficients + rhs");
    }
    AffineConstraint c;
    for (size_t idx = 0; idx + 1 < row.size(); ++idx) {
      if (!row[idx].is_number_integer()) {
        throw std::invalid_argument("instance JSON: coefficients are bits");
      }
      int v = row[idx].get<int>();
      if (v != 0 && v != 1) throw std::invalid_argument("instance JSON: coefficients are bits");
      c.coeffs.push_back(v);
    }
    if (!row[row.size() - 1].is_number_integer()) {
      throw std::invalid_argument("instance JSON: rhs is a bit");
    }
    int rhs = row[row.size() - 1].get<int>();
    if (rhs != 0 && rhs != 1) throw std::invalid_argument("instance JSON: rhs is a bit");
    c.rhs = rhs;
    constraints.push_back(std::move(c));
  }
  return UqcmappInstance{std::move(base), std::move(constraints)};
}

}  // namespace qphlab
