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

#include "qphlab/search_to_decision.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qphlab {

namespace {

constexpr double kThresholdSlack = 1e-9;

Index sample_index(const std::vector<double>& probs, SplitMix64& rng) {
  double u = rng.uniform();
  double acc = 0.0;
  for (Index i = 0; i < static_cast<Index>(probs.size()); ++i) {
    acc += probs[static_cast<size_t>(i)];
    if (u < acc) return i;
  }
  return static_cast<Index>(probs.size()) - 1;
}

bool post_check(const UqcmappInstance& inst, const std::vector<double>& acceptances,
                Index candidate) {
  return acceptances[static_cast<size_t>(candidate)] >= inst.base.p2.value() - kThresholdSlack &&
         satisfies_constraints(inst.constraints, candidate, inst.base.ell);
}

}  // namespace

NoisyDecisionOracle::NoisyDecisionOracle(std::function<bool(const std::string&)> p, double eta)
    : predicate(std::move(p)), flip_rate(eta) {
  if (!predicate) throw std::invalid_argument("NoisyDecisionOracle: predicate required");
  if (!(eta >= 0.0 && eta < 0.5)) {
    throw std::invalid_argument("NoisyDecisionOracle: flip rate must be in [0, 1/2)");
  }
}

std::string bernstein_vazirani(const NoisyDecisionOracle& oracle, int n, SplitMix64& rng) {
  if (n < 1 || n > 24) throw std::invalid_argument("bernstein_vazirani: bad query width");
  const Index size = Index(1) << n;
  std::vector<double> signs(static_cast<size_t>(size));
  for (Index z = 0; z < size; ++z) {
    bool f = oracle.predicate(bits_of_index(z, n));
    if (oracle.flip_rate > 0.0 && rng.uniform() < oracle.flip_rate) f = !f;
    signs[static_cast<size_t>(z)] = f ? -1.0 : 1.0;
  }
  // Fast Walsh-Hadamard transform of the sign vector; entry y is then
  // 2^n times the final amplitude of |y>.
  for (Index len = 1; len < size; len <<= 1) {
    for (Index block = 0; block < size; block += 2 * len) {
      for (Index off = 0; off < len; ++off) {
        double a = signs[static_cast<size_t>(block + off)];
        double b = signs[static_cast<size_t>(block + off + len)];
        signs[static_cast<size_t>(block + off)] = a + b;
        signs[static_cast<size_t>(block + off + len)] = a - b;
      }
    }
  }
  std::vector<double> probs(static_cast<size_t>(size));
  double norm = static_cast<double>(size);
  for (Index y = 0; y < size; ++y) {
    double amp = signs[static_cast<size_t>(y)] / norm;
    probs[static_cast<size_t>(y)] = amp * amp;
  }
  return bits_of_index(sample_index(probs, rng), n);
}

std::string bernstein_vazirani(const Circuit& decider, SplitMix64& rng) {
  validate_circuit(decider);
  if (decider.layout.proofs.size() != 1) {
    throw std::invalid_argument("bernstein_vazirani: decider needs one proof register");
  }
  const std::vector<int>& query = decider.layout.proofs[0];
  const int n = static_cast<int>(query.size());
  const Index size = Index(1) << n;

  Vector uniform = Vector::Constant(size, Complex(1.0 / std::sqrt(static_cast<double>(size)), 0));
  Vector state = simulate(decider, {QState(uniform, {size})});
  apply_gate({Gate::Z, {decider.layout.output}}, decider.num_wires, state);
  apply_circuit(inverse_circuit(decider), state);
  for (int w : query) apply_gate({Gate::H, {w}}, decider.num_wires, state);

  // Marginal distribution of the query register (first listed wire is the
  // most significant bit of the register value).
  std::vector<double> probs(static_cast<size_t>(size), 0.0);
  const Index total = Index(1) << decider.num_wires;
  for (Index idx = 0; idx < total; ++idx) {
    Index reg = 0;
    for (int w : query) reg = (reg << 1) | ((idx >> w) & 1);
    probs[static_cast<size_t>(reg)] += std::norm(state(idx));
  }
  return bits_of_index(sample_index(probs, rng), n);
}

double bv_success_probability(const std::vector<bool>& table, const std::string& target) {
  const int n = static_cast<int>(target.size());
  const Index size = Index(1) << n;
  if (static_cast<Index>(table.size()) != size) {
    throw std::invalid_argument("bv_success_probability: table/target size mismatch");
  }
  const std::uint64_t t = static_cast<std::uint64_t>(index_of_bits(target));
  double sum = 0.0;
  for (Index z = 0; z < size; ++z) {
    int parity = std::popcount(static_cast<std::uint64_t>(z) & t) & 1;
    double sign = (static_cast<int>(table[static_cast<size_t>(z)]) ^ parity) ? -1.0 : 1.0;
    sum += sign;
  }
  double amp = sum / static_cast<double>(size);
  return amp * amp;
}

UqcmappInstance restrict_to_parity(const UqcmappInstance& phi, const std::string& z) {
  if (z.size() != static_cast<size_t>(phi.base.ell)) {
    throw std::invalid_argument("restrict_to_parity: query width mismatch");
  }
  AffineConstraint c;
  c.coeffs.reserve(z.size());
  for (char ch : z) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("restrict_to_parity: query must be a bit string");
    }
    c.coeffs.push_back(ch - '0');
  }
  c.rhs = 1;
  UqcmappInstance out = phi;
  out.constraints.push_back(std::move(c));
  return out;
}

std::vector<bool> parity_predicate_table(const UqcmappInstance& phi) {
  return parity_predicate_table(phi, witness_acceptances(phi.base));
}

std::vector<bool> parity_predicate_table(const UqcmappInstance& phi,
                                         const std::vector<double>& acceptances) {
  const int ell = phi.base.ell;
  const Index count = Index(1) << ell;
  if (static_cast<Index>(acceptances.size()) != count) {
    throw std::invalid_argument("parity_predicate_table: acceptance table size mismatch");
  }
  const double hi = phi.base.p2.value() - kThresholdSlack;
  const double lo = phi.base.p1.value() + kThresholdSlack;
  std::vector<bool> table(static_cast<size_t>(count));
  for (Index z = 0; z < count; ++z) {
    long above = 0, between = 0;
    for (Index d = 0; d < count; ++d) {
      // d survives phi_z iff it satisfies phi's constraints and <z,d> = 1.
      if (!satisfies_constraints(phi.constraints, d, ell)) continue;
      if ((std::popcount(static_cast<std::uint64_t>(z) & static_cast<std::uint64_t>(d)) & 1) !=
          1) {
        continue;
      }
      double a = acceptances[static_cast<size_t>(d)];
      if (a >= hi) {
        ++above;
      } else if (a > lo) {
        ++between;
      }
    }
    table[static_cast<size_t>(z)] = (above == 1 && between == 0);
  }
  return table;
}

Circuit exact_lookup_decider(const std::vector<bool>& table, int bits) {
  const Index size = Index(1) << bits;
  if (static_cast<Index>(table.size()) != size) {
    throw std::invalid_argument("exact_lookup_decider: table size mismatch");
  }
  std::vector<std::string> accepted;
  for (Index z = 0; z < size; ++z) {
    if (table[static_cast<size_t>(z)]) accepted.push_back(bits_of_index(z, bits));
  }
  return lookup_verifier_circuit(0, bits, accepted);
}

Circuit noisy_lookup_decider(const std::vector<bool>& table, int bits, double entry_error,
                             SplitMix64& rng) {
  if (!(entry_error >= 0.0 && entry_error < 0.5)) {
    throw std::invalid_argument("noisy_lookup_decider: entry error must be in [0, 1/2)");
  }
  std::vector<bool> noisy = table;
  for (size_t z = 0; z < noisy.size(); ++z) {
    if (rng.uniform() < entry_error) noisy[z] = !noisy[z];
  }
  return exact_lookup_decider(noisy, bits);
}

std::optional<std::string> search_to_decision(const UqcmappInstance& inst,
                                              const NoisyDecisionOracle& oracle,
                                              SplitMix64& rng) {
  std::string y = bernstein_vazirani(oracle, inst.base.ell, rng);
  std::vector<double> acc = witness_acceptances(inst.base);
  if (post_check(inst, acc, index_of_bits(y))) return y;
  return std::nullopt;
}

std::optional<std::string> search_to_decision(const UqcmappInstance& inst,
                                              const Circuit& decider, SplitMix64& rng) {
  if (decider.layout.proofs.size() != 1 ||
      decider.layout.proofs[0].size() != static_cast<size_t>(inst.base.ell)) {
    throw std::invalid_argument("search_to_decision: decider query width mismatch");
  }
  std::string y = bernstein_vazirani(decider, rng);
  std::vector<double> acc = witness_acceptances(inst.base);
  if (post_check(inst, acc, index_of_bits(y))) return y;
  return std::nullopt;
}

QcklContext make_qckl_context(const Circuit& v, const std::string& x, const std::string& y1,
                              Rational p1, Rational p2, int ell) {
  TqcmappInstance inst(v, x + y1, p1, p2, ell);
  std::vector<double> acc = witness_acceptances(inst);
  return QcklContext{std::move(inst), std::move(acc)};
}

QcklTrial qckl_trial(const QcklContext& ctx, double decider_entry_error, SplitMix64& rng) {
  QcklTrial out;
  UqcmappInstance phi = vv_isolate(ctx.inst, rng);
  out.isolated = uqcmapp_status_from(ctx.acceptances, phi) == InstanceStatus::Yes;

  std::vector<bool> table = parity_predicate_table(phi, ctx.acceptances);
  Circuit decider = noisy_lookup_decider(table, ctx.inst.ell, decider_entry_error, rng);
  std::string y = bernstein_vazirani(decider, rng);

  Index candidate = index_of_bits(y);
  if (post_check(phi, ctx.acceptances, candidate)) {
    out.witness_found = true;
    out.witness = y;
    out.accept_probability = ctx.acceptances[static_cast<size_t>(candidate)];
  }
  return out;
}

}  // namespace qphlab
