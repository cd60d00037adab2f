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

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "qphlab/linalg.hpp"
#include "qphlab/product_tests.hpp"
#include "qphlab/transforms.hpp"
#include "qphlab/verifier.hpp"
#include "test_support.hpp"

namespace {

using namespace qphlab;
using qphlab_test::kInvSqrt2;

// Base game for amplification: SWAP test scaled by 0.9, prefix forall-exists.
QuantifiedGame scaled_swap_game(double scale) {
  AcceptOperator op(scale * swap_test_operator(2).mat, proof_layout({2, 2}));
  return QuantifiedGame(std::move(op), {Quantifier::ForAll, Quantifier::Exists},
                        {ProofKind::Pure, ProofKind::Pure});
}

// Base game for the classical simulation: accept iff the two bits match.
QuantifiedGame equality_game() {
  auto op = diagonal_accept_operator({1.0, 0.0, 0.0, 1.0}, proof_layout({2, 2}));
  return QuantifiedGame(std::move(op), {Quantifier::ForAll, Quantifier::Exists},
                        {ProofKind::Classical, ProofKind::Classical});
}

TEST_CASE("universal_indices lists the odd positions of an even prefix") {
  CHECK(universal_indices(2) == std::vector<int>({1}));
  CHECK(universal_indices(4) == std::vector<int>({1, 3}));
  CHECK(universal_indices(6) == std::vector<int>({1, 3, 5}));
  CHECK_THROWS_AS(universal_indices(3), std::invalid_argument);
  CHECK_THROWS_AS(universal_indices(0), std::invalid_argument);
}

TEST_CASE("amplified bounds match their closed forms") {
  // 1/2 + 1/2 (1 - exp(-(c-s)^2 m / 2)) at c = 0.9, s = 0.6, m = 2.
  CHECK(amplified_yes_bound(0.9, 0.6, 2) ==
        doctest::Approx(0.54303440736438591).epsilon(1e-15));
  CHECK(std::abs(amplified_yes_bound(0.9, 0.6, 2) -
                 (0.5 + 0.5 * (1.0 - std::exp(-0.09)))) < 1e-15);
  // Monotone in m, approaching 1.
  CHECK(amplified_yes_bound(0.9, 0.6, 3) > amplified_yes_bound(0.9, 0.6, 2));
  CHECK(amplified_yes_bound(0.9, 0.6, 500) > 0.999);

  // 1 - 1/(4 m n) + s.
  CHECK(std::abs(amplified_no_bound(0.6, 2, 1) - 1.475) < 1e-15);
  CHECK(std::abs(amplified_no_bound(0.2, 1, 1) - (1.0 - 0.25 + 0.2)) < 1e-15);

  // 1/2 + 1/2 (c - 2^-m).
  CHECK(std::abs(simulation_yes_bound(1.0, 1) - 0.75) < 1e-15);
  CHECK(std::abs(simulation_yes_bound(1.0, 2) - 0.875) < 1e-15);
  CHECK(std::abs(simulation_no_bound(0.2, 1, 1) - 0.95) < 1e-15);
}

TEST_CASE("AmplifiedGameSpec validates its inputs") {
  CHECK_THROWS_AS(AmplifiedGameSpec(scaled_swap_game(0.9), 0.6, 0.9, 2),
                  std::invalid_argument);  // c <= s
  CHECK_THROWS_AS(AmplifiedGameSpec(scaled_swap_game(0.9), 0.9, 0.6, 0),
                  std::invalid_argument);  // copies < 1
  // Prefix must alternate starting with a universal register.
  auto op = diagonal_accept_operator({0.5, 0.5, 0.5, 0.5}, proof_layout({2, 2}));
  QuantifiedGame wrong_prefix(op, {Quantifier::Exists, Quantifier::ForAll},
                              {ProofKind::Pure, ProofKind::Pure});
  CHECK_THROWS_AS(AmplifiedGameSpec(wrong_prefix, 0.9, 0.6, 2), std::invalid_argument);
  // Base proofs must be pure.
  QuantifiedGame classical_base(op, {Quantifier::ForAll, Quantifier::Exists},
                                {ProofKind::Classical, ProofKind::Classical});
  CHECK_THROWS_AS(AmplifiedGameSpec(classical_base, 0.9, 0.6, 2), std::invalid_argument);
}

TEST_CASE("SimulationGameSpec validates its inputs") {
  CHECK_THROWS_AS(SimulationGameSpec(equality_game(), 0), std::invalid_argument);
  // Odd register count.
  auto op1 = diagonal_accept_operator({0.0, 1.0}, proof_layout({2}));
  QuantifiedGame odd(op1, {Quantifier::ForAll}, {ProofKind::Classical});
  CHECK_THROWS_AS(SimulationGameSpec(odd, 1), std::invalid_argument);
  // Non-classical base registers.
  CHECK_THROWS_AS(SimulationGameSpec(scaled_swap_game(0.9), 1), std::invalid_argument);
  // Non-diagonal base operator.
  QuantifiedGame swap_classical(swap_test_operator(2),
                                {Quantifier::ForAll, Quantifier::Exists},
                                {ProofKind::Classical, ProofKind::Classical});
  CHECK_THROWS_AS(SimulationGameSpec(swap_classical, 1), std::invalid_argument);
}

TEST_CASE("one_sided_amplify produces the documented register shape") {
  for (int m : {1, 2, 3}) {
    AmplifiedGameSpec spec(scaled_swap_game(0.9), 0.9, 0.6, m);
    QuantifiedGame amp = one_sided_amplify(spec);
    REQUIRE(amp.accept.layout.size() == 2);
    CHECK(amp.accept.layout[0].dim == 2);
    Index expect_bc = 1;
    for (int j = 0; j < 2 * m; ++j) expect_bc *= 2;  // 2^m bundles x 2^m copies
    CHECK(amp.accept.layout[1].dim == expect_bc);
    CHECK(amp.prefix == std::vector<Quantifier>({Quantifier::ForAll, Quantifier::Exists}));
    CHECK(amp.kinds == std::vector<ProofKind>(2, ProofKind::Pure));
  }
}

TEST_CASE("honest amplified acceptance equals the binomial-threshold oracle") {
  // Base acceptance on (|0>, |0>) is 0.9; threshold (c+s)/2 = 0.75, so the
  // repetition branch accepts with the Binomial(m, 0.9) upper tail at the
  // cutoff, and the product-test branch accepts with probability 1.
  for (int m : {1, 2, 3}) {
    AmplifiedGameSpec spec(scaled_swap_game(0.9), 0.9, 0.6, m);
    QuantifiedGame amp = one_sided_amplify(spec);
    QState zero = basis_state("0");
    auto honest = honest_amplified_response(spec, {zero, zero});
    REQUIRE(honest.size() == 2);
    CHECK(honest[1].dim() == amp.accept.layout[1].dim);
    double found = accept_probability(amp.accept,
                                      {honest[0], honest[1]});
    int cutoff = repetition_accept_count(m, 0.75);
    double oracle = 0.5 + 0.5 * qphlab_test::binomial_tail(m, cutoff, 0.9);
    CHECK(std::abs(found - oracle) < tol::kNumeric);
    // The honest floor from the closed form holds with slack to spare.
    CHECK(found + tol::kNumeric >= amplified_yes_bound(0.9, 0.6, m));
  }
  // Frozen endpoints: m = 2 gives 0.905, m = 3 gives 0.8645.
  AmplifiedGameSpec s2(scaled_swap_game(0.9), 0.9, 0.6, 2);
  auto amp2 = one_sided_amplify(s2);
  auto h2 = honest_amplified_response(s2, {basis_state("0"), basis_state("0")});
  CHECK(std::abs(accept_probability(amp2.accept, {h2[0], h2[1]}) - 0.905) < tol::kNumeric);
  AmplifiedGameSpec s3(scaled_swap_game(0.9), 0.9, 0.6, 3);
  auto amp3 = one_sided_amplify(s3);
  auto h3 = honest_amplified_response(s3, {basis_state("0"), basis_state("0")});
  CHECK(std::abs(accept_probability(amp3.accept, {h3[0], h3[1]}) - 0.8645) < tol::kNumeric);
}

TEST_CASE("honest_amplified_response validates shapes") {
  AmplifiedGameSpec spec(scaled_swap_game(0.9), 0.9, 0.6, 2);
  CHECK_THROWS_AS(honest_amplified_response(spec, {basis_state("0")}),
                  std::invalid_argument);
  CHECK_THROWS_AS(honest_amplified_response(spec, {basis_state("00"), basis_state("0")}),
                  std::invalid_argument);
}

TEST_CASE("simulation measurement branch is exactly diagonal") {
  for (int m : {1, 2}) {
    SimulationGameSpec spec(equality_game(), m);
    auto meas = simulation_measure_operator(spec);
    double offdiag = 0.0;
    for (Index r = 0; r < meas.dim(); ++r) {
      for (Index c = 0; c < meas.dim(); ++c) {
        if (r != c) offdiag = std::max(offdiag, std::abs(meas.mat(r, c)));
      }
    }
    CHECK(offdiag == 0.0);
  }
}

TEST_CASE("measurement branch accepts mismatches only at universal positions") {
  // k = 2, m = 2: the bc register holds two copies of y1 then y2, leftmost
  // bit most significant. The measured first register is compared against
  // both copies; any disagreement is a mismatch at position 1 (universal).
  SimulationGameSpec spec(equality_game(), 2);
  auto meas = simulation_measure_operator(spec);
  auto acc = [&](const std::string& x1, const std::string& bc) {
    return accept_probability(meas, {basis_state(x1), basis_state(bc)});
  };
  // Consistent copies, equal pair: the base verifier accepts.
  CHECK(std::abs(acc("0", "000") - 1.0) < tol::kInvariant);
  CHECK(std::abs(acc("1", "111") - 1.0) < tol::kInvariant);
  // Consistent copies, unequal pair: the base verifier rejects.
  CHECK(std::abs(acc("0", "001")) < tol::kInvariant);
  CHECK(std::abs(acc("1", "110")) < tol::kInvariant);
  // Copies disagree with each other: mismatch at the universal position.
  CHECK(std::abs(acc("0", "010") - 1.0) < tol::kInvariant);
  CHECK(std::abs(acc("0", "100") - 1.0) < tol::kInvariant);
  // Copies agree but contradict the measured register: still a mismatch.
  CHECK(std::abs(acc("0", "111") - 1.0) < tol::kInvariant);
  CHECK(std::abs(acc("1", "000") - 1.0) < tol::kInvariant);
}

TEST_CASE("mismatches at existential positions reject") {
  // k = 4 equality-of-pairs game: accept iff y1 = y2 and y3 = y4. Position 2
  // is existential, so a copy mismatch there must reject.
  std::vector<double> diag(16, 0.0);
  for (Index y1 = 0; y1 < 2; ++y1) {
    for (Index y3 = 0; y3 < 2; ++y3) {
      Index idx = (((y1 << 1) | y1) << 2) | ((y3 << 1) | y3);
      diag[static_cast<size_t>(idx)] = 1.0;
    }
  }
  auto op = diagonal_accept_operator(diag, proof_layout({2, 2, 2, 2}));
  QuantifiedGame base(op,
                      {Quantifier::ForAll, Quantifier::Exists, Quantifier::ForAll,
                       Quantifier::Exists},
                      std::vector<ProofKind>(4, ProofKind::Classical));
  SimulationGameSpec spec(base, 1);
  auto meas = simulation_measure_operator(spec);
  // bc register: one bundle (y1 y2 y3) then y4, leftmost most significant.
  auto acc = [&](const std::string& x1, const std::string& x2, const std::string& x3,
                 const std::string& bc) {
    return accept_probability(
        meas, {basis_state(x1), basis_state(x2), basis_state(x3), basis_state(bc)});
  };
  // Honest: copies match, verifier accepts (0=0 and 1=1).
  CHECK(std::abs(acc("0", "0", "1", "0011") - 1.0) < tol::kInvariant);
  // Copy contradicts x1 (position 1, universal): accept.
  CHECK(std::abs(acc("1", "0", "1", "0011") - 1.0) < tol::kInvariant);
  // Copy contradicts x2 (position 2, existential): reject.
  CHECK(std::abs(acc("0", "1", "1", "0011")) < tol::kInvariant);
  // Mismatch at 1 shadows a later mismatch at 2: minimal index wins, accept.
  CHECK(std::abs(acc("1", "1", "1", "0011") - 1.0) < tol::kInvariant);
  // Copy contradicts x3 (position 3, universal): accept.
  CHECK(std::abs(acc("0", "0", "0", "0011") - 1.0) < tol::kInvariant);
}

TEST_CASE("honest simulation response reaches the completeness floor") {
  for (int m : {1, 2}) {
    SimulationGameSpec spec(equality_game(), m);
    QuantifiedGame sim = qcph_to_qphpure_transform(spec);
    auto honest = honest_simulation_response(spec, {"0", "0"});
    REQUIRE(honest.size() == 2);
    double found = accept_probability(sim.accept, {honest[0], honest[1]});
    // Both branches accept a consistent honest transcript outright.
    CHECK(std::abs(found - 1.0) < tol::kNumeric);
    CHECK(found + tol::kNumeric >= simulation_yes_bound(1.0, m));
  }
  SimulationGameSpec spec(equality_game(), 1);
  CHECK_THROWS_AS(honest_simulation_response(spec, {"0"}), std::invalid_argument);
  CHECK_THROWS_AS(honest_simulation_response(spec, {"00", "0"}), std::invalid_argument);
}

TEST_CASE("superposed universal register keeps the measurement branch accepting") {
  // Register 1 in |+>, bc honest for y1 = 0: measuring 1 triggers a
  // universal-position mismatch (accept), measuring 0 runs the accepting
  // base check, so the branch accepts with probability 1 for every m.
  for (int m : {1, 2, 3}) {
    SimulationGameSpec spec(equality_game(), m);
    auto meas = simulation_measure_operator(spec);
    auto honest = honest_simulation_response(spec, {"0", "0"});
    QState plus((Vector(2) << kInvSqrt2, kInvSqrt2).finished(), {2});
    double found = accept_probability(meas, {plus, honest[1]});
    double reject = 1.0 - found;
    // Reject stays under min{p, 1-p}^m + (1 - c) for p = 1/2, c = 1.
    CHECK(reject <= std::pow(0.5, m) + tol::kNumeric);
    CHECK(std::abs(found - 1.0) < tol::kNumeric);
  }
}

TEST_CASE("transformed game dimensions follow bundle arithmetic") {
  SimulationGameSpec spec(equality_game(), 2);
  QuantifiedGame sim = qcph_to_qphpure_transform(spec);
  REQUIRE(sim.accept.layout.size() == 2);
  CHECK(sim.accept.layout[0].dim == 2);
  CHECK(sim.accept.layout[1].dim == 8);  // 2 bundles of y1 (2^2) times y2 (2)
  CHECK(sim.kinds == std::vector<ProofKind>(2, ProofKind::Pure));
  CHECK(sim.prefix == std::vector<Quantifier>({Quantifier::ForAll, Quantifier::Exists}));
}

}  // namespace
