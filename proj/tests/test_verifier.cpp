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
#include <vector>

#include "doctest.h"
#include "qphlab/circuit.hpp"
#include "qphlab/linalg.hpp"
#include "qphlab/verifier.hpp"
#include "test_support.hpp"

namespace {

using namespace qphlab;

TEST_CASE("proof_layout names registers p1, p2, ... with the given dims") {
  auto regs = proof_layout({2, 3, 4});
  REQUIRE(regs.size() == 3);
  CHECK(regs[0].name == "p1");
  CHECK(regs[0].dim == 2);
  CHECK(regs[1].name == "p2");
  CHECK(regs[1].dim == 3);
  CHECK(regs[2].name == "p3");
  CHECK(regs[2].dim == 4);
  // An empty layout is rejected once an operator is built on it.
  CHECK_THROWS_AS(AcceptOperator(Matrix::Identity(1, 1), proof_layout({})),
                  std::invalid_argument);
}

TEST_CASE("AcceptOperator enforces Hermiticity, spectrum, and layout size") {
  auto regs = proof_layout({2});
  // 1.5 I exceeds the POVM upper bound.
  CHECK_THROWS_AS(AcceptOperator(1.5 * Matrix::Identity(2, 2), regs), std::invalid_argument);
  // Negative operator.
  CHECK_THROWS_AS(AcceptOperator(-0.5 * Matrix::Identity(2, 2), regs), std::invalid_argument);
  // Non-Hermitian.
  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = Complex(0.5, 0.0);
  CHECK_THROWS_AS(AcceptOperator(skew, regs), std::invalid_argument);
  // Dimension product mismatch with the layout.
  CHECK_THROWS_AS(AcceptOperator(Matrix::Identity(4, 4), regs), std::invalid_argument);
  // Valid operator passes and reports its register dims.
  AcceptOperator ok(0.5 * Matrix::Identity(4, 4), proof_layout({2, 2}));
  CHECK(ok.dim() == 4);
  CHECK(ok.dims() == std::vector<Index>({2, 2}));
}

TEST_CASE("diagonal_accept_operator builds the diagonal POVM element") {
  auto m = diagonal_accept_operator({0.25, 0.75}, proof_layout({2}));
  CHECK(std::abs(m.mat(0, 0).real() - 0.25) < tol::kInvariant);
  CHECK(std::abs(m.mat(1, 1).real() - 0.75) < tol::kInvariant);
  CHECK(std::abs(m.mat(0, 1)) < tol::kInvariant);

  CHECK(accept_probability(m, {std::string("0")}) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(accept_probability(m, {std::string("1")}) == doctest::Approx(0.75).epsilon(1e-12));

  CHECK_THROWS_AS(diagonal_accept_operator({0.5}, proof_layout({2})), std::invalid_argument);
  CHECK_THROWS_AS(diagonal_accept_operator({0.5, 1.5}, proof_layout({2})), std::invalid_argument);
  CHECK_THROWS_AS(diagonal_accept_operator({-0.1, 0.5}, proof_layout({2})), std::invalid_argument);
}

TEST_CASE("accept_operator_from_circuit on a bare output wire is |1><1|") {
  Circuit c;
  c.num_wires = 1;
  c.layout.proofs = {{0}};
  c.layout.output = 0;
  auto m = accept_operator_from_circuit(c);
  REQUIRE(m.dim() == 2);
  CHECK(std::abs(m.mat(0, 0)) < tol::kInvariant);
  CHECK(std::abs(m.mat(1, 1) - Complex(1.0, 0.0)) < tol::kInvariant);
  CHECK(std::abs(m.mat(0, 1)) < tol::kInvariant);
  CHECK(std::abs(m.mat(1, 0)) < tol::kInvariant);
}

TEST_CASE("accept_operator_from_circuit with ancilla output copies the proof bit") {
  // Proof on wire 1, ancilla wire 0 starts at |0>, CNOT copies the proof
  // value onto the output, so the proof-side operator is again |1><1|.
  Circuit c;
  c.num_wires = 2;
  c.gates = {{Gate::CNOT, {1, 0}}};
  c.layout.proofs = {{1}};
  c.layout.ancilla = {0};
  c.layout.output = 0;
  auto m = accept_operator_from_circuit(c);
  REQUIRE(m.dim() == 2);
  CHECK(std::abs(m.mat(0, 0)) < tol::kInvariant);
  CHECK(std::abs(m.mat(1, 1) - Complex(1.0, 0.0)) < tol::kInvariant);

  // An H on the proof wire before the copy turns the accept operator into
  // |-><-| (the branch that flips the output).
  Circuit h = c;
  h.gates = {{Gate::H, {1}}, {Gate::CNOT, {1, 0}}};
  auto mh = accept_operator_from_circuit(h);
  CHECK(std::abs(mh.mat(0, 0) - Complex(0.5, 0.0)) < tol::kInvariant);
  CHECK(std::abs(mh.mat(1, 1) - Complex(0.5, 0.0)) < tol::kInvariant);
  CHECK(std::abs(mh.mat(0, 1) - Complex(-0.5, 0.0)) < tol::kInvariant);
  CHECK(std::abs(mh.mat(1, 0) - Complex(-0.5, 0.0)) < tol::kInvariant);
}

TEST_CASE("accept_probability matches the quadratic form for every proof kind") {
  SplitMix64 rng(20260301ULL);
  AcceptOperator m(random_projector(4, 2, rng), proof_layout({2, 2}));

  for (int rep = 0; rep < 25; ++rep) {
    QState a = random_state({2}, rng);
    QState b = random_state({2}, rng);
    QState joint = tensor(a, b);
    double direct = (joint.amp.adjoint() * m.mat * joint.amp)(0, 0).real();
    CHECK(std::abs(accept_probability(m, {a, b}) - direct) < tol::kNumeric);

    // Mixed proof on one slot: Tr(M (rho (x) |b><b|)).
    DensityOp rho = random_density(2, rng);
    DensityOp joint_mixed = tensor(rho, pure_density(b));
    double mixed_direct = (m.mat * joint_mixed.mat).trace().real();
    CHECK(std::abs(accept_probability(m, {rho, b}) - mixed_direct) < tol::kNumeric);
  }

  // Classical proofs embed as basis states.
  QState one = basis_state("1");
  QState zero = basis_state("0");
  double basis_direct =
      (tensor(one, zero).amp.adjoint() * m.mat * tensor(one, zero).amp)(0, 0).real();
  CHECK(std::abs(accept_probability(m, {std::string("1"), std::string("0")}) - basis_direct) <
        tol::kNumeric);

  CHECK_THROWS_AS(accept_probability(m, {one}), std::invalid_argument);
  CHECK_THROWS_AS(accept_probability(m, {std::string("10"), std::string("0")}),
                  std::invalid_argument);
}

TEST_CASE("parallel_repetition of a biased coin matches the binomial tail") {
  // Base verifier: accept a single qubit proof |1> with probability 0.9,
  // |0> with probability 0. Feeding |1> to every copy makes the accept
  // count Binomial(m, 0.9).
  auto base = diagonal_accept_operator({0.0, 0.9}, proof_layout({2}));
  auto rep3 = parallel_repetition(base, 3, 2.0 / 3.0);
  REQUIRE(rep3.dim() == 8);
  REQUIRE(rep3.layout.size() == 3);

  std::vector<ProofState> honest(3, std::string("1"));
  double found = accept_probability(rep3, honest);
  double oracle = qphlab_test::binomial_tail(3, 2, 0.9);
  CHECK(std::abs(oracle - 0.972) < 1e-12);
  CHECK(std::abs(found - oracle) < tol::kNumeric);

  // Mixed copy counts: two honest proofs and one |0> gives the probability
  // that both honest copies accept (the |0> copy always rejects).
  std::vector<ProofState> partial = {std::string("1"), std::string("0"), std::string("1")};
  CHECK(std::abs(accept_probability(rep3, partial) - 0.81) < tol::kNumeric);

  auto rep4 = parallel_repetition(base, 4, 0.5);
  std::vector<ProofState> honest4(4, std::string("1"));
  double oracle4 = qphlab_test::binomial_tail(4, 2, 0.9);
  CHECK(std::abs(accept_probability(rep4, honest4) - oracle4) < tol::kNumeric);

  CHECK_THROWS_AS(parallel_repetition(base, 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(parallel_repetition(base, 2, 1.5), std::invalid_argument);
}

TEST_CASE("repetition_accept_count rounds up with exact ties accepting") {
  CHECK(repetition_accept_count(3, 2.0 / 3.0) == 2);
  CHECK(repetition_accept_count(4, 0.5) == 2);
  CHECK(repetition_accept_count(2, 0.75) == 2);
  CHECK(repetition_accept_count(5, 0.0) == 0);
  CHECK(repetition_accept_count(5, 1.0) == 5);
  CHECK(repetition_accept_count(7, 0.3) == 3);  // 2.1 rounds up.
  CHECK_THROWS_AS(repetition_accept_count(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(repetition_accept_count(3, -0.1), std::invalid_argument);
}

TEST_CASE("parallel_repetition register layout repeats copy-major") {
  auto base = diagonal_accept_operator({0.2, 0.8, 0.1, 0.3}, proof_layout({2, 2}));
  auto rep = parallel_repetition(base, 2, 1.0);
  REQUIRE(rep.layout.size() == 4);
  CHECK(rep.dims() == std::vector<Index>({2, 2, 2, 2}));
  // AND of two independent diagonal verifiers multiplies entries.
  std::vector<ProofState> p = {std::string("0"), std::string("1"), std::string("1"),
                               std::string("1")};
  CHECK(std::abs(accept_probability(rep, p) - 0.8 * 0.3) < tol::kNumeric);
}

TEST_CASE("QuantifiedGame validates prefix and kind lengths") {
  auto op = diagonal_accept_operator({0.0, 1.0, 1.0, 0.0}, proof_layout({2, 2}));
  QuantifiedGame g(op, {Quantifier::Exists, Quantifier::ForAll},
                   {ProofKind::Classical, ProofKind::Classical});
  CHECK(g.prefix.size() == 2);
  CHECK_THROWS_AS(QuantifiedGame(op, {Quantifier::Exists}, {ProofKind::Classical}),
                  std::invalid_argument);
  CHECK_THROWS_AS(QuantifiedGame(op, {Quantifier::Exists, Quantifier::ForAll},
                                 {ProofKind::Classical}),
                  std::invalid_argument);
}

}  // namespace
