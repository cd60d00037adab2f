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

#include "doctest.h"
#include "qphlab/linalg.hpp"

using namespace qphlab;

namespace {
const double kInvSqrt2 = 0.70710678118654752440;
}

TEST_CASE("basis states follow the bit-string convention") {
  QState s = basis_state("10");
  CHECK(s.dim() == 4);
  CHECK(s.amp(2) == Complex(1.0, 0.0));
  CHECK(index_of_bits("10") == 2);
  CHECK(bits_of_index(2, 2) == "10");
  CHECK(bits_of_index(5, 4) == "0101");

  QState t = basis_state({3, 2}, 4);
  CHECK(t.amp(4) == Complex(1.0, 0.0));
  CHECK(t.dims == std::vector<Index>{3, 2});
}

TEST_CASE("tensor puts the first factor in the most significant block") {
  Vector plus(2);
  plus << kInvSqrt2, kInvSqrt2;
  QState a(plus, {2});
  QState b = basis_state("1");
  QState joint = tensor(a, b);
  // |+> (x) |1> = (0, 1/sqrt2, 0, 1/sqrt2).
  CHECK(std::abs(joint.amp(0)) < tol::kInvariant);
  CHECK(std::abs(joint.amp(1) - kInvSqrt2) < tol::kInvariant);
  CHECK(std::abs(joint.amp(2)) < tol::kInvariant);
  CHECK(std::abs(joint.amp(3) - kInvSqrt2) < tol::kInvariant);
}

TEST_CASE("state and operator constructors validate their invariants") {
  Vector bad(2);
  bad << 1.0, 1.0;  // norm sqrt(2)
  CHECK_THROWS_AS(QState(bad, {2}), std::invalid_argument);

  Vector ok(2);
  ok << 1.0, 0.0;
  CHECK_THROWS_AS(QState(ok, {3}), std::invalid_argument);  // dims mismatch

  Matrix not_hermitian = Matrix::Zero(2, 2);
  not_hermitian(0, 1) = Complex(1.0, 0.0);
  CHECK_THROWS_AS(DensityOp(not_hermitian, {2}), std::invalid_argument);
  CHECK_THROWS_AS(HermitianOp(not_hermitian, {2}), std::invalid_argument);

  Matrix traceless = Matrix::Identity(2, 2) * 0.3;
  CHECK_THROWS_AS(DensityOp(traceless, {2}), std::invalid_argument);

  CHECK_THROWS_AS(total_dim({kMaxOperatorDim, 2}), std::invalid_argument);
}

TEST_CASE("partial trace of the Bell state is maximally mixed") {
  Vector bell(4);
  bell << kInvSqrt2, 0.0, 0.0, kInvSqrt2;
  DensityOp rho = pure_density(QState(bell, {2, 2}));
  DensityOp reduced = partial_trace(rho, {1});
  CHECK(reduced.dim() == 2);
  CHECK(std::abs(reduced.mat(0, 0) - 0.5) < tol::kInvariant);
  CHECK(std::abs(reduced.mat(1, 1) - 0.5) < tol::kInvariant);
  CHECK(std::abs(reduced.mat(0, 1)) < tol::kInvariant);
}

TEST_CASE("partial trace recovers tensor factors and preserves trace") {
  SplitMix64 rng(101);
  DensityOp rho = random_density(3, rng);
  DensityOp sigma = random_density(2, rng);
  DensityOp joint = tensor(rho, sigma);

  DensityOp first = partial_trace(joint, {0});
  CHECK((first.mat - rho.mat).cwiseAbs().maxCoeff() < tol::kInvariant);

  DensityOp second = partial_trace(joint, {1});
  CHECK((second.mat - sigma.mat).cwiseAbs().maxCoeff() < tol::kInvariant);

  DensityOp all = partial_trace(joint, {0, 1});
  CHECK((all.mat - joint.mat).cwiseAbs().maxCoeff() < tol::kInvariant);

  CHECK(std::abs(first.mat.trace().real() - 1.0) < tol::kInvariant);
  CHECK_THROWS_AS(partial_trace(joint, std::vector<int>{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(joint, std::vector<int>{2}), std::out_of_range);
}

TEST_CASE("trace distance matches hand-computed values") {
  DensityOp zero = pure_density(basis_state("0"));
  DensityOp one = pure_density(basis_state("1"));
  Vector plus(2);
  plus << kInvSqrt2, kInvSqrt2;
  DensityOp plus_state = pure_density(QState(plus, {2}));

  CHECK(trace_distance(zero, zero) == doctest::Approx(0.0).epsilon(tol::kInvariant));
  CHECK(std::abs(trace_distance(zero, one) - 1.0) < tol::kInvariant);
  // Eigenvalues of the difference are +-1/sqrt2.
  CHECK(std::abs(trace_distance(zero, plus_state) - kInvSqrt2) < tol::kInvariant);
  CHECK(std::abs(trace_distance(plus_state, zero) - kInvSqrt2) < tol::kInvariant);

  Matrix a = Matrix::Identity(2, 2);
  Matrix b = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(trace_distance(a, b), std::invalid_argument);
}

TEST_CASE("extreme eigenpairs are extremal and satisfy the residual contract") {
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.2;
  diag(1, 1) = 0.9;
  EigenPair top = extreme_eigenpair(diag, Extremum::Max);
  CHECK(std::abs(top.value - 0.9) < tol::kNumeric);
  CHECK(std::abs(std::abs(top.vector(1)) - 1.0) < tol::kNumeric);

  Matrix half_ix = Matrix::Zero(2, 2);
  half_ix << 0.5, 0.5, 0.5, 0.5;  // (I + X)/2
  EigenPair plus = extreme_eigenpair(half_ix, Extremum::Max);
  CHECK(std::abs(plus.value - 1.0) < tol::kNumeric);
  CHECK(std::abs(std::abs(plus.vector(0)) - kInvSqrt2) < tol::kEigen);
  CHECK(std::abs(std::abs(plus.vector(1)) - kInvSqrt2) < tol::kEigen);
  CHECK((half_ix * plus.vector - plus.value * plus.vector).norm() < tol::kEigen);

  EigenPair bottom = extreme_eigenpair(Matrix::Identity(3, 3), Extremum::Min);
  CHECK(std::abs(bottom.value - 1.0) < tol::kNumeric);

  SplitMix64 rng(7);
  Matrix m = random_contraction(5, rng);
  EigenPair best = extreme_eigenpair(m, Extremum::Max);
  for (int i = 0; i < 100; ++i) {
    QState v = random_state(5, rng);
    double quad = (v.amp.adjoint() * m * v.amp)(0).real();
    CHECK(best.value + tol::kNumeric >= quad);
  }

  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = Complex(0.0, 1.0);
  skew(1, 0) = Complex(0.0, 1.0);  // not Hermitian
  CHECK_THROWS_AS(extreme_eigenpair(skew, Extremum::Max), std::invalid_argument);
}

TEST_CASE("permute_subsystems relabels amplitudes consistently") {
  SplitMix64 rng(13);
  QState s = random_state({2, 3, 2}, rng);
  QState swapped = permute_subsystems(s, {2, 1, 0});
  // amplitude (a,b,c) of s lands at (c,b,a).
  for (Index a = 0; a < 2; ++a) {
    for (Index b = 0; b < 3; ++b) {
      for (Index c = 0; c < 2; ++c) {
        Index src = a * 6 + b * 2 + c;
        Index dst = c * 6 + b * 2 + a;
        CHECK(std::abs(swapped.amp(dst) - s.amp(src)) < tol::kInvariant);
      }
    }
  }
  QState back = permute_subsystems(swapped, {2, 1, 0});
  CHECK((back.amp - s.amp).norm() < tol::kInvariant);
  CHECK_THROWS_AS(permute_subsystems(s, std::vector<int>{0, 0, 1}), std::invalid_argument);

  Matrix swap01 = swap_subsystems_matrix({2, 2}, 0, 1);
  Vector v = tensor(basis_state("0"), basis_state("1")).amp;
  Vector w = swap01 * v;
  CHECK(std::abs(w(2) - 1.0) < tol::kInvariant);  // |01> -> |10>
}

TEST_CASE("random objects satisfy their structural contracts") {
  SplitMix64 rng(29);
  QState psi = random_state(6, rng);
  CHECK(std::abs(psi.amp.norm() - 1.0) < tol::kInvariant);

  QState prod = random_product_state({2, 2}, rng);
  // Product states have rank-one reductions.
  DensityOp reduced = partial_trace(pure_density(prod), {0});
  EigenPair top = extreme_eigenpair(HermitianOp(reduced.mat, reduced.dims), Extremum::Max);
  CHECK(std::abs(top.value - 1.0) < tol::kEigen);

  DensityOp rho = random_density(4, rng);
  CHECK(std::abs(rho.mat.trace().real() - 1.0) < tol::kInvariant);

  Matrix u = random_unitary(4, rng);
  CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < tol::kNumeric);

  Matrix p = random_projector(5, 2, rng);
  CHECK((p * p - p).cwiseAbs().maxCoeff() < tol::kNumeric);
  CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() < tol::kNumeric);
  CHECK(std::abs(p.trace().real() - 2.0) < tol::kNumeric);

  Matrix m = random_contraction(4, rng);
  EigenPair hi = extreme_eigenpair(m, Extremum::Max);
  EigenPair lo = extreme_eigenpair(m, Extremum::Min);
  CHECK(hi.value <= 1.0 + tol::kNumeric);
  CHECK(lo.value >= -tol::kNumeric);
}

TEST_CASE("projected rank-one operators move by at most twice the state distance") {
  SplitMix64 rng(31);
  for (Index d : {2, 4, 8}) {
    for (int trial = 0; trial < 100; ++trial) {
      QState psi = random_state(d, rng);
      QState dir = random_state(d, rng);
      Vector moved = psi.amp + 0.15 * dir.amp;
      moved.normalize();
      double eps = (psi.amp - moved).norm();
      Index rank = 1 + static_cast<Index>(rng.uniform_below(static_cast<std::uint64_t>(d - 1)));
      Matrix proj = random_projector(d, rank, rng);
      Matrix diff =
          proj * (psi.amp * psi.amp.adjoint() - moved * moved.adjoint()) * proj.adjoint();
      CHECK(trace_norm(diff) <= 2.0 * eps + tol::kEigen);
    }
  }
}

TEST_CASE("deterministic streams reproduce and decorrelate by trial") {
  SplitMix64 a(42);
  SplitMix64 b(42);
  for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());

  SplitMix64 t0 = trial_rng(42, 0);
  SplitMix64 t0_again = trial_rng(42, 0);
  SplitMix64 t1 = trial_rng(42, 1);
  std::uint64_t x = t0.next_u64();
  CHECK(x == t0_again.next_u64());
  CHECK(x != t1.next_u64());

  CHECK_THROWS_AS(SplitMix64(1).uniform_below(0), std::invalid_argument);
}
