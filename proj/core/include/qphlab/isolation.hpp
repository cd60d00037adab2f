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

#ifndef QPHLAB_ISOLATION_HPP_
#define QPHLAB_ISOLATION_HPP_

#include <string>
#include <vector>

#include "qphlab/circuit.hpp"
#include "qphlab/rng.hpp"

namespace qphlab {

// Threshold decision instances over a circuit verifier and witness hashing
// that isolates a unique accepting witness.

// Exact rational threshold; magnitudes are kept small (unary-style sizes).
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  bool operator==(const Rational&) const = default;
};

// Decision instance: does some witness d make the verifier accept with
// probability >= p2 (YES), or do all witnesses accept with probability
// <= p1 (NO)? The verifier circuit takes the input register (absent when
// x is empty) and the witness register as its proof registers, in order.
struct TqcmappInstance {
  Circuit verifier;
  std::string x;
  Rational p1;
  Rational p2;
  int ell = 1;  // witness length in bits

  TqcmappInstance(Circuit u, std::string input, Rational lo, Rational hi, int witness_len);
};

// One affine GF(2) condition on the witness bits: <coeffs, d> = rhs (mod 2).
// Coefficient i multiplies witness bit i (bit 0 = leftmost/most significant
// character of the witness string).
struct AffineConstraint {
  std::vector<int> coeffs;
  int rhs = 0;

  bool operator==(const AffineConstraint&) const = default;
};

// Same decision problem restricted to witnesses satisfying every constraint;
// YES additionally requires the accepting witness to be unique.
struct UqcmappInstance {
  TqcmappInstance base;
  std::vector<AffineConstraint> constraints;
};

// Whether witness index d (bit 0 of the string = most significant index bit)
// satisfies all constraints.
bool satisfies_constraints(const std::vector<AffineConstraint>& constraints, Index witness,
                           int ell);

// Exact acceptance probability of the verifier on (x, d) for every witness
// index d in 0..2^ell-1, by statevector simulation.
std::vector<double> witness_acceptances(const TqcmappInstance& inst);

// Witnesses with acceptance >= p2.
std::vector<Index> witness_set(const TqcmappInstance& inst);

enum class InstanceStatus { Yes, No, Invalid };

// Promise status from exact acceptances. For the unique-witness problem,
// YES needs exactly one witness above p2 (and none strictly between the
// thresholds); NO needs everything at or below p1.
InstanceStatus tqcmapp_status(const TqcmappInstance& inst);
InstanceStatus uqcmapp_status(const UqcmappInstance& inst);

// Same as uqcmapp_status but reusing precomputed witness acceptances (they
// depend only on the base instance, not the constraints).
InstanceStatus uqcmapp_status_from(const std::vector<double>& acceptances,
                                   const UqcmappInstance& inst);

// Witness isolation: draw k uniform in {1..ell+1} and a uniform affine map
// h : {0,1}^ell -> {0,1}^k, and keep only witnesses with h(d) = 0. A NO
// instance always maps to a NO instance; a YES instance maps to a
// unique-witness YES instance with probability at least 1/(8(ell+1))
// >= 1/(32 ell^2).
UqcmappInstance vv_isolate(const TqcmappInstance& inst, SplitMix64& rng);

// ---- JSON (embeds the circuit format) ----
//
// {"circuit": {...}, "x": "...", "p1": [num, den], "p2": [num, den],
//  "ell": n, "constraints": [[c_1, ..., c_ell, rhs], ...]}
std::string instance_to_json(const UqcmappInstance& inst);
UqcmappInstance instance_from_json(const std::string& text);

}  // namespace qphlab

#endif  // QPHLAB_ISOLATION_HPP_
