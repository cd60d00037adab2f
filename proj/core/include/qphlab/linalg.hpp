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

#ifndef QPHLAB_LINALG_HPP
#define QPHLAB_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "qphlab/rng.hpp"

namespace qphlab {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

namespace tol {
// Structural invariants (normalization, Hermiticity, trace) hold to this.
inline constexpr double kInvariant = 1e-10;
// General numeric comparisons in derived quantities.
inline constexpr double kNumeric = 1e-9;
// Anything passing through an iterative eigensolver.
inline constexpr double kEigen = 1e-8;
}  // namespace tol

// Hard ceiling on the dimension of any constructed operator/state (per axis).
// Dense complex storage above this is a mistake at desk scale, so builders
// throw rather than thrash.
inline constexpr Index kMaxOperatorDim = Index(1) << 14;

// Pure state on a tensor product of subsystems. `dims` lists subsystem
// dimensions in tensor order; the first subsystem is the most significant
// block of the amplitude index (standard Kronecker layout).
struct QState {
  Vector amp;
  std::vector<Index> dims;

  QState(Vector amplitudes, std::vector<Index> subsystem_dims);
  Index dim() const { return amp.size(); }
};

// Density operator (Hermitian, PSD, unit trace) on a tensor product.
struct DensityOp {
  Matrix mat;
  std::vector<Index> dims;

  DensityOp(Matrix m, std::vector<Index> subsystem_dims);
  Index dim() const { return mat.rows(); }
};

// Hermitian operator on a tensor product (no spectral constraint).
struct HermitianOp {
  Matrix mat;
  std::vector<Index> dims;

  HermitianOp(Matrix m, std::vector<Index> subsystem_dims);
  Index dim() const { return mat.rows(); }
};

// ---- Construction helpers ----

// Product of the entries of `dims`; throws if it exceeds kMaxOperatorDim.
Index total_dim(const std::vector<Index>& dims);

// Computational basis state |index> of the given dimensions.
QState basis_state(const std::vector<Index>& dims, Index index);

// Basis state from a bit string over qubit subsystems; the first character is
// the most significant bit ("10" -> index 2).
QState basis_state(const std::string& bits);

Index index_of_bits(const std::string& bits);
std::string bits_of_index(Index index, int num_bits);

// |psi><psi| as a DensityOp.
DensityOp pure_density(const QState& psi);

// ---- Core operations ----

// Kronecker products; subsystem dim lists concatenate.
QState tensor(const QState& a, const QState& b);
DensityOp tensor(const DensityOp& a, const DensityOp& b);
HermitianOp tensor(const HermitianOp& a, const HermitianOp& b);
Matrix kron(const Matrix& a, const Matrix& b);

// Trace out every subsystem not listed in `keep` (0-based positions, any
// order; duplicates rejected). Remaining dims keep their original order.
DensityOp partial_trace(const DensityOp& op, const std::vector<int>& keep);
HermitianOp partial_trace(const HermitianOp& op, const std::vector<int>& keep);

enum class Extremum { Min, Max };

struct EigenPair {
  double value;
  Vector vector;
};

// Extremal eigenpair of a Hermitian matrix. The residual ||Mv - lambda v||
// is at most tol::kEigen for the dimensions this laboratory handles.
EigenPair extreme_eigenpair(const Matrix& m, Extremum which);
EigenPair extreme_eigenpair(const HermitianOp& m, Extremum which);

// Trace distance (1/2)||a - b||_1 between Hermitian operators of equal shape.
double trace_distance(const Matrix& a, const Matrix& b);
double trace_distance(const DensityOp& a, const DensityOp& b);
double trace_distance(const HermitianOp& a, const HermitianOp& b);

// Full trace norm ||a||_1 of a Hermitian matrix.
double trace_norm(const Matrix& a);

// Reorder subsystems. `order[k]` names the source subsystem that lands at
// position k of the result; `order` must be a permutation of 0..K-1.
QState permute_subsystems(const QState& s, const std::vector<int>& order);
Matrix permute_subsystems(const Matrix& m, const std::vector<Index>& dims,
                          const std::vector<int>& order);
HermitianOp permute_subsystems(const HermitianOp& m, const std::vector<int>& order);

// Unitary that swaps subsystems a and b (of equal dimension) in place.
Matrix swap_subsystems_matrix(const std::vector<Index>& dims, int a, int b);

// ---- Random objects (deterministic given the stream) ----

// Haar-random pure state of dimension d.
QState random_state(Index d, SplitMix64& rng);
QState random_state(const std::vector<Index>& dims, SplitMix64& rng);

// Product of independent Haar-random subsystem states.
QState random_product_state(const std::vector<Index>& dims, SplitMix64& rng);

// Random full-rank density operator (normalized Ginibre G G^dagger).
DensityOp random_density(Index d, SplitMix64& rng);

// Haar-random unitary (QR of a Ginibre matrix with phase-fixed R diagonal).
Matrix random_unitary(Index d, SplitMix64& rng);

// Rank-r orthogonal projector with Haar-random range.
Matrix random_projector(Index d, Index rank, SplitMix64& rng);

// Random Hermitian matrix with spectrum drawn uniformly from [0, 1].
Matrix random_contraction(Index d, SplitMix64& rng);

}  // namespace qphlab

#endif  // QPHLAB_LINALG_HPP
