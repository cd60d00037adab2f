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

#ifndef QPHLAB_GAME_SOLVER_HPP_
#define QPHLAB_GAME_SOLVER_HPP_

#include <cstdint>
#include <vector>

#include "qphlab/linalg.hpp"
#include "qphlab/verifier.hpp"

namespace qphlab {

// Solvers for quantified games: each proof register is chosen in prefix
// order by a maximizing (Exists) or minimizing (ForAll) player, and the
// value is the resulting acceptance probability of the accept operator.

enum class SolveMode { Certified, Heuristic };

struct GameSolveOptions {
  SolveMode mode = SolveMode::Certified;
  // Bloch-sphere grid for qubit registers in certified mode. The budget is
  // split across gridded levels automatically when a game has several.
  int grid_theta = 71;
  int grid_phi = 142;
  // Heuristic-mode local search effort.
  int refine_sweeps = 40;
  int restarts = 8;
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  // Abort if the solve tree would exceed this many leaf evaluations.
  double max_nodes = 5e7;
};

struct GameValueResult {
  double value = 0.0;
  // Certified results satisfy |value - true value| <= gap.
  double gap = 0.0;
  bool certified = true;
  // One entry per register, in prefix order: the optimizing move found.
  std::vector<QState> strategy;
  // Chosen basis index for classical registers, -1 for quantum ones.
  std::vector<Index> basis_moves;
};

// Contract the first register of `op` against a fixed move, producing the
// conditioned operator on the remaining registers. The basis-index overload
// is an exact submatrix selection (no floating-point arithmetic).
AcceptOperator conditioned_operator(const AcceptOperator& op, const QState& move);
AcceptOperator conditioned_operator(const AcceptOperator& op, Index basis_move);

// Exact solve for games whose registers are all classical. Enumerates every
// assignment; throws if the tree exceeds `max_nodes` leaves. Ties break
// toward the smallest basis index at every level.
GameValueResult classical_game_value(const QuantifiedGame& game, double max_nodes = 5e7);

// Solve for games with classical and/or pure registers. Classical registers
// are enumerated exactly. The innermost quantum register is solved by exact
// eigendecomposition. Outer quantum registers are gridded over the Bloch
// sphere in certified mode (qubit registers only; the Lipschitz slack of
// every gridded level accumulates into `gap`), or optimized by restarted
// local search in heuristic mode (any dimension; gap is NaN).
GameValueResult quantum_game_value(const QuantifiedGame& game,
                                   const GameSolveOptions& options = {});

// Solve for games that may also contain mixed-state registers: each mixed
// register of dimension d is replaced by a purifying pure register of
// dimension d^2 (reference system adjacent to the original), which leaves
// the game value unchanged. Strategy entries for lifted registers live in
// the enlarged space.
GameValueResult mixed_game_value(const QuantifiedGame& game,
                                 const GameSolveOptions& options = {});

// Dispatch: all-classical games go to the exact solver, anything else to
// the mixed-capable solver.
GameValueResult solve_game(const QuantifiedGame& game, const GameSolveOptions& options = {});

}  // namespace qphlab

#endif  // QPHLAB_GAME_SOLVER_HPP_
