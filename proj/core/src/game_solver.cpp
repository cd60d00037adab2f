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

#include "qphlab/game_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qphlab/rng.hpp"

namespace qphlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Raw conditioning helpers: the solver keeps unvalidated matrices in its hot
// loops and only builds checked AcceptOperators at the API boundary.
Matrix condition_on_state(const Matrix& m, Index d0, const Vector& psi) {
  Index rest = m.rows() / d0;
  Matrix out = Matrix::Zero(rest, rest);
  for (Index p = 0; p < d0; ++p) {
    for (Index q = 0; q < d0; ++q) {
      Complex coef = std::conj(psi(p)) * psi(q);
      out.noalias() += coef * m.block(p * rest, q * rest, rest, rest);
    }
  }
  return Complex(0.5, 0.0) * (out + Matrix(out.adjoint()));
}

Matrix condition_on_basis(const Matrix& m, Index d0, Index b) {
  Index rest = m.rows() / d0;
  return m.block(b * rest, b * rest, rest, rest);
}

Vector bloch_state(double theta, double phi) {
  Vector v(2);
  v(0) = Complex(std::cos(0.5 * theta), 0.0);
  v(1) = std::polar(std::sin(0.5 * theta), phi);
  return v;
}

struct GridShape {
  int n_theta = 0;
  int n_phi = 0;
  double slack = 0.0;  // Lipschitz certification slack of one gridded level
};

GridShape grid_for(int n_theta, int n_phi, int gridded_levels) {
  if (n_theta < 2 || n_phi < 2) {
    throw std::invalid_argument("quantum_game_value: grid must be at least 2x2");
  }
  if (gridded_levels > 1) {
    double budget = static_cast<double>(n_theta) * n_phi;
    double per = std::pow(budget, 1.0 / gridded_levels);
    n_theta = std::max(4, static_cast<int>(std::floor(std::sqrt(per / 2.0))));
    n_phi = 2 * n_theta;
  }
  double r = kPi / (2.0 * n_theta) + kPi / n_phi;
  // A state within Bloch angle r of a grid point changes the conditioned
  // value by at most ||psi psi* - phi phi*||_1 <= 2 ||psi - phi|| = 4 sin(r/4).
  return GridShape{n_theta, n_phi, 4.0 * std::sin(0.25 * r)};
}

enum class LevelMethod { ClassicalEnum, QubitGrid, ExactEigen, LocalSearch };

struct LevelPlan {
  LevelMethod method;
  Index dim;
  Quantifier quant;
  GridShape grid;  // QubitGrid only
};

struct Solver {
  std::vector<LevelPlan> plan;
  const GameSolveOptions* opts = nullptr;
  SplitMix64 rng{0};

  struct Sub {
    double value = 0.0;
    std::vector<QState> strategy;
    std::vector<Index> moves;
  };

  static bool better(double cand, double best, Quantifier q) {
    return q == Quantifier::Exists ? cand > best : cand < best;
  }

  Sub solve(const Matrix& m, size_t level) {
    const LevelPlan& lp = plan[level];
    const bool last = (level + 1 == plan.size());
    const Quantifier q = lp.quant;

    if (last && lp.method == LevelMethod::ClassicalEnum) {
      Sub best;
      best.value = q == Quantifier::Exists ? -std::numeric_limits<double>::infinity()
                                           : std::numeric_limits<double>::infinity();
      Index pick = 0;
      for (Index b = 0; b < lp.dim; ++b) {
        double v = m(b, b).real();
        if (better(v, best.value, q)) {
          best.value = v;
          pick = b;
        }
      }
      best.strategy = {basis_state({lp.dim}, pick)};
      best.moves = {pick};
      return best;
    }
    if (last) {
      // Innermost quantum register: exact extreme eigenpair.
      EigenPair p = extreme_eigenpair(
          m, q == Quantifier::Exists ? Extremum::Max : Extremum::Min);
      Sub out;
      out.value = p.value;
      out.strategy = {QState(p.vector / p.vector.norm(), {lp.dim})};
      out.moves = {-1};
      return out;
    }

    Sub best;
    best.value = q == Quantifier::Exists ? -std::numeric_limits<double>::infinity()
                                         : std::numeric_limits<double>::infinity();
    auto consider = [&](const Sub& inner, const QState& move, Index basis_move) {
      if (better(inner.value, best.value, q)) {
        best.value = inner.value;
        best.strategy.assign(1, move);
        best.strategy.insert(best.strategy.end(), inner.strategy.begin(), inner.strategy.end());
        best.moves.assign(1, basis_move);
        best.moves.insert(best.moves.end(), inner.moves.begin(), inner.moves.end());
      }
    };

    switch (lp.method) {
      case LevelMethod::ClassicalEnum: {
        for (Index b = 0; b < lp.dim; ++b) {
          Sub inner = solve(condition_on_basis(m, lp.dim, b), level + 1);
          consider(inner, basis_state({lp.dim}, b), b);
        }
        break;
      }
      case LevelMethod::QubitGrid: {
        const GridShape& g = lp.grid;
        for (int it = 0; it < g.n_theta; ++it) {
          for (int ip = 0; ip < g.n_phi; ++ip) {
            double th = (it + 0.5) * kPi / g.n_theta;
            double ph = 2.0 * kPi * ip / g.n_phi;
            Vector psi = bloch_state(th, ph);
            Sub inner = solve(condition_on_state(m, 2, psi), level + 1);
            consider(inner, QState(psi, {2}), -1);
          }
        }
        break;
      }
      case LevelMethod::LocalSearch: {
        auto eval = [&](const Vector& psi) {
          return solve(condition_on_state(m, lp.dim, psi), level + 1).value;
        };
        Vector cur;
        double cur_val = q == Quantifier::Exists ? -std::numeric_limits<double>::infinity()
                                                 : std::numeric_limits<double>::infinity();
        int restarts = std::max(1, opts->restarts);
        for (int r = 0; r < restarts; ++r) {
          Vector psi = random_state(lp.dim, rng).amp;
          double v = eval(psi);
          if (better(v, cur_val, q)) {
            cur_val = v;
            cur = psi;
          }
        }
        // Derivative-free pattern search on the real/imaginary parts.
        for (double step = 0.3; step > 1e-7; step *= 0.5) {
          for (int sweep = 0; sweep < opts->refine_sweeps; ++sweep) {
            bool moved = false;
            for (Index c = 0; c < lp.dim; ++c) {
              for (int part = 0; part < 2; ++part) {
                for (double sgn : {1.0, -1.0}) {
                  Vector trial = cur;
                  trial(c) += part == 0 ? Complex(sgn * step, 0.0) : Complex(0.0, sgn * step);
                  double nrm = trial.norm();
                  if (nrm < 1e-12) continue;
                  trial /= nrm;
                  double v = eval(trial);
                  if (better(v, cur_val, q) && std::abs(v - cur_val) > 1e-15) {
                    cur_val = v;
                    cur = trial;
                    moved = true;
                  }
                }
              }
            }
            if (!moved) break;
          }
        }
        Sub inner = solve(condition_on_state(m, lp.dim, cur), level + 1);
        consider(inner, QState(cur, {lp.dim}), -1);
        break;
      }
      case LevelMethod::ExactEigen:
        throw std::logic_error("exact eigen level can only be innermost");
    }
    return best;
  }
};

GameValueResult run_solver(const QuantifiedGame& game, const GameSolveOptions& options) {
  const size_t k = game.prefix.size();
  std::vector<Index> dims = game.accept.dims();

  int gridded = 0;
  for (size_t i = 0; i + 1 < k; ++i) {
    if (game.kinds[i] != ProofKind::Classical) ++gridded;
  }
  GridShape grid;
  if (options.mode == SolveMode::Certified && gridded > 0) {
    grid = grid_for(options.grid_theta, options.grid_phi, gridded);
  }

  Solver solver;
  solver.opts = &options;
  solver.rng = SplitMix64(options.seed);
  double nodes = 1.0;
  double gap = 0.0;
  bool certified = true;
  for (size_t i = 0; i < k; ++i) {
    LevelPlan lp;
    lp.dim = dims[i];
    lp.quant = game.prefix[i];
    if (game.kinds[i] == ProofKind::Classical) {
      lp.method = LevelMethod::ClassicalEnum;
      nodes *= static_cast<double>(lp.dim);
    } else if (i + 1 == k) {
      lp.method = LevelMethod::ExactEigen;  // handled by the `last` branch
    } else if (options.mode == SolveMode::Certified) {
      if (lp.dim != 2) {
        throw std::invalid_argument(
            "quantum_game_value: certified mode needs qubit registers before the last "
            "level; use heuristic mode for dimension " + std::to_string(lp.dim));
      }
      lp.method = LevelMethod::QubitGrid;
      lp.grid = grid;
      gap += grid.slack;
      nodes *= static_cast<double>(grid.n_theta) * grid.n_phi;
    } else {
      lp.method = LevelMethod::LocalSearch;
      certified = false;
      nodes *= static_cast<double>(std::max(1, options.restarts)) +
               400.0 * static_cast<double>(lp.dim);
    }
    solver.plan.push_back(lp);
  }
  if (nodes > options.max_nodes) {
    throw std::invalid_argument("game solve tree needs about " + std::to_string(nodes) +
                                " leaves, over the configured cap");
  }

  Solver::Sub sub = solver.solve(game.accept.mat, 0);
  GameValueResult out;
  out.value = sub.value;
  out.gap = certified ? gap : std::numeric_limits<double>::quiet_NaN();
  out.certified = certified;
  out.strategy = std::move(sub.strategy);
  out.basis_moves = std::move(sub.moves);
  return out;
}

}  // namespace

AcceptOperator conditioned_operator(const AcceptOperator& op, const QState& move) {
  if (op.layout.size() < 2) {
    throw std::invalid_argument("conditioned_operator: need at least two registers");
  }
  if (move.dim() != op.layout[0].dim) {
    throw std::invalid_argument("conditioned_operator: move dimension mismatch");
  }
  Matrix m = condition_on_state(op.mat, op.layout[0].dim, move.amp);
  return AcceptOperator(std::move(m),
                        std::vector<ProofRegister>(op.layout.begin() + 1, op.layout.end()));
}

AcceptOperator conditioned_operator(const AcceptOperator& op, Index basis_move) {
  if (op.layout.size() < 2) {
    throw std::invalid_argument("conditioned_operator: need at least two registers");
  }
  if (basis_move < 0 || basis_move >= op.layout[0].dim) {
    throw std::invalid_argument("conditioned_operator: basis move out of range");
  }
  Matrix m = condition_on_basis(op.mat, op.layout[0].dim, basis_move);
  return AcceptOperator(std::move(m),
                        std::vector<ProofRegister>(op.layout.begin() + 1, op.layout.end()));
}

GameValueResult classical_game_value(const QuantifiedGame& game, double max_nodes) {
  for (ProofKind kind : game.kinds) {
    if (kind != ProofKind::Classical) {
      throw std::invalid_argument("classical_game_value: all registers must be classical");
    }
  }
  GameSolveOptions opts;
  opts.max_nodes = max_nodes;
  return run_solver(game, opts);
}

GameValueResult quantum_game_value(const QuantifiedGame& game, const GameSolveOptions& options) {
  for (ProofKind kind : game.kinds) {
    if (kind == ProofKind::Mixed) {
      throw std::invalid_argument(
          "quantum_game_value: mixed registers need mixed_game_value");
    }
  }
  return run_solver(game, options);
}

GameValueResult mixed_game_value(const QuantifiedGame& game, const GameSolveOptions& options) {
  bool any_mixed = false;
  for (ProofKind kind : game.kinds) any_mixed |= (kind == ProofKind::Mixed);
  if (!any_mixed) return quantum_game_value(game, options);

  // Purify: append one reference subsystem per mixed register, permute each
  // reference next to its register, and regroup as a register of dim d^2.
  std::vector<Index> dims = game.accept.dims();
  const size_t k = dims.size();
  std::vector<Index> env_dims;
  std::vector<size_t> env_owner;
  for (size_t i = 0; i < k; ++i) {
    if (game.kinds[i] == ProofKind::Mixed) {
      env_dims.push_back(dims[i]);
      env_owner.push_back(i);
    }
  }
  Index env_total = total_dim(env_dims);
  Matrix lifted = kron(game.accept.mat, Matrix::Identity(env_total, env_total));

  std::vector<Index> all_dims = dims;
  all_dims.insert(all_dims.end(), env_dims.begin(), env_dims.end());
  std::vector<int> order;
  for (size_t i = 0; i < k; ++i) {
    order.push_back(static_cast<int>(i));
    for (size_t e = 0; e < env_owner.size(); ++e) {
      if (env_owner[e] == i) order.push_back(static_cast<int>(k + e));
    }
  }
  Matrix arranged = permute_subsystems(lifted, all_dims, order);

  std::vector<ProofRegister> regs;
  std::vector<ProofKind> kinds;
  for (size_t i = 0; i < k; ++i) {
    bool mixed = game.kinds[i] == ProofKind::Mixed;
    regs.push_back({game.accept.layout[i].name, mixed ? dims[i] * dims[i] : dims[i]});
    kinds.push_back(mixed ? ProofKind::Pure : game.kinds[i]);
  }
  QuantifiedGame pure_game(AcceptOperator(std::move(arranged), std::move(regs)),
                           game.prefix, std::move(kinds));
  return quantum_game_value(pure_game, options);
}

GameValueResult solve_game(const QuantifiedGame& game, const GameSolveOptions& options) {
  bool all_classical = std::all_of(game.kinds.begin(), game.kinds.end(),
                                   [](ProofKind kk) { return kk == ProofKind::Classical; });
  if (all_classical) return classical_game_value(game, options.max_nodes);
  return mixed_game_value(game, options);
}

}  // namespace qphlab
