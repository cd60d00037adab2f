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

#include "qphlab/transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace qphlab {

namespace {

void check_alternating_forall_prefix(const QuantifiedGame& game, const char* who) {
  const size_t k = game.prefix.size();
  if (k < 2 || k % 2 != 0) {
    throw std::invalid_argument(std::string(who) + ": need an even number of registers >= 2");
  }
  for (size_t i = 0; i < k; ++i) {
    Quantifier expect = (i % 2 == 0) ? Quantifier::ForAll : Quantifier::Exists;
    if (game.prefix[i] != expect) {
      throw std::invalid_argument(std::string(who) +
                                  ": prefix must alternate starting with a universal register");
    }
  }
}

Index checked_power(Index base, int exp, const char* who) {
  Index out = 1;
  for (int j = 0; j < exp; ++j) {
    if (out > kMaxOperatorDim / base) {
      throw std::invalid_argument(std::string(who) + ": dimension exceeds hard cap");
    }
    out *= base;
  }
  return out;
}

}  // namespace

AmplifiedGameSpec::AmplifiedGameSpec(QuantifiedGame base_game, double completeness,
                                     double soundness, int copy_count)
    : base(std::move(base_game)), c(completeness), s(soundness), copies(copy_count) {
  if (!(0.0 <= s && s < c && c <= 1.0)) {
    throw std::invalid_argument("AmplifiedGameSpec: need 0 <= s < c <= 1");
  }
  if (copies < 1) throw std::invalid_argument("AmplifiedGameSpec: need copies >= 1");
  check_alternating_forall_prefix(base, "AmplifiedGameSpec");
  for (ProofKind kind : base.kinds) {
    if (kind != ProofKind::Pure) {
      throw std::invalid_argument("AmplifiedGameSpec: base proofs must be pure");
    }
  }
}

QuantifiedGame one_sided_amplify(const AmplifiedGameSpec& spec) {
  const std::vector<Index> dims = spec.base.accept.dims();
  const int i = static_cast<int>(dims.size());
  const int n = i - 1;
  const int m = spec.copies;

  std::vector<Index> a_dims(dims.begin(), dims.end() - 1);
  Index d_a = total_dim(a_dims);
  Index d_last = dims.back();
  Index c_dim = checked_power(d_last, m, "one_sided_amplify");
  Index b_dim = checked_power(d_a, m, "one_sided_amplify");
  if (b_dim > kMaxOperatorDim / c_dim || d_a > kMaxOperatorDim / (b_dim * c_dim)) {
    throw std::invalid_argument("one_sided_amplify: dimension exceeds hard cap");
  }
  Index bc_dim = b_dim * c_dim;

  AptLayout apt_layout{a_dims, m, c_dim};
  Matrix m_apt = apt_operator(apt_layout).mat;

  // Parallel repetition produces copy-major registers (bundle 1, copy 1,
  // bundle 2, copy 2, ...); permute to all bundles first, then all copies,
  // matching the product test's register order.
  double threshold = 0.5 * (spec.c + spec.s);
  Matrix m_rep = parallel_repetition(spec.base.accept, m, threshold).mat;
  std::vector<Index> rep_dims;
  for (int j = 0; j < m; ++j) {
    for (Index d : dims) rep_dims.push_back(d);
  }
  std::vector<int> order;
  for (int j = 0; j < m; ++j) {
    for (int r = 0; r < n; ++r) order.push_back(j * i + r);
  }
  for (int j = 0; j < m; ++j) order.push_back(j * i + n);
  Matrix m_rep_arranged = permute_subsystems(m_rep, rep_dims, order);

  Matrix full = 0.5 * m_apt +
                0.5 * kron(Matrix::Identity(d_a, d_a), m_rep_arranged);
  full = Complex(0.5, 0.0) * (full + Matrix(full.adjoint()));

  std::vector<ProofRegister> regs;
  for (int r = 0; r < n; ++r) {
    regs.push_back({"p" + std::to_string(r + 1), dims[static_cast<size_t>(r)]});
  }
  regs.push_back({"bc", bc_dim});
  return QuantifiedGame(AcceptOperator(std::move(full), std::move(regs)), spec.base.prefix,
                        std::vector<ProofKind>(static_cast<size_t>(i), ProofKind::Pure));
}

std::vector<QState> honest_amplified_response(const AmplifiedGameSpec& spec,
                                              const std::vector<QState>& base_proofs) {
  const std::vector<Index> dims = spec.base.accept.dims();
  const size_t i = dims.size();
  if (base_proofs.size() != i) {
    throw std::invalid_argument("honest_amplified_response: need one state per base register");
  }
  for (size_t r = 0; r < i; ++r) {
    if (base_proofs[r].dim() != dims[r]) {
      throw std::invalid_argument("honest_amplified_response: proof dimension mismatch");
    }
  }
  QState bundle = base_proofs[0];
  for (size_t r = 1; r + 1 < i; ++r) bundle = tensor(bundle, base_proofs[r]);

  QState bc = bundle;
  for (int j = 1; j < spec.copies; ++j) bc = tensor(bc, bundle);
  for (int j = 0; j < spec.copies; ++j) bc = tensor(bc, base_proofs[i - 1]);

  std::vector<QState> out(base_proofs.begin(), base_proofs.end() - 1);
  out.push_back(QState(bc.amp, {bc.dim()}));
  return out;
}

double amplified_yes_bound(double c, double s, int copies) {
  return 0.5 + 0.5 * (1.0 - std::exp(-(c - s) * (c - s) * copies / 2.0));
}

double amplified_no_bound(double s, int copies, int subsystems) {
  return 1.0 - 1.0 / (4.0 * copies * subsystems) + s;
}

SimulationGameSpec::SimulationGameSpec(QuantifiedGame base_game, int copy_count)
    : base(std::move(base_game)), copies(copy_count) {
  if (copies < 1) throw std::invalid_argument("SimulationGameSpec: need copies >= 1");
  check_alternating_forall_prefix(base, "SimulationGameSpec");
  for (ProofKind kind : base.kinds) {
    if (kind != ProofKind::Classical) {
      throw std::invalid_argument("SimulationGameSpec: base proofs must be classical");
    }
  }
  for (Index j = 0; j < base.accept.dim(); ++j) {
    for (Index l = 0; l < base.accept.dim(); ++l) {
      if (j != l && std::abs(base.accept.mat(j, l)) > 1e-12) {
        throw std::invalid_argument(
            "SimulationGameSpec: base acceptance operator must be diagonal");
      }
    }
  }
}

std::vector<int> universal_indices(int k) {
  if (k < 2 || k % 2 != 0) {
    throw std::invalid_argument("universal_indices: k must be even and >= 2");
  }
  std::vector<int> u;
  for (int j = 1; j <= k - 1; j += 2) u.push_back(j);
  return u;
}

namespace {

// Shared geometry of the simulation verifier's joint space.
struct SimShape {
  std::vector<Index> proof_dims;  // d_1..d_{k-1}
  Index d_last = 1;               // d_k
  Index d_bundle = 1;             // d_1 * ... * d_{k-1}
  Index bc_dim = 1;               // d_bundle^m * d_k
  Index total = 1;
};

SimShape shape_of(const SimulationGameSpec& spec) {
  std::vector<Index> dims = spec.base.accept.dims();
  SimShape sh;
  sh.proof_dims.assign(dims.begin(), dims.end() - 1);
  sh.d_last = dims.back();
  sh.d_bundle = total_dim(sh.proof_dims);
  Index b = checked_power(sh.d_bundle, spec.copies, "qcph_to_qphpure_transform");
  if (b > kMaxOperatorDim / sh.d_last) {
    throw std::invalid_argument("qcph_to_qphpure_transform: dimension exceeds hard cap");
  }
  sh.bc_dim = b * sh.d_last;
  if (sh.d_bundle > kMaxOperatorDim / sh.bc_dim) {
    throw std::invalid_argument("qcph_to_qphpure_transform: dimension exceeds hard cap");
  }
  sh.total = sh.d_bundle * sh.bc_dim;
  return sh;
}

std::vector<ProofRegister> sim_registers(const SimShape& sh) {
  std::vector<ProofRegister> regs;
  for (size_t r = 0; r < sh.proof_dims.size(); ++r) {
    regs.push_back({"p" + std::to_string(r + 1), sh.proof_dims[r]});
  }
  regs.push_back({"bc", sh.bc_dim});
  return regs;
}

// Diagonal of the measurement branch over the joint computational basis.
Vector measurement_diagonal(const SimulationGameSpec& spec, const SimShape& sh) {
  const int k = spec.num_proofs();
  const int m = spec.copies;
  Vector diag(sh.total);
  std::vector<Index> x(static_cast<size_t>(k - 1));
  std::vector<Index> copy(static_cast<size_t>(m) * static_cast<size_t>(k - 1));
  for (Index idx = 0; idx < sh.total; ++idx) {
    // Subsystem order: x_1..x_{k-1}, bundles 1..m (each x_1..x_{k-1}), x_B;
    // the first subsystem is the most significant block of the index.
    Index rem = idx;
    Index x_b = rem % sh.d_last;
    rem /= sh.d_last;
    for (int j = m - 1; j >= 0; --j) {
      for (int r = k - 2; r >= 0; --r) {
        Index d = sh.proof_dims[static_cast<size_t>(r)];
        copy[static_cast<size_t>(j) * static_cast<size_t>(k - 1) + static_cast<size_t>(r)] =
            rem % d;
        rem /= d;
      }
    }
    for (int r = k - 2; r >= 0; --r) {
      x[static_cast<size_t>(r)] = rem % sh.proof_dims[static_cast<size_t>(r)];
      rem /= sh.proof_dims[static_cast<size_t>(r)];
    }

    int mismatch = 0;  // minimal mismatching 1-based index, 0 if none
    for (int r = 0; r < k - 1 && mismatch == 0; ++r) {
      for (int j = 0; j < m; ++j) {
        if (copy[static_cast<size_t>(j) * static_cast<size_t>(k - 1) +
                 static_cast<size_t>(r)] != x[static_cast<size_t>(r)]) {
          mismatch = r + 1;
          break;
        }
      }
    }
    if (mismatch != 0) {
      diag(idx) = (mismatch % 2 == 1) ? 1.0 : 0.0;  // accept on universal positions
    } else {
      Index base_idx = 0;
      for (int r = 0; r < k - 1; ++r) {
        base_idx = base_idx * sh.proof_dims[static_cast<size_t>(r)] +
                   x[static_cast<size_t>(r)];
      }
      base_idx = base_idx * sh.d_last + x_b;
      diag(idx) = spec.base.accept.mat(base_idx, base_idx).real();
    }
  }
  return diag;
}

}  // namespace

AcceptOperator simulation_measure_operator(const SimulationGameSpec& spec) {
  SimShape sh = shape_of(spec);
  Vector diag = measurement_diagonal(spec, sh);
  Matrix m = Matrix::Zero(sh.total, sh.total);
  m.diagonal() = diag;
  return AcceptOperator(std::move(m), sim_registers(sh));
}

QuantifiedGame qcph_to_qphpure_transform(const SimulationGameSpec& spec) {
  SimShape sh = shape_of(spec);
  AptLayout apt_layout{sh.proof_dims, spec.copies, sh.d_last};
  Matrix full = 0.5 * apt_operator(apt_layout).mat;
  full.diagonal() += 0.5 * measurement_diagonal(spec, sh);
  full = Complex(0.5, 0.0) * (full + Matrix(full.adjoint()));
  const size_t k = static_cast<size_t>(spec.num_proofs());
  return QuantifiedGame(AcceptOperator(std::move(full), sim_registers(sh)),
                        spec.base.prefix, std::vector<ProofKind>(k, ProofKind::Pure));
}

std::vector<QState> honest_simulation_response(const SimulationGameSpec& spec,
                                               const std::vector<std::string>& strings) {
  const size_t k = static_cast<size_t>(spec.num_proofs());
  if (strings.size() != k) {
    throw std::invalid_argument("honest_simulation_response: need one string per register");
  }
  SimShape sh = shape_of(spec);
  std::vector<QState> out;
  std::string bundle;
  for (size_t r = 0; r + 1 < k; ++r) {
    Index d = sh.proof_dims[r];
    Index idx = index_of_bits(strings[r]);
    if ((Index(1) << strings[r].size()) != d || idx >= d) {
      throw std::invalid_argument("honest_simulation_response: string/register size mismatch");
    }
    out.push_back(basis_state({d}, idx));
    bundle += strings[r];
  }
  std::string bc_bits;
  for (int j = 0; j < spec.copies; ++j) bc_bits += bundle;
  bc_bits += strings[k - 1];
  if ((Index(1) << bc_bits.size()) != sh.bc_dim) {
    throw std::invalid_argument("honest_simulation_response: last string size mismatch");
  }
  out.push_back(basis_state({sh.bc_dim}, index_of_bits(bc_bits)));
  return out;
}

double simulation_yes_bound(double c, int copies) {
  return 0.5 + 0.5 * (c - std::pow(2.0, -copies));
}

double simulation_no_bound(double s, int copies, int subsystems) {
  return 1.0 - 1.0 / (4.0 * copies * subsystems) + s;
}

}  // namespace qphlab
