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

#include "qphlab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qphlab {

namespace {
void check_accept_spectrum(const Matrix& m) {
  double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol::kInvariant) {
    throw std::invalid_argument("AcceptOperator: matrix is not Hermitian (deviation " +
                                std::to_string(dev) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  double hi = es.eigenvalues().maxCoeff();
  if (lo < -tol::kNumeric || hi > 1.0 + tol::kNumeric) {
    throw std::invalid_argument("AcceptOperator: spectrum [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "] escapes [0, 1]");
  }
}
}  // namespace

AcceptOperator::AcceptOperator(Matrix m, std::vector<ProofRegister> regs)
    : mat(std::move(m)), layout(std::move(regs)) {
  if (layout.empty()) {
    throw std::invalid_argument("AcceptOperator: need at least one proof register");
  }
  Index d = 1;
  for (const auto& r : layout) {
    if (r.dim < 1) {
      throw std::invalid_argument("AcceptOperator: register dims must be >= 1");
    }
    if (d > kMaxOperatorDim / r.dim) {
      throw std::invalid_argument("AcceptOperator: dimension exceeds hard cap 2^14 per axis");
    }
    d *= r.dim;
  }
  if (mat.rows() != d || mat.cols() != d) {
    throw std::invalid_argument("AcceptOperator: matrix is " + std::to_string(mat.rows()) +
                                "x" + std::to_string(mat.cols()) + ", layout needs " +
                                std::to_string(d));
  }
  check_accept_spectrum(mat);
}

std::vector<Index> AcceptOperator::dims() const {
  std::vector<Index> d;
  d.reserve(layout.size());
  for (const auto& r : layout) d.push_back(r.dim);
  return d;
}

std::vector<ProofRegister> proof_layout(const std::vector<Index>& dims) {
  std::vector<ProofRegister> regs;
  regs.reserve(dims.size());
  for (size_t k = 0; k < dims.size(); ++k) {
    regs.push_back({"p" + std::to_string(k + 1), dims[k]});
  }
  return regs;
}

AcceptOperator diagonal_accept_operator(const std::vector<double>& probs,
                                        std::vector<ProofRegister> regs) {
  Index d = 1;
  for (const auto& r : regs) d *= r.dim;
  if (static_cast<Index>(probs.size()) != d) {
    throw std::invalid_argument("diagonal_accept_operator: table size mismatch");
  }
  Matrix m = Matrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    double p = probs[static_cast<size_t>(i)];
    if (p < 0.0 || p > 1.0) {
      throw std::invalid_argument("diagonal_accept_operator: probabilities must lie in [0,1]");
    }
    m(i, i) = Complex(p, 0.0);
  }
  return AcceptOperator(std::move(m), std::move(regs));
}

AcceptOperator accept_operator_from_circuit(const Circuit& c) {
  validate_circuit(c);
  if (c.layout.proofs.empty()) {
    throw std::invalid_argument("accept_operator_from_circuit: circuit has no proof registers");
  }
  std::vector<ProofRegister> regs;
  Index joint = 1;
  for (size_t r = 0; r < c.layout.proofs.size(); ++r) {
    Index d = Index(1) << c.layout.proofs[r].size();
    if (joint > kMaxOperatorDim / d) {
      throw std::invalid_argument(
          "accept_operator_from_circuit: proof space exceeds hard cap 2^14");
    }
    joint *= d;
    regs.push_back({"p" + std::to_string(r + 1), d});
  }

  // Column p of W is U applied to basis proof p with ancillas |0>; then
  // M[p][q] = <col_p| (|1><1| on the output wire) |col_q>.
  const Index n = Index(1) << c.num_wires;
  Matrix w(n, joint);
  std::vector<Index> reg_dims;
  for (const auto& r : regs) reg_dims.push_back(r.dim);
  for (Index p = 0; p < joint; ++p) {
    // Split p into per-register indices (first register most significant).
    std::vector<QState> basis;
    Index rem = p;
    std::vector<Index> idx(reg_dims.size());
    for (size_t r = reg_dims.size(); r-- > 0;) {
      idx[r] = rem % reg_dims[r];
      rem /= reg_dims[r];
    }
    for (size_t r = 0; r < reg_dims.size(); ++r) {
      basis.push_back(basis_state({reg_dims[r]}, idx[r]));
    }
    w.col(p) = simulate(c, basis);
  }
  const Index mask = Index(1) << c.layout.output;
  Matrix m = Matrix::Zero(joint, joint);
  for (Index k = 0; k < n; ++k) {
    if (!(k & mask)) continue;
    m.noalias() += w.row(k).adjoint() * w.row(k);
  }
  m = Complex(0.5, 0.0) * (m + Matrix(m.adjoint()));
  return AcceptOperator(std::move(m), std::move(regs));
}

namespace {
QState proof_to_state(const ProofState& p, Index want_dim, size_t position) {
  if (std::holds_alternative<QState>(p)) {
    const QState& s = std::get<QState>(p);
    if (s.dim() != want_dim) {
      throw std::invalid_argument("accept_probability: proof " + std::to_string(position) +
                                  " dimension mismatch");
    }
    return s;
  }
  const std::string& bits = std::get<std::string>(p);
  Index d = Index(1) << bits.size();
  if (d != want_dim) {
    throw std::invalid_argument("accept_probability: bit-string proof " +
                                std::to_string(position) + " length mismatch");
  }
  return basis_state({want_dim}, index_of_bits(bits));
}
}  // namespace

double accept_probability(const AcceptOperator& m, const std::vector<ProofState>& proofs) {
  if (proofs.size() != m.layout.size()) {
    throw std::invalid_argument("accept_probability: expected " +
                                std::to_string(m.layout.size()) + " proofs");
  }
  bool any_mixed = std::any_of(proofs.begin(), proofs.end(), [](const ProofState& p) {
    return std::holds_alternative<DensityOp>(p);
  });
  double value = 0.0;
  if (!any_mixed) {
    QState joint = proof_to_state(proofs[0], m.layout[0].dim, 0);
    for (size_t r = 1; r < proofs.size(); ++r) {
      joint = tensor(joint, proof_to_state(proofs[r], m.layout[r].dim, r));
    }
    value = (joint.amp.adjoint() * m.mat * joint.amp)(0, 0).real();
  } else {
    auto proof_density = [&](size_t r) {
      if (std::holds_alternative<DensityOp>(proofs[r])) {
        const DensityOp& rho = std::get<DensityOp>(proofs[r]);
        if (rho.dim() != m.layout[r].dim) {
          throw std::invalid_argument("accept_probability: proof " + std::to_string(r) +
                                      " dimension mismatch");
        }
        return rho;
      }
      return pure_density(proof_to_state(proofs[r], m.layout[r].dim, r));
    };
    DensityOp joint = proof_density(0);
    for (size_t r = 1; r < proofs.size(); ++r) {
      joint = tensor(joint, proof_density(r));
    }
    value = (m.mat * joint.mat).trace().real();
  }
  return std::clamp(value, 0.0, 1.0);
}

int repetition_accept_count(int copies, double threshold) {
  if (copies < 1) {
    throw std::invalid_argument("repetition_accept_count: copies must be >= 1");
  }
  if (threshold < 0.0 || threshold > 1.0) {
    throw std::invalid_argument("repetition_accept_count: threshold must lie in [0,1]");
  }
  // Nudge below exact products so a count of exactly threshold*copies passes.
  double target = threshold * copies;
  int k = static_cast<int>(std::ceil(target - 1e-12));
  return std::max(k, 0);
}

AcceptOperator parallel_repetition(const AcceptOperator& base, int copies, double threshold) {
  const int k0 = repetition_accept_count(copies, threshold);
  const Index d = base.dim();
  Index joint = 1;
  for (int j = 0; j < copies; ++j) {
    if (joint > kMaxOperatorDim / d) {
      throw std::invalid_argument("parallel_repetition: dimension exceeds hard cap 2^14");
    }
    joint *= d;
  }
  const Matrix reject = Matrix::Identity(d, d) - base.mat;
  Matrix sum = Matrix::Zero(joint, joint);
  // Sum over accept/reject patterns with enough accepting copies.
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t(1) << copies); ++pattern) {
    int accepts = 0;
    for (int j = 0; j < copies; ++j) {
      if ((pattern >> j) & 1) ++accepts;
    }
    if (accepts < k0) continue;
    Matrix term = ((pattern >> (copies - 1)) & 1) ? base.mat : reject;
    for (int j = copies - 2; j >= 0; --j) {
      term = kron(((pattern >> j) & 1) ? base.mat : reject, term);
    }
    sum += term;
  }
  sum = Complex(0.5, 0.0) * (sum + Matrix(sum.adjoint()));
  std::vector<ProofRegister> regs;
  for (int j = 0; j < copies; ++j) {
    for (const auto& r : base.layout) {
      regs.push_back({r.name + "_rep" + std::to_string(j + 1), r.dim});
    }
  }
  return AcceptOperator(std::move(sum), std::move(regs));
}

QuantifiedGame::QuantifiedGame(AcceptOperator op, std::vector<Quantifier> quantifiers,
                               std::vector<ProofKind> proof_kinds)
    : accept(std::move(op)), prefix(std::move(quantifiers)), kinds(std::move(proof_kinds)) {
  if (prefix.size() != accept.layout.size() || kinds.size() != accept.layout.size()) {
    throw std::invalid_argument(
        "QuantifiedGame: prefix and kinds must match the register count");
  }
  for (size_t r = 0; r < kinds.size(); ++r) {
    if (kinds[r] == ProofKind::Classical) {
      Index d = accept.layout[r].dim;
      if ((d & (d - 1)) != 0) {
        throw std::invalid_argument(
            "QuantifiedGame: classical registers need power-of-two dims");
      }
    }
  }
}

}  // namespace qphlab
