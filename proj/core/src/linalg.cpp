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

#include "qphlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qphlab {

namespace {

void check_dims_match(const std::vector<Index>& dims, Index size, const char* what) {
  if (total_dim(dims) != size) {
    throw std::invalid_argument(std::string(what) + ": subsystem dims do not multiply to size");
  }
}

void check_hermitian(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
  double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol::kInvariant) {
    throw std::invalid_argument(std::string(what) + ": matrix is not Hermitian (deviation " +
                                std::to_string(dev) + ")");
  }
}

// Row/column strides for mixed-dimension tensor indices.
std::vector<Index> strides_of(const std::vector<Index>& dims) {
  std::vector<Index> s(dims.size());
  Index acc = 1;
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    s[static_cast<size_t>(k)] = acc;
    acc *= dims[static_cast<size_t>(k)];
  }
  return s;
}

}  // namespace

Index total_dim(const std::vector<Index>& dims) {
  if (dims.empty()) {
    throw std::invalid_argument("total_dim: empty dimension list");
  }
  Index d = 1;
  for (Index x : dims) {
    if (x < 1) {
      throw std::invalid_argument("total_dim: subsystem dimension must be >= 1");
    }
    if (d > kMaxOperatorDim / x) {
      throw std::invalid_argument("total_dim: dimension exceeds hard cap 2^14 per axis");
    }
    d *= x;
  }
  return d;
}

QState::QState(Vector amplitudes, std::vector<Index> subsystem_dims)
    : amp(std::move(amplitudes)), dims(std::move(subsystem_dims)) {
  check_dims_match(dims, amp.size(), "QState");
  double n = amp.norm();
  if (std::abs(n - 1.0) > tol::kInvariant) {
    throw std::invalid_argument("QState: amplitudes are not unit norm (|1 - ||psi||| = " +
                                std::to_string(std::abs(n - 1.0)) + ")");
  }
}

DensityOp::DensityOp(Matrix m, std::vector<Index> subsystem_dims)
    : mat(std::move(m)), dims(std::move(subsystem_dims)) {
  check_hermitian(mat, "DensityOp");
  check_dims_match(dims, mat.rows(), "DensityOp");
  double tr_dev = std::abs(mat.trace() - Complex(1.0, 0.0));
  if (tr_dev > tol::kInvariant) {
    throw std::invalid_argument("DensityOp: trace differs from 1 by " + std::to_string(tr_dev));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol::kInvariant) {
    throw std::invalid_argument("DensityOp: negative eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()));
  }
}

HermitianOp::HermitianOp(Matrix m, std::vector<Index> subsystem_dims)
    : mat(std::move(m)), dims(std::move(subsystem_dims)) {
  check_hermitian(mat, "HermitianOp");
  check_dims_match(dims, mat.rows(), "HermitianOp");
}

QState basis_state(const std::vector<Index>& dims, Index index) {
  Index d = total_dim(dims);
  if (index < 0 || index >= d) {
    throw std::out_of_range("basis_state: index out of range");
  }
  Vector v = Vector::Zero(d);
  v(index) = Complex(1.0, 0.0);
  return QState(std::move(v), dims);
}

Index index_of_bits(const std::string& bits) {
  if (bits.empty()) {
    throw std::invalid_argument("index_of_bits: empty bit string");
  }
  Index idx = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("index_of_bits: bit string must contain only 0/1");
    }
    idx = idx * 2 + (c == '1' ? 1 : 0);
  }
  return idx;
}

std::string bits_of_index(Index index, int num_bits) {
  if (num_bits <= 0 || index < 0 || index >= (Index(1) << num_bits)) {
    throw std::out_of_range("bits_of_index: index does not fit in num_bits");
  }
  std::string s(static_cast<size_t>(num_bits), '0');
  for (int k = 0; k < num_bits; ++k) {
    if ((index >> (num_bits - 1 - k)) & 1) {
      s[static_cast<size_t>(k)] = '1';
    }
  }
  return s;
}

QState basis_state(const std::string& bits) {
  std::vector<Index> dims(bits.size(), 2);
  return basis_state(dims, index_of_bits(bits));
}

DensityOp pure_density(const QState& psi) {
  Matrix m = psi.amp * psi.amp.adjoint();
  return DensityOp(std::move(m), psi.dims);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {
std::vector<Index> concat_dims(const std::vector<Index>& a, const std::vector<Index>& b) {
  std::vector<Index> d = a;
  d.insert(d.end(), b.begin(), b.end());
  (void)total_dim(d);  // enforce the cap before allocating
  return d;
}
}  // namespace

QState tensor(const QState& a, const QState& b) {
  std::vector<Index> d = concat_dims(a.dims, b.dims);
  Vector v(a.dim() * b.dim());
  for (Index i = 0; i < a.dim(); ++i) {
    v.segment(i * b.dim(), b.dim()) = a.amp(i) * b.amp;
  }
  return QState(std::move(v), std::move(d));
}

DensityOp tensor(const DensityOp& a, const DensityOp& b) {
  return DensityOp(kron(a.mat, b.mat), concat_dims(a.dims, b.dims));
}

HermitianOp tensor(const HermitianOp& a, const HermitianOp& b) {
  return HermitianOp(kron(a.mat, b.mat), concat_dims(a.dims, b.dims));
}

namespace {

// Shared partial-trace kernel over raw matrices.
Matrix partial_trace_impl(const Matrix& m, const std::vector<Index>& dims,
                          const std::vector<int>& keep, std::vector<Index>* out_dims) {
  const int K = static_cast<int>(dims.size());
  std::vector<int> keep_sorted = keep;
  std::sort(keep_sorted.begin(), keep_sorted.end());
  if (std::adjacent_find(keep_sorted.begin(), keep_sorted.end()) != keep_sorted.end()) {
    throw std::invalid_argument("partial_trace: duplicate subsystem in keep list");
  }
  for (int k : keep_sorted) {
    if (k < 0 || k >= K) {
      throw std::out_of_range("partial_trace: keep index out of range");
    }
  }
  if (keep_sorted.empty()) {
    throw std::invalid_argument("partial_trace: keep list must not be empty");
  }

  std::vector<int> traced;
  for (int k = 0; k < K; ++k) {
    if (!std::binary_search(keep_sorted.begin(), keep_sorted.end(), k)) {
      traced.push_back(k);
    }
  }

  std::vector<Index> strides = strides_of(dims);
  Index keep_dim = 1, traced_dim = 1;
  for (int k : keep_sorted) keep_dim *= dims[static_cast<size_t>(k)];
  for (int k : traced) traced_dim *= dims[static_cast<size_t>(k)];

  // Offset of each composite keep-index / traced-index in the full space.
  auto offsets = [&](const std::vector<int>& subs, Index count) {
    std::vector<Index> off(static_cast<size_t>(count), 0);
    for (Index composite = 0; composite < count; ++composite) {
      Index rem = composite, o = 0;
      for (int s = static_cast<int>(subs.size()) - 1; s >= 0; --s) {
        Index d = dims[static_cast<size_t>(subs[static_cast<size_t>(s)])];
        o += (rem % d) * strides[static_cast<size_t>(subs[static_cast<size_t>(s)])];
        rem /= d;
      }
      off[static_cast<size_t>(composite)] = o;
    }
    return off;
  };
  std::vector<Index> keep_off = offsets(keep_sorted, keep_dim);
  std::vector<Index> traced_off = offsets(traced, traced_dim);

  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  for (Index i = 0; i < keep_dim; ++i) {
    for (Index j = 0; j < keep_dim; ++j) {
      Complex acc(0.0, 0.0);
      for (Index t = 0; t < traced_dim; ++t) {
        acc += m(keep_off[static_cast<size_t>(i)] + traced_off[static_cast<size_t>(t)],
                 keep_off[static_cast<size_t>(j)] + traced_off[static_cast<size_t>(t)]);
      }
      out(i, j) = acc;
    }
  }
  if (out_dims) {
    out_dims->clear();
    for (int k : keep_sorted) out_dims->push_back(dims[static_cast<size_t>(k)]);
  }
  return out;
}

}  // namespace

DensityOp partial_trace(const DensityOp& op, const std::vector<int>& keep) {
  std::vector<Index> d;
  Matrix m = partial_trace_impl(op.mat, op.dims, keep, &d);
  return DensityOp(std::move(m), std::move(d));
}

HermitianOp partial_trace(const HermitianOp& op, const std::vector<int>& keep) {
  std::vector<Index> d;
  Matrix m = partial_trace_impl(op.mat, op.dims, keep, &d);
  return HermitianOp(std::move(m), std::move(d));
}

EigenPair extreme_eigenpair(const Matrix& m, Extremum which) {
  check_hermitian(m, "extreme_eigenpair");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("extreme_eigenpair: eigensolver failed to converge");
  }
  Index pos = (which == Extremum::Min) ? 0 : m.rows() - 1;
  return EigenPair{es.eigenvalues()(pos), es.eigenvectors().col(pos)};
}

EigenPair extreme_eigenpair(const HermitianOp& m, Extremum which) {
  return extreme_eigenpair(m.mat, which);
}

double trace_norm(const Matrix& a) {
  check_hermitian(a, "trace_norm");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("trace_distance: shape mismatch");
  }
  return 0.5 * trace_norm(a - b);
}

double trace_distance(const DensityOp& a, const DensityOp& b) {
  return trace_distance(a.mat, b.mat);
}

double trace_distance(const HermitianOp& a, const HermitianOp& b) {
  return trace_distance(a.mat, b.mat);
}

namespace {
std::vector<int> check_permutation(const std::vector<int>& order, size_t K, const char* what) {
  if (order.size() != K) {
    throw std::invalid_argument(std::string(what) + ": order length must match subsystem count");
  }
  std::vector<int> seen(K, 0);
  for (int o : order) {
    if (o < 0 || static_cast<size_t>(o) >= K || seen[static_cast<size_t>(o)]++) {
      throw std::invalid_argument(std::string(what) + ": order is not a permutation");
    }
  }
  return order;
}

// Maps each full-space index of the permuted layout to the source index.
std::vector<Index> permutation_index_map(const std::vector<Index>& dims,
                                         const std::vector<int>& order) {
  std::vector<Index> src_strides = strides_of(dims);
  std::vector<Index> new_dims(dims.size());
  for (size_t k = 0; k < dims.size(); ++k) {
    new_dims[k] = dims[static_cast<size_t>(order[k])];
  }
  Index d = 1;
  for (Index x : new_dims) d *= x;
  std::vector<Index> map(static_cast<size_t>(d));
  for (Index idx = 0; idx < d; ++idx) {
    Index rem = idx, src = 0;
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
      Index dk = new_dims[static_cast<size_t>(k)];
      src += (rem % dk) * src_strides[static_cast<size_t>(order[static_cast<size_t>(k)])];
      rem /= dk;
    }
    map[static_cast<size_t>(idx)] = src;
  }
  return map;
}
}  // namespace

QState permute_subsystems(const QState& s, const std::vector<int>& order) {
  check_permutation(order, s.dims.size(), "permute_subsystems");
  std::vector<Index> map = permutation_index_map(s.dims, order);
  Vector v(s.dim());
  for (Index i = 0; i < s.dim(); ++i) {
    v(i) = s.amp(map[static_cast<size_t>(i)]);
  }
  std::vector<Index> new_dims(s.dims.size());
  for (size_t k = 0; k < s.dims.size(); ++k) {
    new_dims[k] = s.dims[static_cast<size_t>(order[k])];
  }
  return QState(std::move(v), std::move(new_dims));
}

Matrix permute_subsystems(const Matrix& m, const std::vector<Index>& dims,
                          const std::vector<int>& order) {
  check_permutation(order, dims.size(), "permute_subsystems");
  if (m.rows() != m.cols() || m.rows() != total_dim(dims)) {
    throw std::invalid_argument("permute_subsystems: matrix shape does not match dims");
  }
  std::vector<Index> map = permutation_index_map(dims, order);
  Matrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      out(i, j) = m(map[static_cast<size_t>(i)], map[static_cast<size_t>(j)]);
    }
  }
  return out;
}

HermitianOp permute_subsystems(const HermitianOp& m, const std::vector<int>& order) {
  Matrix out = permute_subsystems(m.mat, m.dims, order);
  std::vector<Index> new_dims(m.dims.size());
  for (size_t k = 0; k < m.dims.size(); ++k) {
    new_dims[k] = m.dims[static_cast<size_t>(order[k])];
  }
  return HermitianOp(std::move(out), std::move(new_dims));
}

Matrix swap_subsystems_matrix(const std::vector<Index>& dims, int a, int b) {
  const int K = static_cast<int>(dims.size());
  if (a < 0 || b < 0 || a >= K || b >= K || a == b) {
    throw std::invalid_argument("swap_subsystems_matrix: bad subsystem pair");
  }
  if (dims[static_cast<size_t>(a)] != dims[static_cast<size_t>(b)]) {
    throw std::invalid_argument("swap_subsystems_matrix: swapped subsystems must have equal dims");
  }
  std::vector<int> order(dims.size());
  std::iota(order.begin(), order.end(), 0);
  std::swap(order[static_cast<size_t>(a)], order[static_cast<size_t>(b)]);
  std::vector<Index> map = permutation_index_map(dims, order);
  Index d = total_dim(dims);
  Matrix out = Matrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    out(i, map[static_cast<size_t>(i)]) = Complex(1.0, 0.0);
  }
  return out;
}

QState random_state(Index d, SplitMix64& rng) {
  if (d < 1 || d > kMaxOperatorDim) {
    throw std::invalid_argument("random_state: bad dimension");
  }
  Vector v(d);
  for (Index i = 0; i < d; ++i) {
    v(i) = Complex(rng.gaussian(), rng.gaussian());
  }
  v /= v.norm();
  return QState(std::move(v), {d});
}

QState random_state(const std::vector<Index>& dims, SplitMix64& rng) {
  QState s = random_state(total_dim(dims), rng);
  return QState(std::move(s.amp), dims);
}

QState random_product_state(const std::vector<Index>& dims, SplitMix64& rng) {
  QState acc = random_state(dims.at(0), rng);
  for (size_t k = 1; k < dims.size(); ++k) {
    acc = tensor(acc, random_state(dims[k], rng));
  }
  return acc;
}

DensityOp random_density(Index d, SplitMix64& rng) {
  Matrix g(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    }
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  // Exact re-symmetrization keeps the constructor's Hermiticity check honest.
  rho = Complex(0.5, 0.0) * (rho + Matrix(rho.adjoint()));
  return DensityOp(std::move(rho), {d});
}

Matrix random_unitary(Index d, SplitMix64& rng) {
  Matrix g(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (Index k = 0; k < d; ++k) {
    Complex rk = r(k, k);
    double a = std::abs(rk);
    q.col(k) *= (a > 0.0) ? rk / a : Complex(1.0, 0.0);
  }
  return q;
}

Matrix random_projector(Index d, Index rank, SplitMix64& rng) {
  if (rank < 1 || rank > d) {
    throw std::invalid_argument("random_projector: rank out of range");
  }
  Matrix u = random_unitary(d, rng);
  Matrix v = u.leftCols(rank);
  Matrix p = v * v.adjoint();
  return Complex(0.5, 0.0) * (p + Matrix(p.adjoint()));
}

Matrix random_contraction(Index d, SplitMix64& rng) {
  Matrix u = random_unitary(d, rng);
  Vector diag(d);
  for (Index i = 0; i < d; ++i) {
    diag(i) = Complex(rng.uniform(), 0.0);
  }
  Matrix m = u * diag.asDiagonal() * u.adjoint();
  return Complex(0.5, 0.0) * (m + Matrix(m.adjoint()));
}

}  // namespace qphlab
