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

#ifndef QPHLAB_PRODUCT_TESTS_HPP
#define QPHLAB_PRODUCT_TESTS_HPP

#include <vector>

#include "qphlab/verifier.hpp"

namespace qphlab {

// Shape of an asymmetric-product-test instance. Register A holds `n`
// subsystems with the given dims (joint dimension D); register B holds
// `copies` purported copies of A's joint state; register C is untested
// side information of dimension extra_dim (1 = absent).
struct AptLayout {
  std::vector<Index> subsystem_dims;
  int copies = 1;
  Index extra_dim = 1;

  int n() const { return static_cast<int>(subsystem_dims.size()); }
  Index subsystem_joint_dim() const;
  Index bc_dim() const;
};

// SWAP test acceptance operator (I + SWAP)/2 on two d-dimensional registers;
// acceptance on |psi> (x) |phi> is 1/2 + 1/2 |<psi|phi>|^2.
AcceptOperator swap_test_operator(Index d);

// Asymmetric product test: pick subsystem i of A and copy j in B uniformly,
// SWAP-test A_i against B's (j,i) slot, ignore C. The operator averages
// (I + SWAP(A_i, B_ji))/2 (x) I_C over i, j. Registers: A_1..A_n, then BC.
AcceptOperator apt_operator(const AptLayout& layout);

enum class SearchMode { Certified, Heuristic };

struct ProductOverlapOptions {
  SearchMode mode = SearchMode::Certified;
  // Bloch-sphere grid: grid_theta latitudes x grid_phi longitudes per gridded
  // subsystem. When two or more spheres must be gridded jointly, the
  // per-sphere resolution is reduced so the total stays near one sphere's
  // budget; the certification gap reports the coarsening honestly.
  int grid_theta = 71;
  int grid_phi = 142;
  int refine_sweeps = 40;
  int restarts = 12;
  std::uint64_t seed = 0x5deece66dull;
};

struct ProductOverlapResult {
  double overlap;    // best found max over product states of the m-copy overlap
  double epsilon;    // 1 - overlap
  QState witness;    // product state achieving `overlap` (dims = subsystem dims)
  double gap;        // certified: true max <= overlap + gap; heuristic: NaN
  bool certified;
  int restarts_used;
};

// Largest overlap <phi| (|psi><psi|^(x)m (x) I_C) |phi> over product states
// psi of A's shape. Exact (gap 0) for n = 1, m = 1 via the top eigenvalue of
// B's reduced operator. Certified mode otherwise requires qubit subsystems
// and at most one of {n > 1, m > 1}: the gridded spheres carry a Lipschitz
// certificate, the innermost subsystem is solved exactly when m = 1.
// Heuristic mode (restarted ascent, no certificate) covers everything else.
ProductOverlapResult best_product_overlap(const QState& phi, const AptLayout& layout,
                                          const ProductOverlapOptions& options = {});

// Soundness ceiling on APT acceptance implied by a product-overlap search:
// 1 - (epsilon_found - gap) / (2 m n). Any product-state prover bundled with
// side information phi must accept with at most this probability.
double apt_acceptance_bound(const ProductOverlapResult& r, const AptLayout& layout);

}  // namespace qphlab

#endif  // QPHLAB_PRODUCT_TESTS_HPP
