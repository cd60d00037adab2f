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

// Microbenchmarks for the hot paths: dense eigensolves, circuit compilation,
// the certified product-overlap grid, game-tree conditioning, hash-isolation
// trials, and one-query parity finding.

#include <benchmark/benchmark.h>

#include "qphlab/circuit.hpp"
#include "qphlab/game_solver.hpp"
#include "qphlab/isolation.hpp"
#include "qphlab/linalg.hpp"
#include "qphlab/product_tests.hpp"
#include "qphlab/search_to_decision.hpp"
#include "qphlab/verifier.hpp"

namespace {

using namespace qphlab;

void bm_extreme_eigenpair(benchmark::State& state) {
  Index d = state.range(0);
  SplitMix64 rng(11);
  Matrix m = random_contraction(d, rng);
  for (auto _ : state) {
    EigenPair top = extreme_eigenpair(m, Extremum::Max);
    benchmark::DoNotOptimize(top.value);
  }
}
BENCHMARK(bm_extreme_eigenpair)->Arg(16)->Arg(64)->Arg(256);

void bm_compile_swap_test(benchmark::State& state) {
  Circuit c = swap_test_circuit(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    AcceptOperator op = accept_operator_from_circuit(c);
    benchmark::DoNotOptimize(op.mat.data());
  }
}
BENCHMARK(bm_compile_swap_test)->Arg(1)->Arg(2)->Arg(3);

void bm_product_overlap_certified(benchmark::State& state) {
  AptLayout layout;
  layout.subsystem_dims = {2};
  layout.copies = static_cast<int>(state.range(0));
  layout.extra_dim = 2;
  SplitMix64 rng(23);
  QState phi = random_state(layout.bc_dim(), rng);
  ProductOverlapOptions options;
  options.grid_theta = 31;
  options.grid_phi = 62;
  for (auto _ : state) {
    ProductOverlapResult r = best_product_overlap(phi, layout, options);
    benchmark::DoNotOptimize(r.overlap);
  }
}
BENCHMARK(bm_product_overlap_certified)->Arg(2)->Arg(3);

void bm_conditioned_eigen(benchmark::State& state) {
  Index rest = state.range(0);
  SplitMix64 rng(37);
  Matrix m = random_contraction(2 * rest, rng);
  AcceptOperator op(m, {{"p1", 2}, {"p2", rest}});
  QState move = random_state(2, rng);
  for (auto _ : state) {
    AcceptOperator sub = conditioned_operator(op, move);
    EigenPair top = extreme_eigenpair(sub.mat, Extremum::Max);
    benchmark::DoNotOptimize(top.value);
  }
}
BENCHMARK(bm_conditioned_eigen)->Arg(16)->Arg(64);

void bm_isolation_trial(benchmark::State& state) {
  int ell = static_cast<int>(state.range(0));
  std::vector<std::string> accepted = {std::string(static_cast<size_t>(ell), '0')};
  long long denom = 1;
  for (int i = 0; i < 4; ++i) denom *= ell;
  TqcmappInstance inst(lookup_verifier_circuit(0, ell, accepted), "", Rational(1, denom),
                       Rational(denom - 1, denom), ell);
  std::vector<double> acceptances = witness_acceptances(inst);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    SplitMix64 rng = trial_rng(5, trial++);
    UqcmappInstance hashed = vv_isolate(inst, rng);
    benchmark::DoNotOptimize(uqcmapp_status_from(acceptances, hashed));
  }
}
BENCHMARK(bm_isolation_trial)->Arg(3)->Arg(5);

void bm_bv_run_table(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  NoisyDecisionOracle oracle([](const std::string& z) { return z.back() == '1'; },
                             std::pow(2.0, -n));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    SplitMix64 rng = trial_rng(7, trial++);
    std::string out = bernstein_vazirani(oracle, n, rng);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(bm_bv_run_table)->Arg(6)->Arg(10);

void bm_bv_run_circuit(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  std::vector<bool> table(static_cast<size_t>(1) << n);
  for (size_t z = 0; z < table.size(); ++z) table[z] = (z & 1) != 0;
  Circuit decider = exact_lookup_decider(table, n);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    SplitMix64 rng = trial_rng(9, trial++);
    std::string out = bernstein_vazirani(decider, rng);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(bm_bv_run_circuit)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
