// Copyright 2026 The cartan-synth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial reference versus OpenMP kernels for the grading checks.

#include <benchmark/benchmark.h>

#include "cartan/grading.hpp"
#include "cartan/kernels.hpp"
#include "cartan/schemes.hpp"

namespace {

using cartan::kernels::Exec;

cartan::Scheme scheme_for(int id) {
  switch (id) {
    case 0: return cartan::build_new_scheme(3);
    case 1: return cartan::build_new_scheme(4);
    default: return cartan::build_bipartite_recursion(3, 3, {});
  }
}

const char* scheme_name(int id) {
  static const char* names[] = {"ccd-new(3)", "ccd-new(4)", "bipartite(3x3)"};
  return names[id];
}

template <Exec E>
void BM_InvolutionMatrix(benchmark::State& state) {
  const cartan::Scheme s = scheme_for(static_cast<int>(state.range(0)));
  const auto basis = cartan::AlgebraBasis::for_dimension(s.n());
  for (auto _ : state) {
    for (const auto& t : s.involutions)
      benchmark::DoNotOptimize(cartan::kernels::involution_matrix(t, *basis, E));
  }
  state.SetLabel(scheme_name(static_cast<int>(state.range(0))));
}

template <Exec E>
void BM_GradedCommutation(benchmark::State& state) {
  const cartan::Scheme s = scheme_for(static_cast<int>(state.range(0)));
  const cartan::Grading g = cartan::build_grading(s.involutions, Exec::Serial);
  std::vector<cartan::RMatrix> blocks;
  for (const auto& b : g.blocks) blocks.push_back(b.basis);
  long long pairs = 0;
  for (auto _ : state) {
    const auto rep = cartan::kernels::graded_commutation(*g.basis, blocks, E);
    pairs = rep.pairs;
    benchmark::DoNotOptimize(rep.max_residual);
  }
  state.counters["pairs"] = static_cast<double>(pairs);
  state.SetLabel(scheme_name(static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_InvolutionMatrix<Exec::Serial>)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InvolutionMatrix<Exec::Parallel>)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradedCommutation<Exec::Serial>)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradedCommutation<Exec::Parallel>)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
