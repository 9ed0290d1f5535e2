// Copyright 2026 The opgrowth Authors
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


#include <benchmark/benchmark.h>

#include "opgrowth/analysis.hpp"
#include "opgrowth/krylov.hpp"
#include "opgrowth/spin_algebra.hpp"
#include "opgrowth/superop.hpp"

namespace {

using namespace opgrowth;

constexpr double kG = -1.05;
constexpr double kH = 0.5;

SuperOperator open_chain(int n) {
  return build_lindbladian(build_tfim(n, kG, kH),
                           build_jump_operators(n, 0.05, 0.1, JumpMode::Full));
}

SuperVector z_seed(int n) {
  return vectorize_operator(site_operator(n, std::min(3, n), Pauli::Z)).normalized();
}

void BM_BuildLindbladian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SpinOperator h = build_tfim(n, kG, kH);
  const auto jumps = build_jump_operators(n, 0.05, 0.1, JumpMode::Full);
  for (auto _ : state) benchmark::DoNotOptimize(build_lindbladian(h, jumps));
}
BENCHMARK(BM_BuildLindbladian)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_Apply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SuperOperator l = open_chain(n);
  const Vector v = z_seed(n).entries();
  for (auto _ : state) benchmark::DoNotOptimize(l.apply(v));
  state.SetItemsProcessed(state.iterations() * l.nonzeros());
}
BENCHMARK(BM_Apply)->DenseRange(3, 6);

void BM_Lanczos(benchmark::State& state) {
  const SuperOperator l = build_liouvillian(build_tfim(6, kG, kH));
  LanczosOptions opts;
  opts.max_steps = static_cast<int>(state.range(0));
  opts.full_reorth = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(lanczos(l, z_seed(6), opts));
}
BENCHMARK(BM_Lanczos)->Args({60, 0})->Args({60, 1})->Args({400, 1})->Unit(benchmark::kMillisecond);

void BM_Arnoldi(benchmark::State& state) {
  const SuperOperator l = open_chain(6);
  ArnoldiOptions opts;
  opts.max_steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(arnoldi(l, z_seed(6), opts));
}
BENCHMARK(BM_Arnoldi)->Arg(60)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_RitzValues(benchmark::State& state) {
  ArnoldiOptions opts;
  opts.max_steps = static_cast<int>(state.range(0));
  const ArnoldiRun run = arnoldi(open_chain(6), z_seed(6), opts);
  for (auto _ : state) benchmark::DoNotOptimize(ritz_values(run));
}
BENCHMARK(BM_RitzValues)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
