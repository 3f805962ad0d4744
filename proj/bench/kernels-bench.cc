// bench/kernels-bench.cc

// Copyright 2026  The uwasr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP kernels at acoustic-model shapes.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "uwasr/frontend/frontend.h"
#include "uwasr/kernels/gemm.h"

namespace {

using uwasr::Matrix;

Matrix Random(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (double &v : m.Row(r)) v = u(rng);
  return m;
}

// Batch x input against a 96 x input weight matrix.
void BM_GemmNT_Reference(benchmark::State &state) {
  const Matrix a = Random(state.range(0), 1080, 1), b = Random(96, 1080, 2);
  Matrix c;
  for (auto _ : state) {
    uwasr::kernels::reference::GemmNT(a, b, &c);
    benchmark::DoNotOptimize(c.Data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 96 * 1080);
}

void BM_GemmNT_OpenMP(benchmark::State &state) {
  omp_set_num_threads(static_cast<int>(state.range(1)));
  const Matrix a = Random(state.range(0), 1080, 1), b = Random(96, 1080, 2);
  Matrix c;
  for (auto _ : state) {
    uwasr::kernels::GemmNT(a, b, &c);
    benchmark::DoNotOptimize(c.Data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 96 * 1080);
}

void BM_GemmTN_Reference(benchmark::State &state) {
  const Matrix d = Random(state.range(0), 96, 3), a = Random(state.range(0), 1080, 4);
  Matrix c;
  for (auto _ : state) {
    uwasr::kernels::reference::GemmTN(d, a, &c);
    benchmark::DoNotOptimize(c.Data());
  }
}

void BM_GemmTN_OpenMP(benchmark::State &state) {
  omp_set_num_threads(static_cast<int>(state.range(1)));
  const Matrix d = Random(state.range(0), 96, 3), a = Random(state.range(0), 1080, 4);
  Matrix c;
  for (auto _ : state) {
    uwasr::kernels::GemmTN(d, a, &c);
    benchmark::DoNotOptimize(c.Data());
  }
}

void BM_MelEnergies(benchmark::State &state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  uwasr::AudioSignal sig;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 0.05);
  sig.samples.resize(16000 * 5);
  for (double &v : sig.samples) v = n(rng);
  const uwasr::FrontendConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(uwasr::ComputeMelEnergies(sig, cfg).Data());
}

}  // namespace

BENCHMARK(BM_GemmNT_Reference)->Arg(32)->Arg(512);
BENCHMARK(BM_GemmNT_OpenMP)->Args({32, 1})->Args({512, 1})->Args({512, 4});
BENCHMARK(BM_GemmTN_Reference)->Arg(32)->Arg(512);
BENCHMARK(BM_GemmTN_OpenMP)->Args({32, 1})->Args({512, 4});
BENCHMARK(BM_MelEnergies)->Arg(1)->Arg(4);

BENCHMARK_MAIN();
