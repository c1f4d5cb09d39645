//
// Copyright 2026 The PrivateMail Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Compares the OpenMP kernels against the serial reference implementations.

#include <benchmark/benchmark.h>

#include "privmail/kernels.hpp"
#include "privmail/laplacian.hpp"
#include "privmail/matrix.hpp"
#include "privmail/rng.hpp"
#include "privmail/smlq.hpp"

namespace {

using namespace privmail;

void BM_MatmulParallel(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const Matrix a = gaussian_matrix(n, n, 1.0, 1);
  const Matrix b = gaussian_matrix(n, 8, 1.0, 2);
  Matrix c(n, 8);
  for (auto _ : state) {
    kernels::matmul(a.data(), n, n, b.data(), 8, c.data());
    benchmark::DoNotOptimize(c.data());
  }
}
BENCHMARK(BM_MatmulParallel)->Arg(128)->Arg(512)->Arg(1024);

void BM_MatmulSerial(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const Matrix a = gaussian_matrix(n, n, 1.0, 1);
  const Matrix b = gaussian_matrix(n, 8, 1.0, 2);
  Matrix c(n, 8);
  for (auto _ : state) {
    kernels::serial::matmul(a.data(), n, n, b.data(), 8, c.data());
    benchmark::DoNotOptimize(c.data());
  }
}
BENCHMARK(BM_MatmulSerial)->Arg(128)->Arg(512)->Arg(1024);

void BM_GaussianWeightsParallel(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const Matrix pts = gaussian_matrix(n, 16, 1.0, 3);
  Matrix w(n, n);
  for (auto _ : state) {
    kernels::gaussian_weights(pts.data(), n, 16, 2.0, w.data());
    benchmark::DoNotOptimize(w.data());
  }
}
BENCHMARK(BM_GaussianWeightsParallel)->Arg(128)->Arg(512)->Arg(1024);

void BM_GaussianWeightsSerial(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const Matrix pts = gaussian_matrix(n, 16, 1.0, 3);
  Matrix w(n, n);
  for (auto _ : state) {
    kernels::serial::gaussian_weights(pts.data(), n, 16, 2.0, w.data());
    benchmark::DoNotOptimize(w.data());
  }
}
BENCHMARK(BM_GaussianWeightsSerial)->Arg(128)->Arg(512)->Arg(1024);

void BM_SmlqIterate(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const Matrix feats = normalize_rows(gaussian_matrix(n, 16, 1.0, 4));
  std::vector<int> labels(n);
  Rng rng(5);
  for (auto& l : labels) l = rng.uniform_int(0, 4);
  const Laplacian l_x = gaussian_kernel_laplacian(feats, 2.0);
  const Laplacian l_y = label_laplacian(LabelVector(labels), 2.0);
  Matrix x = gaussian_matrix(n, 2, 1.0, 6);
  for (auto _ : state) {
    x = smlq_iterate(x, l_x, l_y, 0.6);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_SmlqIterate)->Arg(128)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
