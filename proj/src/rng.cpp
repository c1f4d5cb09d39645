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

#include "privmail/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace privmail {

namespace {

// splitmix64 finalizer; decorrelates nearby inputs.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
  return mix(mix(base) ^ mix(tag + 1));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag_a,
                          std::uint64_t tag_b) {
  return derive_seed(derive_seed(base, tag_a), tag_b);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag_a,
                          std::uint64_t tag_b, std::uint64_t tag_c) {
  return derive_seed(derive_seed(base, tag_a, tag_b), tag_c);
}

std::vector<double> Rng::unit_vector(std::size_t dim) {
  std::vector<double> v(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& x : v) {
      x = standard_normal();
      norm += x * x;
    }
    norm = std::sqrt(norm);
  } while (norm < 1e-12);
  for (auto& x : v) x /= norm;
  return v;
}

std::vector<std::size_t> Rng::permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::shuffle(p.begin(), p.end(), engine_);
  return p;
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, double stddev,
                       std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = stddev * rng.standard_normal();
    }
  }
  return m;
}

}  // namespace privmail
