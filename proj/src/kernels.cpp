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

#include "privmail/kernels.hpp"

#include <cmath>
#include <cstdint>

namespace privmail::kernels {

namespace {

// Row-level workers shared by the parallel and serial entry points. Keeping
// one definition per kernel guarantees both paths run the same instruction
// sequence per output row.

inline void matmul_row(const double* a_row, std::size_t m, const double* b,
                       std::size_t p, double* c_row) {
  for (std::size_t j = 0; j < p; ++j) c_row[j] = 0.0;
  for (std::size_t l = 0; l < m; ++l) {
    const double a_il = a_row[l];
    const double* b_row = b + l * p;
    for (std::size_t j = 0; j < p; ++j) {
      c_row[j] += a_il * b_row[j];
    }
  }
}

inline void gaussian_weights_row(const double* pts, std::size_t n,
                                 std::size_t d, double inv_two_sigma_sq,
                                 std::size_t i, double* w_row) {
  const double* xi = pts + i * d;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) {
      w_row[j] = 0.0;
      continue;
    }
    const double* xj = pts + j * d;
    double d2 = 0.0;
    for (std::size_t t = 0; t < d; ++t) {
      const double diff = xi[t] - xj[t];
      d2 += diff * diff;
    }
    w_row[j] = std::exp(-d2 * inv_two_sigma_sq);
  }
}

inline double row_norm(const double* row, std::size_t d) {
  double s = 0.0;
  for (std::size_t t = 0; t < d; ++t) s += row[t] * row[t];
  return std::sqrt(s);
}

}  // namespace

void matmul(const double* a, std::size_t n, std::size_t m, const double* b,
            std::size_t p, double* c) {
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    matmul_row(a + i * m, m, b, p, c + i * p);
  }
}

void gaussian_weights(const double* pts, std::size_t n, std::size_t d,
                      double sigma, double* w) {
  const double inv = 1.0 / (2.0 * sigma * sigma);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    gaussian_weights_row(pts, n, d, inv, static_cast<std::size_t>(i),
                         w + i * n);
  }
}

void row_norms(const double* m, std::size_t n, std::size_t d, double* norms) {
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    norms[i] = row_norm(m + i * d, d);
  }
}

double dot_product(const double* a, const double* b, std::size_t count) {
  // Serial: an OpenMP reduction would reorder the summation and change
  // objective values between thread counts.
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i) s += a[i] * b[i];
  return s;
}

namespace serial {

void matmul(const double* a, std::size_t n, std::size_t m, const double* b,
            std::size_t p, double* c) {
  for (std::size_t i = 0; i < n; ++i) {
    matmul_row(a + i * m, m, b, p, c + i * p);
  }
}

void gaussian_weights(const double* pts, std::size_t n, std::size_t d,
                      double sigma, double* w) {
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (std::size_t i = 0; i < n; ++i) {
    gaussian_weights_row(pts, n, d, inv, i, w + i * n);
  }
}

void row_norms(const double* m, std::size_t n, std::size_t d, double* norms) {
  for (std::size_t i = 0; i < n; ++i) {
    norms[i] = row_norm(m + i * d, d);
  }
}

double dot_product(const double* a, const double* b, std::size_t count) {
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace serial

}  // namespace privmail::kernels
