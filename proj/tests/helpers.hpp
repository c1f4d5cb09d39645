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

#ifndef PRIVMAIL_TESTS_HELPERS_HPP_
#define PRIVMAIL_TESTS_HELPERS_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

#include "privmail/laplacian.hpp"
#include "privmail/matrix.hpp"
#include "privmail/rng.hpp"

namespace privmail::testing {

inline Matrix random_matrix(std::size_t rows, std::size_t cols,
                            std::uint64_t seed, double stddev = 1.0) {
  return gaussian_matrix(rows, cols, stddev, seed);
}

inline Matrix random_unit_rows(std::size_t rows, std::size_t cols,
                               std::uint64_t seed) {
  return normalize_rows(gaussian_matrix(rows, cols, 1.0, seed));
}

inline std::vector<int> random_labels(std::size_t n, int max_label,
                                      std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> out(n);
  for (auto& l : out) l = rng.uniform_int(0, max_label);
  return out;
}

// Independent oracle for Tr(z^T L z): the weighted pairwise-distance sum
// sum_{i<j} w_ij ||z_i - z_j||^2 computed from the kernel weights directly.
// (The ordered double sum counts every pair twice, hence i < j.)
inline double pairwise_objective_oracle(const Matrix& z,
                                        const Matrix& points, double sigma) {
  const std::size_t n = points.rows();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d2 = 0.0;
      for (std::size_t t = 0; t < points.cols(); ++t) {
        const double diff = points(i, t) - points(j, t);
        d2 += diff * diff;
      }
      const double w = std::exp(-d2 / (2.0 * sigma * sigma));
      double z2 = 0.0;
      for (std::size_t t = 0; t < z.cols(); ++t) {
        const double diff = z(i, t) - z(j, t);
        z2 += diff * diff;
      }
      total += w * z2;
    }
  }
  return total;
}

struct SampleStats {
  double mean = 0.0;
  double stddev = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

inline SampleStats sample_stats(const std::vector<double>& xs) {
  SampleStats s;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) s.mean += x;
  s.mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - s.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  s.stddev = std::sqrt(m2);
  s.skewness = m3 / std::pow(m2, 1.5);
  s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  return s;
}

}  // namespace privmail::testing

#endif  // PRIVMAIL_TESTS_HELPERS_HPP_
