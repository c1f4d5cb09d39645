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

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "helpers.hpp"
#include "privmail/kernels.hpp"
#include "privmail/matrix.hpp"

using namespace privmail;

TEST_SUITE("kernels") {

TEST_CASE("parallel kernels agree with the serial reference") {
  for (const std::size_t n : {1UL, 7UL, 64UL}) {
    const std::size_t m = n + 3;
    const std::size_t p = 5;
    const Matrix a = testing::random_matrix(n, m, 2 * n);
    const Matrix b = testing::random_matrix(m, p, 2 * n + 1);

    Matrix c_par(n, p), c_ser(n, p);
    kernels::matmul(a.data(), n, m, b.data(), p, c_par.data());
    kernels::serial::matmul(a.data(), n, m, b.data(), p, c_ser.data());
    CHECK(max_abs_diff(c_par, c_ser) <= 1e-12);

    const Matrix pts = testing::random_matrix(n + 1, 4, 3 * n);
    Matrix w_par(n + 1, n + 1), w_ser(n + 1, n + 1);
    kernels::gaussian_weights(pts.data(), n + 1, 4, 1.5, w_par.data());
    kernels::serial::gaussian_weights(pts.data(), n + 1, 4, 1.5, w_ser.data());
    CHECK(max_abs_diff(w_par, w_ser) <= 1e-12);

    std::vector<double> norms_par(n), norms_ser(n);
    kernels::row_norms(a.data(), n, m, norms_par.data());
    kernels::serial::row_norms(a.data(), n, m, norms_ser.data());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(norms_par[i] - norms_ser[i]) <= 1e-12);
    }

    CHECK(kernels::dot_product(a.data(), a.data(), a.size()) ==
          kernels::serial::dot_product(a.data(), a.data(), a.size()));
  }
}

TEST_CASE("matmul matches an independent dense implementation") {
  const std::size_t n = 23, m = 17, p = 9;
  const Matrix a = testing::random_matrix(n, m, 77);
  const Matrix b = testing::random_matrix(m, p, 78);
  Matrix c(n, p);
  kernels::matmul(a.data(), n, m, b.data(), p, c.data());

  Eigen::MatrixXd ea(n, m), eb(m, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) ea(i, j) = a(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < p; ++j) eb(i, j) = b(i, j);
  const Eigen::MatrixXd ec = ea * eb;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      CHECK(c(i, j) == doctest::Approx(ec(i, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("gaussian weights are symmetric with an empty diagonal") {
  const std::size_t n = 12;
  const Matrix pts = testing::random_matrix(n, 3, 5);
  Matrix w(n, n);
  kernels::gaussian_weights(pts.data(), n, 3, 0.8, w.data());
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(w(i, i) == 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(w(i, j) == w(j, i));  // bitwise: both sides compute the same sum
      if (i != j) {
        CHECK(w(i, j) > 0.0);
        CHECK(w(i, j) <= 1.0);
      }
    }
  }
}

}  // TEST_SUITE
