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

#include "doctest.h"
#include "helpers.hpp"
#include "privmail/alignment.hpp"
#include "privmail/errors.hpp"
#include "privmail/rng.hpp"

using namespace privmail;

namespace {

// Random proper rotation: 2-d from an angle, higher dimensions from a
// Gram-Schmidt pass over Gaussian draws with a determinant fix-up.
Matrix random_rotation(std::size_t k, Rng& rng) {
  if (k == 2) {
    const double theta = 2.0 * 3.14159265358979323846 *
                         (0.5 + 0.5 * std::tanh(rng.standard_normal()));
    return Matrix({{std::cos(theta), -std::sin(theta)},
                   {std::sin(theta), std::cos(theta)}});
  }
  Matrix q(k, k);
  for (std::size_t col = 0; col < k; ++col) {
    std::vector<double> v(k);
    for (auto& x : v) x = rng.standard_normal();
    for (std::size_t prev = 0; prev < col; ++prev) {
      double dot = 0.0;
      for (std::size_t i = 0; i < k; ++i) dot += v[i] * q(i, prev);
      for (std::size_t i = 0; i < k; ++i) v[i] -= dot * q(i, prev);
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < k; ++i) q(i, col) = v[i] / norm;
  }
  // det of a 3x3 via the triple product; flip one column if it is -1.
  if (k == 3) {
    const double det =
        q(0, 0) * (q(1, 1) * q(2, 2) - q(1, 2) * q(2, 1)) -
        q(0, 1) * (q(1, 0) * q(2, 2) - q(1, 2) * q(2, 0)) +
        q(0, 2) * (q(1, 0) * q(2, 1) - q(1, 1) * q(2, 0));
    if (det < 0.0) {
      for (std::size_t i = 0; i < k; ++i) q(i, 2) = -q(i, 2);
    }
  }
  return q;
}

Matrix transform_points(const Matrix& pts, const Matrix& rot, double scale,
                        const std::vector<double>& trans) {
  const std::size_t k = pts.cols();
  Matrix out(pts.rows(), k);
  for (std::size_t i = 0; i < pts.rows(); ++i) {
    for (std::size_t r = 0; r < k; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < k; ++c) acc += rot(r, c) * pts(i, c);
      out(i, r) = scale * acc + trans[r];
    }
  }
  return out;
}

double rmsd(const Matrix& a, const Matrix& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(a.rows()));
}

}  // namespace

TEST_SUITE("alignment") {

TEST_CASE("self-alignment is the identity transform") {
  const Matrix pts = testing::random_matrix(6, 2, 1);
  const RigidTransform t = estimate_transform(pts, pts);
  CHECK(t.scale == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(std::abs(t.translation[i]) <= 1e-12);
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(t.rotation(i, j) ==
            doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("recovers a 90 degree rotation plus translation") {
  const Matrix src({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
  const Matrix rot({{0.0, -1.0}, {1.0, 0.0}});  // +90 degrees
  const std::vector<double> trans{1.0, 2.0};
  const Matrix tgt = transform_points(src, rot, 1.0, trans);
  const RigidTransform t = estimate_transform(src, tgt);
  CHECK(std::abs(t.scale - 1.0) <= 1e-10);
  CHECK(std::abs(t.translation[0] - 1.0) <= 1e-10);
  CHECK(std::abs(t.translation[1] - 2.0) <= 1e-10);
  CHECK(max_abs_diff(t.rotation, rot) <= 1e-10);
  CHECK(rmsd(apply_transform(t, src), tgt) < 1e-10);
}

TEST_CASE("recovers a pure scaling") {
  const Matrix src = testing::random_matrix(7, 3, 2);
  const Matrix tgt = 2.5 * src;
  const RigidTransform t = estimate_transform(src, tgt);
  CHECK(t.scale == doctest::Approx(2.5).epsilon(1e-10));
  CHECK(max_abs_diff(t.rotation, Matrix::identity(3)) <= 1e-10);
}

TEST_CASE("recovers random similarity transforms exactly") {
  Rng rng(99);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t k = (rep % 2 == 0) ? 2 : 3;
    const std::size_t m = k + 2 + rng.uniform_index(8);
    const Matrix src = testing::random_matrix(m, k, 1000 + rep);
    const Matrix rot = random_rotation(k, rng);
    const double scale = 0.1 + 9.9 * (rep / 50.0);
    std::vector<double> trans(k);
    for (auto& x : trans) x = 3.0 * rng.standard_normal();

    const Matrix tgt = transform_points(src, rot, scale, trans);
    const RigidTransform t = estimate_transform(src, tgt);
    CHECK(rmsd(apply_transform(t, src), tgt) < 1e-8);
    CHECK(t.scale == doctest::Approx(scale).epsilon(1e-8));

    // proper rotation: R^T R = I and det(R) = +1
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        double dot = 0.0;
        for (std::size_t l = 0; l < k; ++l) dot += t.rotation(l, i) * t.rotation(l, j);
        CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("transform preserves pairwise distance ratios") {
  Rng rng(7);
  const Matrix pts = testing::random_matrix(8, 2, 3);
  RigidTransform t;
  t.rotation = random_rotation(2, rng);
  t.scale = 1.7;
  t.translation = {0.4, -2.0};
  const Matrix mapped = apply_transform(t, pts);

  auto dist = [](const Matrix& m, std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const double d = m(i, c) - m(j, c);
      s += d * d;
    }
    return std::sqrt(s);
  };
  const double ref = dist(pts, 0, 1) / dist(mapped, 0, 1);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = i + 1; j < 8; ++j) {
      CHECK(dist(pts, i, j) / dist(mapped, i, j) ==
            doctest::Approx(ref).epsilon(1e-10));
    }
  }
}

TEST_CASE("estimation is invariant to permuting anchor pairs") {
  Rng rng(17);
  const std::size_t m = 9;
  const Matrix src = testing::random_matrix(m, 2, 4);
  const Matrix rot = random_rotation(2, rng);
  const Matrix tgt = transform_points(src, rot, 1.4, {1.0, -1.0});
  const RigidTransform base = estimate_transform(src, tgt);

  const auto perm = rng.permutation(m);
  Matrix psrc(m, 2), ptgt(m, 2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      psrc(i, j) = src(perm[i], j);
      ptgt(i, j) = tgt(perm[i], j);
    }
  }
  const RigidTransform permuted = estimate_transform(psrc, ptgt);
  CHECK(max_abs_diff(base.rotation, permuted.rotation) <= 1e-10);
  CHECK(std::abs(base.scale - permuted.scale) <= 1e-10);
}

TEST_CASE("degenerate anchors are rejected") {
  // coincident points
  const Matrix coincident({{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}});
  CHECK_THROWS_AS(estimate_transform(coincident, coincident),
                  DegenerateAnchors);
  // too few rows
  const Matrix two({{0.0, 0.0}, {1.0, 0.0}});
  CHECK_THROWS_AS(estimate_transform(two, two), DegenerateAnchors);
  // rank 1 in 3-d: all points on a line, covariance rank < k-1
  Matrix line(5, 3);
  for (std::size_t i = 0; i < 5; ++i) line(i, 0) = static_cast<double>(i);
  CHECK_THROWS_AS(estimate_transform(line, line), DegenerateAnchors);
  // shape mismatch
  CHECK_THROWS_AS(estimate_transform(two, coincident), DimensionMismatch);
}

TEST_CASE("apply_transform validates the column count") {
  RigidTransform t;
  t.rotation = Matrix::identity(2);
  t.translation = {0.0, 0.0};
  CHECK_THROWS_AS(apply_transform(t, Matrix(3, 3)), DimensionMismatch);
  SUBCASE("identity maps points to themselves") {
    const Matrix pts = testing::random_matrix(4, 2, 5);
    CHECK(apply_transform(t, pts) == pts);
  }
  SUBCASE("pure translation shifts every row") {
    t.translation = {2.0, -1.0};
    const Matrix pts = testing::random_matrix(4, 2, 6);
    const Matrix out = apply_transform(t, pts);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(out(i, 0) == doctest::Approx(pts(i, 0) + 2.0).epsilon(1e-15));
      CHECK(out(i, 1) == doctest::Approx(pts(i, 1) - 1.0).epsilon(1e-15));
    }
  }
}

}  // TEST_SUITE
