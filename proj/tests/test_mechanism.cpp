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
#include "privmail/errors.hpp"
#include "privmail/mechanism.hpp"
#include "privmail/rng.hpp"
#include "privmail/smlq.hpp"

using namespace privmail;

TEST_SUITE("mechanism") {

TEST_CASE("calibration formula") {
  const PrivacyBudget budget{1.0, 1e-5};

  SUBCASE("zero sensitivity needs zero noise") {
    CHECK(calibrate_noise(0.0, budget).noise_stddev == 0.0);
  }
  SUBCASE("unit sensitivity at eps=1, delta=1e-5") {
    const double expected = std::sqrt(2.0 * std::log(125000.0));
    const NoiseCalibration c = calibrate_noise(1.0, budget);
    CHECK(std::abs(c.noise_stddev - expected) <= 1e-12 * expected);
  }
  SUBCASE("noise scale is inverse in epsilon") {
    const NoiseCalibration tight = calibrate_noise(1.0, {0.1, 1e-5});
    const NoiseCalibration loose = calibrate_noise(1.0, {1.0, 1e-5});
    CHECK(tight.noise_stddev ==
          doctest::Approx(10.0 * loose.noise_stddev).epsilon(1e-14));
  }
  SUBCASE("definition identity holds with equality") {
    for (const double eps : {0.01, 0.5, 3.0}) {
      for (const double delta : {1e-7, 1e-5, 0.3}) {
        const NoiseCalibration c = calibrate_noise(2.25, {eps, delta});
        const double lhs = c.noise_stddev * eps / c.sensitivity;
        const double rhs = std::sqrt(2.0 * std::log(1.25 / delta));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("calibration rejects invalid budgets") {
  CHECK_THROWS_AS(calibrate_noise(1.0, {0.0, 1e-5}), InvalidBudget);
  CHECK_THROWS_AS(calibrate_noise(1.0, {-1.0, 1e-5}), InvalidBudget);
  CHECK_THROWS_AS(calibrate_noise(1.0, {1.0, 0.0}), InvalidBudget);
  CHECK_THROWS_AS(calibrate_noise(1.0, {1.0, 1.0}), InvalidBudget);
  CHECK_THROWS_AS(calibrate_noise(-0.1, {1.0, 1e-5}), Error);
}

TEST_CASE("mechanism with zero noise returns the input bitwise") {
  const Matrix values = testing::random_matrix(4, 3, 1);
  const Matrix out = gaussian_mechanism(values, {0.0, 0.0}, 9);
  CHECK(out == values);
}

TEST_CASE("mechanism is deterministic for a fixed seed") {
  const Matrix values = testing::random_matrix(6, 2, 2);
  const NoiseCalibration calib{1.0, 2.0};
  CHECK(gaussian_mechanism(values, calib, 123) ==
        gaussian_mechanism(values, calib, 123));
}

TEST_CASE("mechanism noise matches its nominal scale") {
  const std::size_t n = 1000000;
  const NoiseCalibration calib{1.0, 2.0};
  const Matrix zero(n, 1);
  const Matrix noise = gaussian_mechanism(zero, calib, 31);
  std::vector<double> xs(noise.data(), noise.data() + n);
  const auto stats = testing::sample_stats(xs);
  CHECK(std::abs(stats.stddev - 2.0) <= 0.02 * 2.0);
  CHECK(std::abs(stats.mean) <= 3.0 * 2.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("pooled noise passes a normality sanity check") {
  std::vector<double> pooled;
  pooled.reserve(500 * 2000);
  const Matrix zero(1000, 2);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Matrix noise = gaussian_mechanism(zero, {1.0, 1.0}, seed);
    pooled.insert(pooled.end(), noise.data(), noise.data() + noise.size());
  }
  const auto stats = testing::sample_stats(pooled);
  CHECK(std::abs(stats.skewness) < 0.02);
  CHECK(std::abs(stats.excess_kurtosis) < 0.05);
}

namespace {

struct MailFixture {
  Matrix features = normalize_rows(testing::random_matrix(12, 4, 8));
  LabelVector labels{testing::random_labels(12, 2, 9)};
  SmlqConfig config;

  MailFixture() {
    config.alpha = 0.5;
    config.kernel_bandwidth = 1.0;
    config.embed_dim = 2;
    config.init_stddev = 1e-8;
  }
};

}  // namespace

TEST_CASE("private_mail at huge epsilon approaches the clean iterate") {
  MailFixture f;
  const std::uint64_t seed = 21;
  const PrivateMailResult res =
      private_mail(f.features, f.labels, f.config, {1e9, 1e-5}, seed);

  // Reconstruct the clean single-iteration embedding from the same stream.
  const Matrix q =
      gaussian_matrix(12, 2, f.config.init_stddev,
                      derive_seed(seed, stream::kEmbeddingInit));
  const Laplacian l_x =
      gaussian_kernel_laplacian(f.features, f.config.kernel_bandwidth);
  const Laplacian l_y = label_laplacian(f.labels, f.config.kernel_bandwidth);
  const Matrix clean = smlq_iterate(q, l_x, l_y, f.config.alpha);

  CHECK(max_abs_diff(res.embedding, clean) <= 1e-6);
  CHECK(res.bound.delta > 0.0);
  CHECK(res.calib.noise_stddev ==
        doctest::Approx(calibrate_noise(res.bound.delta, {1e9, 1e-5})
                            .noise_stddev)
            .epsilon(1e-15));
}

TEST_CASE("private_mail with table defaults runs and calibrates") {
  MailFixture f;
  f.config.kernel_bandwidth = 6.0;
  f.config.alpha = 0.6;
  const PrivateMailResult res =
      private_mail(f.features, f.labels, f.config, {0.1, 1e-5}, 4);
  const double expected =
      std::sqrt(2.0 * std::log(1.25 / 1e-5)) * res.bound.delta / 0.1;
  CHECK(res.calib.noise_stddev == doctest::Approx(expected).epsilon(1e-12));
  CHECK(res.embedding.rows() == 12);
  CHECK(res.embedding.cols() == 2);
}

TEST_CASE("private_mail is deterministic for a fixed seed") {
  MailFixture f;
  const auto a = private_mail(f.features, f.labels, f.config, {0.5, 1e-5}, 77);
  const auto b = private_mail(f.features, f.labels, f.config, {0.5, 1e-5}, 77);
  CHECK(a.embedding == b.embedding);
}

TEST_CASE("doubling epsilon halves the realized noise exactly") {
  MailFixture f;
  const std::uint64_t seed = 55;
  const auto res1 = private_mail(f.features, f.labels, f.config, {0.2, 1e-5}, seed);
  const auto res2 = private_mail(f.features, f.labels, f.config, {0.4, 1e-5}, seed);

  CHECK(res2.calib.noise_stddev == res1.calib.noise_stddev / 2.0);

  // The realized noise is noise_stddev times a seed-determined draw, so the
  // noise matrices halve exactly as well.
  const Matrix zero(12, 2);
  const Matrix noise1 =
      gaussian_mechanism(zero, res1.calib, derive_seed(seed, stream::kNoise));
  const Matrix noise2 =
      gaussian_mechanism(zero, res2.calib, derive_seed(seed, stream::kNoise));
  CHECK(noise2 == 0.5 * noise1);
}

TEST_CASE("private_mail requires matching labels") {
  MailFixture f;
  CHECK_THROWS_AS(private_mail(f.features, LabelVector({0, 1}), f.config,
                               {0.5, 1e-5}, 1),
                  DimensionMismatch);
}

}  // TEST_SUITE
