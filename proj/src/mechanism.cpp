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

#include "privmail/mechanism.hpp"

#include <cmath>
#include <string>

#include "privmail/errors.hpp"
#include "privmail/laplacian.hpp"
#include "privmail/rng.hpp"

namespace privmail {

void PrivacyBudget::validate() const {
  if (!(epsilon > 0.0)) {
    throw InvalidBudget("epsilon must be positive, got " +
                        std::to_string(epsilon));
  }
  if (!(delta_dp > 0.0) || !(delta_dp < 1.0)) {
    throw InvalidBudget("delta must lie in (0, 1), got " +
                        std::to_string(delta_dp));
  }
}

NoiseCalibration calibrate_noise(double sensitivity,
                                 const PrivacyBudget& budget) {
  budget.validate();
  if (sensitivity < 0.0) {
    throw Error("sensitivity must be nonnegative");
  }
  NoiseCalibration calib;
  calib.sensitivity = sensitivity;
  calib.noise_stddev =
      std::sqrt(2.0 * std::log(1.25 / budget.delta_dp)) * sensitivity /
      budget.epsilon;
  return calib;
}

Matrix gaussian_mechanism(const Matrix& values, const NoiseCalibration& calib,
                          std::uint64_t seed) {
  Rng rng(seed);
  Matrix out(values.rows(), values.cols());
  for (std::size_t i = 0; i < values.rows(); ++i) {
    for (std::size_t j = 0; j < values.cols(); ++j) {
      out(i, j) = values(i, j) + calib.noise_stddev * rng.standard_normal();
    }
  }
  return out;
}

PrivateMailResult private_mail(const Matrix& features,
                               const LabelVector& labels,
                               const SmlqConfig& config,
                               const PrivacyBudget& budget,
                               std::uint64_t seed) {
  budget.validate();
  if (labels.size() != features.rows()) {
    throw DimensionMismatch("label count does not match feature rows");
  }

  const Laplacian l_x =
      gaussian_kernel_laplacian(features, config.kernel_bandwidth);
  const Laplacian l_y = label_laplacian(labels, config.kernel_bandwidth);

  const Matrix q =
      gaussian_matrix(features.rows(), config.embed_dim, config.init_stddev,
                      derive_seed(seed, stream::kEmbeddingInit));
  const Matrix first = smlq_iterate(q, l_x, l_y, config.alpha);

  SensitivityParams params;
  params.n = features.rows();
  params.alpha = config.alpha;
  params.kernel_bandwidth = config.kernel_bandwidth;
  params.num_classes_minus_one = labels.max_label();
  params.q_frobenius = q.frobenius_norm();

  PrivateMailResult result;
  result.bound = compute_delta(params);
  result.calib = calibrate_noise(result.bound.delta, budget);
  result.embedding = gaussian_mechanism(first, result.calib,
                                        derive_seed(seed, stream::kNoise));
  return result;
}

}  // namespace privmail
