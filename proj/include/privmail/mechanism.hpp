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

#ifndef PRIVMAIL_MECHANISM_HPP_
#define PRIVMAIL_MECHANISM_HPP_

#include <cstdint>

#include "privmail/matrix.hpp"
#include "privmail/sensitivity.hpp"
#include "privmail/smlq.hpp"

namespace privmail {

struct PrivacyBudget {
  double epsilon = 0.1;
  double delta_dp = 1e-5;

  void validate() const;
};

struct NoiseCalibration {
  double sensitivity = 0.0;   // Delta
  double noise_stddev = 0.0;  // sigma = sqrt(2 ln(1.25/delta)) * Delta / eps
};

// Minimal Gaussian-mechanism noise scale for the given sensitivity and
// budget. Computed as (sqrt(2 ln(1.25/delta)) * Delta) / epsilon, so doubling
// epsilon halves the scale exactly.
NoiseCalibration calibrate_noise(double sensitivity,
                                 const PrivacyBudget& budget);

// values + noise_stddev * Z with Z i.i.d. standard normal drawn from seed.
// The standard-normal draw depends only on the seed and the matrix shape, so
// rescaling the calibration rescales the realized noise exactly.
Matrix gaussian_mechanism(const Matrix& values, const NoiseCalibration& calib,
                          std::uint64_t seed);

struct PrivateMailResult {
  Matrix embedding;        // noised single-iteration embedding
  SensitivityBound bound;  // closed-form Delta and its ingredients
  NoiseCalibration calib;
};

// The release mechanism: draws Q with N(0, init_stddev^2) entries, runs
// exactly one query iteration from Q, computes the sensitivity bound from the
// realized ||Q||_F, and adds calibrated Gaussian noise. Two independent
// substreams are derived from `seed` (stream::kEmbeddingInit for Q,
// stream::kNoise for the noise) so one can be varied while the other is held
// fixed. Features must be row-normalized; the bound assumes it.
PrivateMailResult private_mail(const Matrix& features,
                               const LabelVector& labels,
                               const SmlqConfig& config,
                               const PrivacyBudget& budget,
                               std::uint64_t seed);

}  // namespace privmail

#endif  // PRIVMAIL_MECHANISM_HPP_
