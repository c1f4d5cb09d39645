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

#include "privmail/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "privmail/errors.hpp"
#include "privmail/laplacian.hpp"
#include "privmail/matrix.hpp"
#include "privmail/rng.hpp"
#include "privmail/smlq.hpp"

namespace privmail {

void SensitivityParams::validate() const {
  if (n < 2) throw Error("sensitivity bound needs n >= 2");
  if (alpha < 0.0) throw Error("alpha must be nonnegative");
  if (kernel_bandwidth <= 0.0) throw InvalidBandwidth(kernel_bandwidth);
  if (num_classes_minus_one < 1) throw Error("need at least two classes");
  if (q_frobenius < 0.0) throw Error("q_frobenius must be nonnegative");
}

namespace {

// Shared sub-expressions of the two constants. All are extreme values of
// Laplacian entries over unit-norm rows (distances in [0, 2]) and integer
// labels (distances in [0, c]).
struct KernelExtremes {
  double e2;    // exp(-2 / sigma^2): farthest-pair kernel value
  double eh;    // exp(-1 / (2 sigma^2)): kernel between a unit row and zero
  double ec;    // exp(-c^2 / (2 sigma^2)): farthest-label kernel value
  double lo_x;  // lower bound of the X-side diagonal, n*e2 + eh - 1
  double lo_t;  // lower bound of the X~-side diagonal, (n+1)*e2 - 1
  double hi_x;  // upper bound of the X-side diagonal, n + eh - 1
};

KernelExtremes extremes(const SensitivityParams& p) {
  const double s2 = p.kernel_bandwidth * p.kernel_bandwidth;
  const double c = static_cast<double>(p.num_classes_minus_one);
  const double nd = static_cast<double>(p.n);
  KernelExtremes e;
  e.e2 = std::exp(-2.0 / s2);
  e.eh = std::exp(-1.0 / (2.0 * s2));
  e.ec = std::exp(-c * c / (2.0 * s2));
  e.lo_x = nd * e.e2 + e.eh - 1.0;
  e.lo_t = (nd + 1.0) * e.e2 - 1.0;
  e.hi_x = nd + e.eh - 1.0;
  return e;
}

}  // namespace

double compute_m_ii(const SensitivityParams& params) {
  params.validate();
  const KernelExtremes e = extremes(params);
  const double nd = static_cast<double>(params.n);
  const double a = nd / e.lo_x;
  const double b = nd / e.lo_t;
  const double cross = (nd + 1.0) * e.ec - 1.0;
  const double bracket = a * a + b * b - 2.0 * cross * cross / (nd * e.hi_x);
  return params.alpha * params.alpha * bracket;
}

double compute_m_ij(const SensitivityParams& params) {
  params.validate();
  const KernelExtremes e = extremes(params);
  const double s2 = params.kernel_bandwidth * params.kernel_bandwidth;
  const double c = static_cast<double>(params.num_classes_minus_one);
  const double nd = static_cast<double>(params.n);
  const double alpha = params.alpha;
  const double a2p1 = alpha * alpha + 1.0;
  const double ec4 = std::exp(-(c * c + 4.0) / (2.0 * s2));
  const double ecc = std::exp(-c * c / s2);
  const double e4 = std::exp(-4.0 / s2);
  return a2p1 / (e.lo_x * e.lo_x)
         - 2.0 * alpha * ec4 / (e.hi_x * e.hi_x)
         + a2p1 / (e.lo_t * e.lo_t)
         - 2.0 * alpha * ec4 / (nd * nd)
         - 2.0 * (alpha * alpha * ecc + e4) / (nd * e.hi_x)
         + 4.0 * alpha / (e.lo_x * e.lo_t);
}

SensitivityBound compute_delta(const SensitivityParams& params) {
  params.validate();
  SensitivityBound bound;
  bound.m_ii = compute_m_ii(params);
  bound.m_ij = compute_m_ij(params);
  bound.m_composite =
      static_cast<double>(params.n) * bound.m_ij + bound.m_ii;
  if (!(bound.m_composite > 0.0)) {
    throw NonPositiveBound(bound.m_composite);
  }
  bound.delta = bound.m_composite *
                std::sqrt(static_cast<double>(params.n) + 1.0) *
                params.q_frobenius / 2.0;
  return bound;
}

namespace {

// First query iterate over an already-padded dataset.
Matrix first_iterate(const Matrix& points, const LabelVector& labels,
                     const Matrix& q, double alpha, double sigma) {
  const Laplacian l_x = gaussian_kernel_laplacian(points, sigma);
  const Laplacian l_y = label_laplacian(labels, sigma);
  return smlq_iterate(q, l_x, l_y, alpha);
}

}  // namespace

VerifierReport verify_bound_empirically(const SensitivityParams& params,
                                        std::size_t embed_dim,
                                        std::size_t feature_dim,
                                        std::size_t trials, std::uint64_t seed,
                                        std::optional<double> delta_override) {
  params.validate();
  if (trials < 1) throw Error("verifier needs at least one trial");

  const SensitivityBound bound = compute_delta(params);
  const std::size_t n = params.n;

  // One Q for every trial, rescaled so its Frobenius norm matches the bound's
  // q_frobenius exactly (the iterate difference is linear in Q).
  Matrix q = gaussian_matrix(n + 1, embed_dim, 1.0,
                             derive_seed(seed, stream::kVerifierQ));
  const double realized = q.frobenius_norm();
  const double scale = realized > 0.0 ? params.q_frobenius / realized : 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) q.data()[i] *= scale;

  std::vector<double> per_trial(trials, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
    Rng rng(derive_seed(seed, stream::kVerifierTrial,
                        static_cast<std::uint64_t>(t)));

    Matrix base(n + 1, feature_dim);
    std::vector<int> labels_base(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = rng.unit_vector(feature_dim);
      for (std::size_t j = 0; j < feature_dim; ++j) base(i, j) = row[j];
      labels_base[i] = rng.uniform_int(0, params.num_classes_minus_one);
    }

    // Neighbor: same rows with the zero padding replaced by a fresh
    // unit-norm record and label.
    Matrix neighbor = base;
    std::vector<int> labels_neighbor = labels_base;
    const auto extra = rng.unit_vector(feature_dim);
    for (std::size_t j = 0; j < feature_dim; ++j) neighbor(n, j) = extra[j];
    labels_neighbor[n] = rng.uniform_int(0, params.num_classes_minus_one);

    const Matrix fx = first_iterate(base, LabelVector(labels_base), q,
                                    params.alpha, params.kernel_bandwidth);
    const Matrix ft =
        first_iterate(neighbor, LabelVector(labels_neighbor), q, params.alpha,
                      params.kernel_bandwidth);
    per_trial[t] = (fx - ft).frobenius_norm();
  }

  VerifierReport report;
  report.delta = delta_override.value_or(bound.delta);
  for (double v : per_trial) report.max_observed = std::max(report.max_observed, v);
  report.satisfied = report.max_observed <= report.delta;
  return report;
}

}  // namespace privmail
