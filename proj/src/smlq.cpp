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

#include "privmail/smlq.hpp"

#include <cmath>
#include <string>

#include "privmail/errors.hpp"
#include "privmail/kernels.hpp"
#include "privmail/rng.hpp"

namespace privmail {

namespace {

void check_dims(const Matrix& z, const Laplacian& l_x, const Laplacian& l_y) {
  if (z.rows() != l_x.size() || z.rows() != l_y.size()) {
    throw DimensionMismatch(
        "embedding has " + std::to_string(z.rows()) + " rows, Laplacians are " +
        std::to_string(l_x.size()) + " and " + std::to_string(l_y.size()));
  }
}

// Tr(z^T L z) computed as <z, L z>.
double quadratic_form(const Matrix& z, const Laplacian& l) {
  Matrix lz(z.rows(), z.cols());
  kernels::matmul(l.matrix.data(), l.size(), l.size(), z.data(), z.cols(),
                  lz.data());
  return kernels::dot_product(z.data(), lz.data(), z.size());
}

}  // namespace

double smlq_objective(const Matrix& z, const Laplacian& l_x,
                      const Laplacian& l_y, double alpha) {
  check_dims(z, l_x, l_y);
  return quadratic_form(z, l_x) - alpha * quadratic_form(z, l_y);
}

Matrix smlq_iterate(const Matrix& x_prev, const Laplacian& l_x,
                    const Laplacian& l_y, double alpha) {
  check_dims(x_prev, l_x, l_y);
  const std::size_t n = x_prev.rows();
  const std::size_t k = x_prev.cols();

  // Materializing the bracket keeps the fixed point exact: when
  // alpha L_Y - L_X annihilates x_prev entrywise, the update is identically
  // x_prev.
  Matrix bracket(n, n);
  for (std::size_t i = 0; i < n * n; ++i) {
    bracket.data()[i] = alpha * l_y.matrix.data()[i] - l_x.matrix.data()[i];
  }

  Matrix bx(n, k);
  kernels::matmul(bracket.data(), n, n, x_prev.data(), k, bx.data());

  Matrix out(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = l_x.matrix(i, i);
    const double dinv = d > kDiagPinvTolerance ? 1.0 / d : 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      out(i, j) = 0.5 * dinv * bx(i, j) + x_prev(i, j);
    }
  }
  return out;
}

Embedding run_smlq(const Matrix& features, const LabelVector& labels,
                   const SmlqConfig& config, const Matrix& init) {
  if (labels.size() != features.rows()) {
    throw DimensionMismatch("label count " + std::to_string(labels.size()) +
                            " does not match feature rows " +
                            std::to_string(features.rows()));
  }
  if (init.rows() != features.rows()) {
    throw DimensionMismatch("init must have one row per feature row");
  }
  const Laplacian l_x =
      gaussian_kernel_laplacian(features, config.kernel_bandwidth);
  const Laplacian l_y = label_laplacian(labels, config.kernel_bandwidth);

  Embedding result;
  result.matrix = init;
  result.objective_trace.push_back(
      smlq_objective(result.matrix, l_x, l_y, config.alpha));
  for (std::size_t t = 1; t <= config.max_iterations; ++t) {
    result.matrix = smlq_iterate(result.matrix, l_x, l_y, config.alpha);
    const double v = smlq_objective(result.matrix, l_x, l_y, config.alpha);
    const double prev = result.objective_trace.back();
    result.objective_trace.push_back(v);
    result.iterations_run = t;
    if (std::abs(v - prev) / std::max(1.0, std::abs(prev)) <
        config.rel_tolerance) {
      break;
    }
  }
  return result;
}

Embedding run_smlq(const Matrix& features, const LabelVector& labels,
                   const SmlqConfig& config, std::uint64_t seed) {
  const Matrix init = gaussian_matrix(features.rows(), config.embed_dim,
                                      config.init_stddev, seed);
  return run_smlq(features, labels, config, init);
}

}  // namespace privmail
