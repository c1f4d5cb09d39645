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

#ifndef PRIVMAIL_SMLQ_HPP_
#define PRIVMAIL_SMLQ_HPP_

#include <cstdint>
#include <vector>

#include "privmail/laplacian.hpp"
#include "privmail/matrix.hpp"

namespace privmail {

// Parameters of the supervised manifold learning query.
struct SmlqConfig {
  double alpha = 0.6;              // weight of the label Laplacian term
  double kernel_bandwidth = 6.0;   // sigma of the Gaussian kernel
  std::size_t embed_dim = 2;       // k
  double init_stddev = 1e-8;       // sigma_q of the random initialization
  std::size_t max_iterations = 25;
  double rel_tolerance = 1e-6;
};

struct Embedding {
  Matrix matrix;                       // n x embed_dim
  std::size_t iterations_run = 0;
  std::vector<double> objective_trace;  // initial value plus one per iteration
};

// v(z) = Tr(z^T L_X z) - alpha * Tr(z^T L_Y z).
double smlq_objective(const Matrix& z, const Laplacian& l_x,
                      const Laplacian& l_y, double alpha);

// One majorization-minimization step:
//   (1/2) Diag(L_X)^+ [alpha L_Y - L_X] x_prev + x_prev.
// The step never increases the objective (for alpha >= 0) and fixes any x
// with [alpha L_Y - L_X] x = 0.
Matrix smlq_iterate(const Matrix& x_prev, const Laplacian& l_x,
                    const Laplacian& l_y, double alpha);

// Iterates from `init` until the relative objective change
// |v_t - v_{t-1}| / max(1, |v_{t-1}|) drops below rel_tolerance or
// max_iterations is reached. Laplacians are built once from the inputs.
// Features are expected to be row-normalized by the caller.
Embedding run_smlq(const Matrix& features, const LabelVector& labels,
                   const SmlqConfig& config, const Matrix& init);

// Same, initializing with i.i.d. N(0, init_stddev^2) entries drawn from seed.
Embedding run_smlq(const Matrix& features, const LabelVector& labels,
                   const SmlqConfig& config, std::uint64_t seed);

}  // namespace privmail

#endif  // PRIVMAIL_SMLQ_HPP_
