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

#ifndef PRIVMAIL_SENSITIVITY_HPP_
#define PRIVMAIL_SENSITIVITY_HPP_

#include <cstdint>
#include <optional>

namespace privmail {

// Inputs of the closed-form global-sensitivity bound for the first query
// iteration. The bound covers neighboring datasets that differ by appending
// one unit-norm row to an n-row dataset whose rows are unit norm and whose
// labels lie in {0, ..., num_classes_minus_one}.
struct SensitivityParams {
  std::size_t n = 0;                 // rows in the original dataset
  double alpha = 0.0;                // label-term weight
  double kernel_bandwidth = 1.0;     // sigma
  int num_classes_minus_one = 1;     // c: labels range over {0, ..., c}
  double q_frobenius = 0.0;          // Frobenius norm of the realized init Q

  void validate() const;
};

struct SensitivityBound {
  double m_ii = 0.0;
  double m_ij = 0.0;
  double m_composite = 0.0;  // M = n * m_ij + m_ii
  double delta = 0.0;        // M * sqrt(n + 1) * ||Q||_F / 2
};

// Worst-case bound on the squared diagonal entries of the iterate-difference
// map. Proportional to alpha^2 exactly.
double compute_m_ii(const SensitivityParams& params);

// Worst-case bound on the squared off-diagonal entries (six terms).
double compute_m_ij(const SensitivityParams& params);

// Combines the two constants into M = n * M_ij + M_ii and the bound
// Delta = M * sqrt(n + 1) * ||Q||_F / 2. Throws NonPositiveBound unless
// M > 0: a nonpositive "upper bound" cannot calibrate noise.
SensitivityBound compute_delta(const SensitivityParams& params);

struct VerifierReport {
  double max_observed = 0.0;
  double delta = 0.0;
  bool satisfied = false;
};

// Brute-force check of the bound: samples `trials` random neighboring pairs
// (X with unit-norm rows and X~ = X plus one unit-norm row, labels uniform in
// {0, ..., c}), evaluates the first query iterate on both sides with X and
// the labels padded by a zero row, and reports the maximum Frobenius-norm
// difference against Delta. Q is drawn once from the seed and rescaled to
// params.q_frobenius; trials run on independent substreams and are
// max-reduced, so the report is deterministic. `delta_override` substitutes
// the comparison threshold (used to exercise the failure path).
VerifierReport verify_bound_empirically(
    const SensitivityParams& params, std::size_t embed_dim,
    std::size_t feature_dim, std::size_t trials, std::uint64_t seed,
    std::optional<double> delta_override = std::nullopt);

}  // namespace privmail

#endif  // PRIVMAIL_SENSITIVITY_HPP_
