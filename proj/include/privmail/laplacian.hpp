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

#ifndef PRIVMAIL_LAPLACIAN_HPP_
#define PRIVMAIL_LAPLACIAN_HPP_

#include "privmail/matrix.hpp"

namespace privmail {

// Tolerance below which a Laplacian diagonal entry is treated as zero by the
// diagonal pseudo-inverse.
inline constexpr double kDiagPinvTolerance = 1e-12;

// Graph Laplacian L = D - W over a Gaussian-kernel adjacency,
// W(i,j) = exp(-||x_i - x_j||^2 / (2 sigma^2)). Symmetric, zero row sums,
// off-diagonals in [-1, 0), nonnegative diagonal.
struct Laplacian {
  Matrix matrix;
  double kernel_bandwidth = 0.0;

  std::size_t size() const { return matrix.rows(); }
};

// Rescales every row of m to unit Euclidean norm. Throws ZeroRow if a row's
// norm is below 1e-300.
Matrix normalize_rows(const Matrix& m);

// Builds the Gaussian-kernel graph Laplacian over the rows of `points`.
// Throws InvalidBandwidth if sigma <= 0 and TooFewRows if points has fewer
// than two rows.
Laplacian gaussian_kernel_laplacian(const Matrix& points,
                                    double kernel_bandwidth);

// Same construction with the integer labels treated as 1-d points.
Laplacian label_laplacian(const LabelVector& labels, double kernel_bandwidth);

// Diagonal pseudo-inverse: diag(1 / L_ii) with entries whose diagonal is at
// most kDiagPinvTolerance mapped to zero.
Matrix diag_pseudo_inverse(const Laplacian& l);

}  // namespace privmail

#endif  // PRIVMAIL_LAPLACIAN_HPP_
