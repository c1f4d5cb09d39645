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

#include "privmail/laplacian.hpp"

#include <vector>

#include "privmail/errors.hpp"
#include "privmail/kernels.hpp"

namespace privmail {

Matrix normalize_rows(const Matrix& m) {
  std::vector<double> norms(m.rows());
  kernels::row_norms(m.data(), m.rows(), m.cols(), norms.data());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (norms[i] < 1e-300) throw ZeroRow(i);
  }
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = m(i, j) / norms[i];
    }
  }
  return out;
}

Laplacian gaussian_kernel_laplacian(const Matrix& points,
                                    double kernel_bandwidth) {
  if (kernel_bandwidth <= 0.0) throw InvalidBandwidth(kernel_bandwidth);
  const std::size_t n = points.rows();
  if (n < 2) throw TooFewRows(n);

  Matrix w(n, n);
  kernels::gaussian_weights(points.data(), n, points.cols(), kernel_bandwidth,
                            w.data());

  // L = diag(row sums of W) - W. The diagonal sums the same kernel values
  // that appear negated off-diagonal, so rows cancel to zero up to roundoff.
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double degree = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      degree += w(i, j);
      l(i, j) = -w(i, j);
    }
    l(i, i) = degree;
  }
  return Laplacian{std::move(l), kernel_bandwidth};
}

Laplacian label_laplacian(const LabelVector& labels, double kernel_bandwidth) {
  Matrix pts(labels.size(), 1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    pts(i, 0) = static_cast<double>(labels[i]);
  }
  return gaussian_kernel_laplacian(pts, kernel_bandwidth);
}

Matrix diag_pseudo_inverse(const Laplacian& l) {
  const std::size_t n = l.size();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = l.matrix(i, i);
    out(i, i) = d > kDiagPinvTolerance ? 1.0 / d : 0.0;
  }
  return out;
}

}  // namespace privmail
