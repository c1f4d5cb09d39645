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

#include "privmail/alignment.hpp"

#include <string>

#include <Eigen/Dense>

#include "privmail/errors.hpp"

namespace privmail {

RigidTransform estimate_transform(const Matrix& source_anchors,
                                  const Matrix& target_anchors) {
  const std::size_t m = source_anchors.rows();
  const std::size_t k = source_anchors.cols();
  if (target_anchors.rows() != m || target_anchors.cols() != k || k == 0) {
    throw DimensionMismatch("anchor sets must have identical m x k shapes");
  }
  if (m < k + 1) {
    throw DegenerateAnchors("need at least k+1 = " + std::to_string(k + 1) +
                            " anchors, got " + std::to_string(m));
  }

  Eigen::MatrixXd src(m, k), tgt(m, k);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      src(i, j) = source_anchors(i, j);
      tgt(i, j) = target_anchors(i, j);
    }
  }

  const Eigen::RowVectorXd mu_src = src.colwise().mean();
  const Eigen::RowVectorXd mu_tgt = tgt.colwise().mean();
  const Eigen::MatrixXd src_c = src.rowwise() - mu_src;
  const Eigen::MatrixXd tgt_c = tgt.rowwise() - mu_tgt;

  const double src_var = src_c.squaredNorm() / static_cast<double>(m);
  if (src_var < 1e-24) {
    throw DegenerateAnchors("source anchors are all coincident");
  }

  // Rank of the source covariance must be at least k-1 for the closed form
  // to determine a unique proper rotation.
  const Eigen::MatrixXd src_cov =
      src_c.transpose() * src_c / static_cast<double>(m);
  Eigen::JacobiSVD<Eigen::MatrixXd> cov_svd(src_cov);
  const auto& sv = cov_svd.singularValues();
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > 1e-12 * sv[0]) ++rank;
  }
  if (rank + 1 < k) {
    throw DegenerateAnchors("source covariance rank " + std::to_string(rank) +
                            " is below k-1");
  }

  const Eigen::MatrixXd cross =
      tgt_c.transpose() * src_c / static_cast<double>(m);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      cross, Eigen::ComputeFullU | Eigen::ComputeFullV);

  Eigen::VectorXd sign_fix = Eigen::VectorXd::Ones(k);
  if (svd.matrixU().determinant() * svd.matrixV().determinant() < 0.0) {
    sign_fix(k - 1) = -1.0;
  }

  const Eigen::MatrixXd rot =
      svd.matrixU() * sign_fix.asDiagonal() * svd.matrixV().transpose();
  const double scale =
      (svd.singularValues().array() * sign_fix.array()).sum() / src_var;
  const Eigen::VectorXd trans =
      mu_tgt.transpose() - scale * rot * mu_src.transpose();

  RigidTransform out;
  out.rotation = Matrix(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) out.rotation(i, j) = rot(i, j);
  }
  out.scale = scale;
  out.translation.assign(trans.data(), trans.data() + k);
  return out;
}

Matrix apply_transform(const RigidTransform& t, const Matrix& points) {
  const std::size_t k = t.rotation.rows();
  if (points.cols() != k) {
    throw DimensionMismatch("points have " + std::to_string(points.cols()) +
                            " columns, transform expects " +
                            std::to_string(k));
  }
  Matrix out(points.rows(), k);
  for (std::size_t i = 0; i < points.rows(); ++i) {
    for (std::size_t r = 0; r < k; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < k; ++c) {
        acc += t.rotation(r, c) * points(i, c);
      }
      out(i, r) = t.scale * acc + t.translation[r];
    }
  }
  return out;
}

}  // namespace privmail
