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

#ifndef PRIVMAIL_ALIGNMENT_HPP_
#define PRIVMAIL_ALIGNMENT_HPP_

#include <vector>

#include "privmail/matrix.hpp"

namespace privmail {

// Similarity transform x -> scale * rotation * x + translation with a proper
// rotation (orthogonal, determinant +1).
struct RigidTransform {
  Matrix rotation;                  // k x k
  double scale = 1.0;
  std::vector<double> translation;  // length k
};

// Least-squares similarity transform mapping source anchor rows onto target
// anchor rows (closed form via SVD of the cross-covariance, with the
// determinant-sign correction so the rotation is never a reflection).
// Requires at least k+1 corresponding rows; throws DegenerateAnchors when the
// source covariance has rank below k-1 or the anchors are all coincident.
RigidTransform estimate_transform(const Matrix& source_anchors,
                                  const Matrix& target_anchors);

// Applies the transform to every row.
Matrix apply_transform(const RigidTransform& t, const Matrix& points);

}  // namespace privmail

#endif  // PRIVMAIL_ALIGNMENT_HPP_
