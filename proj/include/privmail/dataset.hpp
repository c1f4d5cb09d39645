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

#ifndef PRIVMAIL_DATASET_HPP_
#define PRIVMAIL_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "privmail/matrix.hpp"

namespace privmail {

enum class Role { kQuery, kDummy, kPublic, kServer };

std::string to_string(Role role);

// A set of labeled feature vectors with per-row opaque identifiers.
struct FeatureDataset {
  std::vector<std::string> ids;
  Matrix features;
  LabelVector labels;
  Role role = Role::kPublic;

  std::size_t size() const { return ids.size(); }
  // Enforces matching lengths and unique ids; throws DuplicateId / Error.
  void validate() const;
};

// Feature file grammar: a header line "id,label,f_0,...,f_{d-1}" followed by
// one comma-separated row per record. Values are printed with 17 significant
// digits so a save/load round trip is lossless.
FeatureDataset load_features(const std::filesystem::path& path,
                             Role role = Role::kPublic);
void save_features(const FeatureDataset& dataset,
                   const std::filesystem::path& path);

// Gaussian clusters around unit-norm, mutually separated class centers.
// Rows are emitted unnormalized; ids are id_prefix + zero-padded index.
// Deterministic for a given seed.
FeatureDataset generate_synthetic(std::size_t classes, std::size_t per_class,
                                  std::size_t dim, double cluster_spread,
                                  std::uint64_t seed,
                                  const std::string& id_prefix = "x",
                                  Role role = Role::kPublic);

// Rows `rows` of `dataset` as a new dataset with the given role; each id is
// prefixed so subsets drawn from one pool stay distinguishable.
FeatureDataset subset(const FeatureDataset& dataset,
                      const std::vector<std::size_t>& rows, Role role,
                      const std::string& id_prefix);

}  // namespace privmail

#endif  // PRIVMAIL_DATASET_HPP_
