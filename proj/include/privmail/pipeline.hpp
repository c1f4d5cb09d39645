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

#ifndef PRIVMAIL_PIPELINE_HPP_
#define PRIVMAIL_PIPELINE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "privmail/dataset.hpp"
#include "privmail/matrix.hpp"
#include "privmail/mechanism.hpp"
#include "privmail/smlq.hpp"

namespace privmail {

struct RetrievalConfig {
  SmlqConfig smlq;
  PrivacyBudget budget;
  std::size_t top_k = 8;
  std::size_t post_iterations = 5;  // T
  std::uint64_t seed = 0;
};

// One public exemplar per class other than target_label, sampled uniformly
// from the public dataset. Dummy ids carry a "d:" prefix so they stay unique
// after concatenation with the public rows they were drawn from.
FeatureDataset build_dummy_targets(const FeatureDataset& public_data,
                                   int target_label, std::uint64_t seed);

// Output of the privatized half of the client pipeline: the released
// one-iteration embedding plus the per-row bookkeeping the client keeps to
// parse results later. Everything downstream of this struct is
// post-processing and never touches the raw features again.
struct ClientPrivateStage {
  Matrix released;  // noised single-iteration embedding
  std::vector<std::string> row_ids;
  std::vector<Role> row_roles;
  LabelVector row_labels;
  SensitivityBound bound;
  NoiseCalibration calib;
};

// Obfuscation, anchoring, normalization and the single private release:
// concatenates {query U dummies} U public, shuffles the rows with a seeded
// stream (a fixed order would reveal the query's position), row-normalizes,
// and runs the release mechanism once.
ClientPrivateStage client_private_stage(const FeatureDataset& query,
                                        const FeatureDataset& public_data,
                                        const RetrievalConfig& config);

// Post-processing iterations: rebuilds the feature Laplacian from the
// released embedding (not from raw data; this function never sees a feature
// matrix) and applies post_iterations further query iterations with it.
Matrix client_post_process(const Matrix& released, const LabelVector& labels,
                           const SmlqConfig& smlq,
                           std::size_t post_iterations);

struct ClientPipelineResult {
  Matrix private_embedding;
  std::vector<std::string> row_ids;
  std::vector<Role> row_roles;
  LabelVector row_labels;
  SensitivityBound bound;
  NoiseCalibration calib;
};

// client_private_stage followed by client_post_process.
ClientPipelineResult client_pipeline(const FeatureDataset& query,
                                     const FeatureDataset& public_data,
                                     const RetrievalConfig& config);

// Noise-free reference: identical structure and identical seed streams (same
// dummies, shuffle and initialization), with the privatization step skipped.
// bound and calib are left zeroed.
ClientPipelineResult client_pipeline_nonprivate(
    const FeatureDataset& query, const FeatureDataset& public_data,
    const RetrievalConfig& config);

struct ServerPipelineResult {
  Matrix embedding;
  std::vector<std::string> row_ids;
  std::vector<Role> row_roles;
  LabelVector row_labels;
  std::vector<double> objective_trace;
};

// Server side: concatenates server U public, row-normalizes and runs the
// plain (non-private) query for 1 + post_iterations iterations.
ServerPipelineResult server_pipeline(const FeatureDataset& server_db,
                                     const FeatureDataset& public_data,
                                     const RetrievalConfig& config);

struct Match {
  std::string id;
  double distance = 0.0;
  int label = 0;
};

struct RankedList {
  std::string client_id;
  Role role = Role::kQuery;
  std::vector<Match> matches;  // ascending distance, ties broken by id
};

// Aligns the client embedding onto the server frame using the shared public
// anchor rows (matched by id), then returns the top_k nearest server-database
// rows for every query and dummy row. Public anchors are excluded from the
// candidate pool.
std::vector<RankedList> retrieve(const ClientPipelineResult& client_out,
                                 const ServerPipelineResult& server_out,
                                 std::size_t top_k);

// Result parsing: keeps only the true query rows' lists.
std::vector<RankedList> parse_results(const std::vector<RankedList>& lists);

// Fraction of queries whose first k matches contain at least one item of the
// query's class. query_labels[i] pairs with query_lists[i].
double recall_at_k(const std::vector<RankedList>& query_lists,
                   const std::vector<int>& query_labels, std::size_t k);

struct SweepInputs {
  FeatureDataset queries;  // one pipeline run per row
  FeatureDataset public_data;
  FeatureDataset server_db;
};

struct SweepRow {
  double epsilon = 0.0;
  double mean_recall = 0.0;
  double std_recall = 0.0;
  std::size_t trials = 0;
  double mean_delta = 0.0;         // sensitivity bound, averaged over runs
  double mean_noise_stddev = 0.0;  // calibrated noise scale, averaged
};

// Runs the full pipeline for every (epsilon, trial, query) with per-run
// derived seeds that do not depend on epsilon, so sweeps share their random
// draws across privacy levels. Recall is aggregated per trial; mean and
// population std are taken over trials.
std::vector<SweepRow> privacy_utility_sweep(const SweepInputs& inputs,
                                            const std::vector<double>& epsilons,
                                            std::size_t trials,
                                            const RetrievalConfig& base);

// Recall of the noise-free reference pipeline under the same derived seeds.
double nonprivate_sweep_recall(const SweepInputs& inputs, std::size_t trials,
                               const RetrievalConfig& base);

}  // namespace privmail

#endif  // PRIVMAIL_PIPELINE_HPP_
