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

#ifndef PRIVMAIL_EXPERIMENT_HPP_
#define PRIVMAIL_EXPERIMENT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "privmail/pipeline.hpp"

namespace privmail {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Full description of a privacy-utility sweep run.
struct ExperimentConfig {
  std::filesystem::path query_file;
  std::filesystem::path public_file;
  std::filesystem::path server_file;
  std::filesystem::path output_file;
  std::vector<double> epsilons = {0.01, 0.1, 1.0, 10.0};
  std::size_t trials = 20;
  RetrievalConfig retrieval;

  void validate() const;
};

// Flat key=value configuration text; '#' starts a comment. Unknown keys are
// rejected so typos fail loudly. Keys: query_file, public_file, server_file,
// output_file, epsilons (comma separated), trials, alpha, sigma, sigma_q,
// embed_dim, iterations, delta, top_k, post_iterations, seed. Entries are
// applied on top of `base`, so callers can pre-seed defaults.
ExperimentConfig parse_experiment_config(const std::filesystem::path& path,
                                         ExperimentConfig base = {});

// Applies one key=value pair to the config (shared by the config parser and
// the CLI flag overrides).
void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value, std::size_t line_no);

// The plot-ready results table: a '#'-prefixed metadata block with every
// parameter, then one CSV row per epsilon. Written atomically
// (write-then-rename); contains no timestamps so reruns are byte-identical.
std::string format_results(const ExperimentConfig& config,
                           const std::vector<SweepRow>& rows);

// Runs the sweep described by the config and writes the results file.
std::vector<SweepRow> run_experiment(const ExperimentConfig& config);

}  // namespace privmail

#endif  // PRIVMAIL_EXPERIMENT_HPP_
