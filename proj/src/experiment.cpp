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

#include "privmail/experiment.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "privmail/errors.hpp"

namespace privmail {

void ExperimentConfig::validate() const {
  if (epsilons.empty()) throw Error("epsilon list must be non-empty");
  for (const double e : epsilons) {
    if (!(e > 0.0)) throw InvalidBudget("epsilons must be positive");
  }
  if (trials < 1) throw Error("trials must be at least 1");
  if (output_file.empty()) throw Error("output_file must be set");
  for (const auto* p : {&query_file, &public_file, &server_file}) {
    if (p->empty()) throw Error("query_file, public_file and server_file must all be set");
  }
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double to_double(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line_no, "not a number: '" + s + "'");
  }
  return v;
}

std::uint64_t to_u64(const std::string& s, std::size_t line_no) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line_no, "not a nonnegative integer: '" + s + "'");
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value, std::size_t line_no) {
  if (key == "query_file") {
    config.query_file = value;
  } else if (key == "public_file") {
    config.public_file = value;
  } else if (key == "server_file") {
    config.server_file = value;
  } else if (key == "output_file") {
    config.output_file = value;
  } else if (key == "epsilons") {
    config.epsilons.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      config.epsilons.push_back(to_double(trim(item), line_no));
    }
  } else if (key == "trials") {
    config.trials = to_u64(value, line_no);
  } else if (key == "alpha") {
    config.retrieval.smlq.alpha = to_double(value, line_no);
  } else if (key == "sigma") {
    config.retrieval.smlq.kernel_bandwidth = to_double(value, line_no);
  } else if (key == "sigma_q") {
    config.retrieval.smlq.init_stddev = to_double(value, line_no);
  } else if (key == "embed_dim") {
    config.retrieval.smlq.embed_dim = to_u64(value, line_no);
  } else if (key == "iterations") {
    config.retrieval.smlq.max_iterations = to_u64(value, line_no);
  } else if (key == "delta") {
    config.retrieval.budget.delta_dp = to_double(value, line_no);
  } else if (key == "top_k") {
    config.retrieval.top_k = to_u64(value, line_no);
  } else if (key == "post_iterations") {
    config.retrieval.post_iterations = to_u64(value, line_no);
  } else if (key == "seed") {
    config.retrieval.seed = to_u64(value, line_no);
  } else {
    throw ParseError(line_no, "unknown config key '" + key + "'");
  }
}

ExperimentConfig parse_experiment_config(const std::filesystem::path& path,
                                         ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  ExperimentConfig config = std::move(base);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no, "expected key=value");
    }
    apply_config_entry(config, trim(line.substr(0, eq)),
                       trim(line.substr(eq + 1)), line_no);
  }
  return config;
}

std::string format_results(const ExperimentConfig& config,
                           const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "# privmail sweep results\n";
  out << "# artifact_version: " << kArtifactVersion << "\n";
  out << "# query_file: " << config.query_file.string() << "\n";
  out << "# public_file: " << config.public_file.string() << "\n";
  out << "# server_file: " << config.server_file.string() << "\n";
  out << "# seed: " << config.retrieval.seed << "\n";
  out << "# trials: " << config.trials << "\n";
  out << "# top_k: " << config.retrieval.top_k << "\n";
  out << "# post_iterations: " << config.retrieval.post_iterations << "\n";
  out << "# alpha: " << format_double(config.retrieval.smlq.alpha) << "\n";
  out << "# sigma: " << format_double(config.retrieval.smlq.kernel_bandwidth)
      << "\n";
  out << "# sigma_q: " << format_double(config.retrieval.smlq.init_stddev)
      << "\n";
  out << "# embed_dim: " << config.retrieval.smlq.embed_dim << "\n";
  out << "# delta_dp: " << format_double(config.retrieval.budget.delta_dp)
      << "\n";
  out << "epsilon,mean_recall,std_recall,trials,delta_sensitivity,"
         "noise_stddev\n";
  for (const auto& row : rows) {
    out << format_double(row.epsilon) << "," << format_double(row.mean_recall)
        << "," << format_double(row.std_recall) << "," << row.trials << ","
        << format_double(row.mean_delta) << ","
        << format_double(row.mean_noise_stddev) << "\n";
  }
  return out.str();
}

std::vector<SweepRow> run_experiment(const ExperimentConfig& config) {
  config.validate();

  SweepInputs inputs;
  inputs.queries = load_features(config.query_file, Role::kQuery);
  inputs.public_data = load_features(config.public_file, Role::kPublic);
  inputs.server_db = load_features(config.server_file, Role::kServer);

  const auto rows = privacy_utility_sweep(inputs, config.epsilons,
                                          config.trials, config.retrieval);

  const std::string text = format_results(config, rows);
  const auto tmp = config.output_file.string() + ".tmp";
  {
    std::ofstream file(tmp, std::ios::trunc);
    if (!file) throw Error("cannot write " + tmp);
    file << text;
  }
  std::filesystem::rename(tmp, config.output_file);
  return rows;
}

}  // namespace privmail
