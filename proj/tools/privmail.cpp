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

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "privmail/dataset.hpp"
#include "privmail/errors.hpp"
#include "privmail/experiment.hpp"
#include "privmail/laplacian.hpp"
#include "privmail/mechanism.hpp"
#include "privmail/pipeline.hpp"
#include "privmail/rng.hpp"
#include "privmail/sensitivity.hpp"
#include "privmail/smlq.hpp"

namespace {

using namespace privmail;

// Exit codes, one family per error type so batch harnesses can triage.
constexpr int kExitOk = 0;
constexpr int kExitBoundViolated = 1;
constexpr int kExitInput = 3;       // ParseError, DuplicateId
constexpr int kExitBound = 4;       // NonPositiveBound
constexpr int kExitAnchors = 5;     // DegenerateAnchors
constexpr int kExitDomain = 6;      // any other library error
constexpr int kExitInternal = 7;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PRIVMAIL_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// for console summaries; files always carry full precision
std::string fmt_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// Embeddings are written in the feature-file grammar: the embedding columns
// become the feature columns.
void save_embedding(const std::vector<std::string>& ids,
                    const LabelVector& labels, const Matrix& embedding,
                    const std::string& path) {
  FeatureDataset out;
  out.ids = ids;
  out.labels = labels;
  out.features = embedding;
  save_features(out, path);
}

struct SmlqFlags {
  SmlqConfig config;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", config.alpha, "label-term weight");
    cmd->add_option("--sigma", config.kernel_bandwidth,
                    "Gaussian kernel bandwidth");
    cmd->add_option("--sigma-q", config.init_stddev,
                    "stddev of the random embedding initialization");
    cmd->add_option("--embed-dim", config.embed_dim, "embedding dimension");
    cmd->add_option("--iterations", config.max_iterations,
                    "maximum query iterations");
  }
};

int run_synth(std::size_t classes, std::size_t per_class, std::size_t dim,
              double spread, std::uint64_t seed, const std::string& prefix,
              const std::string& output) {
  const FeatureDataset ds =
      generate_synthetic(classes, per_class, dim, spread, seed, prefix);
  save_features(ds, output);
  std::cout << "wrote " << ds.size() << " rows (" << classes << " classes, dim "
            << dim << ") to " << output << "\n";
  return kExitOk;
}

int run_split_synth(std::size_t classes, std::size_t dim, double spread,
                    std::uint64_t seed, std::size_t server_n,
                    std::size_t public_n, std::size_t query_n,
                    const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::size_t per_class = server_n + public_n + query_n;
  const FeatureDataset pool =
      generate_synthetic(classes, per_class, dim, spread, seed);
  std::vector<std::size_t> srv, pub, qry;
  for (std::size_t c = 0; c < classes; ++c) {
    const std::size_t base = c * per_class;
    for (std::size_t i = 0; i < server_n; ++i) srv.push_back(base + i);
    for (std::size_t i = 0; i < public_n; ++i)
      pub.push_back(base + server_n + i);
    for (std::size_t i = 0; i < query_n; ++i)
      qry.push_back(base + server_n + public_n + i);
  }
  save_features(subset(pool, srv, Role::kServer, "s:"), dir + "/server.csv");
  save_features(subset(pool, pub, Role::kPublic, "p:"), dir + "/public.csv");
  save_features(subset(pool, qry, Role::kQuery, "q:"), dir + "/query.csv");
  std::cout << "wrote server.csv (" << srv.size() << "), public.csv ("
            << pub.size() << "), query.csv (" << qry.size() << ") under "
            << dir << "\n";
  return kExitOk;
}

int run_embed(const std::string& input, const std::string& output,
              const SmlqConfig& config, std::uint64_t seed) {
  const FeatureDataset ds = load_features(input);
  const Embedding emb =
      run_smlq(normalize_rows(ds.features), ds.labels, config, seed);
  save_embedding(ds.ids, ds.labels, emb.matrix, output);
  std::cout << "iterations: " << emb.iterations_run << "\n"
            << "objective: " << fmt(emb.objective_trace.back()) << "\n"
            << "wrote " << output << "\n";
  return kExitOk;
}

int run_privatize(const std::string& input, const std::string& output,
                  const SmlqConfig& config, const PrivacyBudget& budget,
                  std::uint64_t seed) {
  const FeatureDataset ds = load_features(input);
  const PrivateMailResult res = private_mail(normalize_rows(ds.features),
                                             ds.labels, config, budget, seed);
  save_embedding(ds.ids, ds.labels, res.embedding, output);
  std::cout << "delta_sensitivity: " << fmt(res.bound.delta) << "\n"
            << "noise_stddev: " << fmt(res.calib.noise_stddev) << "\n"
            << "wrote " << output << "\n";
  return kExitOk;
}

int run_retrieve(const std::string& query_file, const std::string& public_file,
                 const std::string& server_file, const std::string& output,
                 const RetrievalConfig& config) {
  const FeatureDataset queries = load_features(query_file, Role::kQuery);
  const FeatureDataset public_data = load_features(public_file, Role::kPublic);
  const FeatureDataset server_db = load_features(server_file, Role::kServer);

  const ServerPipelineResult server_out =
      server_pipeline(server_db, public_data, config);

  std::string table = "query_id,rank,match_id,distance,match_label\n";
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    RetrievalConfig cfg = config;
    cfg.seed = derive_seed(config.seed, stream::kSweepRun, 0, qi);
    const FeatureDataset query = subset(queries, {qi}, Role::kQuery, "");
    const auto client = client_pipeline(query, public_data, cfg);
    const auto parsed =
        parse_results(retrieve(client, server_out, config.top_k));
    for (const auto& list : parsed) {
      for (std::size_t r = 0; r < list.matches.size(); ++r) {
        const auto& m = list.matches[r];
        table += list.client_id + "," + std::to_string(r + 1) + "," + m.id +
                 "," + fmt(m.distance) + "," + std::to_string(m.label) + "\n";
        std::cout << list.client_id << " #" << (r + 1) << "  " << m.id
                  << "  label=" << m.label << "  dist="
                  << fmt_short(m.distance) << "\n";
      }
    }
  }
  if (!output.empty()) {
    std::ofstream out(output, std::ios::trunc);
    if (!out) throw Error("cannot write " + output);
    out << table;
  }
  return kExitOk;
}

int run_verify_bound(std::size_t n, double alpha, double sigma, int classes_c,
                     double q_frobenius, std::size_t embed_dim,
                     std::size_t feature_dim, std::size_t trials,
                     std::uint64_t seed) {
  SensitivityParams params;
  params.n = n;
  params.alpha = alpha;
  params.kernel_bandwidth = sigma;
  params.num_classes_minus_one = classes_c;
  params.q_frobenius = q_frobenius;

  const SensitivityBound bound = compute_delta(params);
  std::cout << "M_ii: " << fmt(bound.m_ii) << "\n"
            << "M_ij: " << fmt(bound.m_ij) << "\n"
            << "M: " << fmt(bound.m_composite) << "\n"
            << "delta: " << fmt(bound.delta) << "\n";

  const VerifierReport report =
      verify_bound_empirically(params, embed_dim, feature_dim, trials, seed);
  std::cout << "trials: " << trials << "\n"
            << "max_observed: " << fmt(report.max_observed) << "\n"
            << "satisfied: " << (report.satisfied ? "true" : "false") << "\n";
  return report.satisfied ? kExitOk : kExitBoundViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PrivateMail: differentially private supervised manifold "
               "embeddings and private image retrieval over feature files"};
  app.require_subcommand(1);

  std::uint64_t seed = default_seed();
  app.add_option("--seed", seed,
                 "RNG seed (falls back to PRIVMAIL_SEED, then 0)");

  // ---- synth ----
  auto* synth = app.add_subcommand("synth", "generate synthetic feature files");
  std::size_t classes = 5, per_class = 20, dim = 16;
  double spread = 0.05;
  std::string prefix = "x";
  std::string synth_output = "features.csv";
  std::string split_spec, output_dir = ".";
  synth->add_option("--classes", classes, "number of classes");
  synth->add_option("--per-class", per_class, "rows per class");
  synth->add_option("--dim", dim, "feature dimension");
  synth->add_option("--spread", spread, "cluster standard deviation");
  synth->add_option("--prefix", prefix, "id prefix");
  synth->add_option("--output", synth_output, "output file (single dataset)");
  synth->add_option("--split", split_spec,
                    "emit three files instead: server=N,public=N,query=N");
  synth->add_option("--output-dir", output_dir,
                    "directory for --split output files");

  // ---- embed ----
  auto* embed = app.add_subcommand(
      "embed", "run the supervised manifold embedding without privacy");
  std::string embed_input, embed_output = "embedding.csv";
  SmlqFlags embed_flags;
  embed->add_option("--input", embed_input, "feature file")->required();
  embed->add_option("--output", embed_output, "embedding output file");
  embed_flags.attach(embed);

  // ---- privatize ----
  auto* privatize = app.add_subcommand(
      "privatize", "run one private release iteration with calibrated noise");
  std::string priv_input, priv_output = "private_embedding.csv";
  SmlqFlags priv_flags;
  PrivacyBudget priv_budget;
  privatize->add_option("--input", priv_input, "feature file")->required();
  privatize->add_option("--output", priv_output, "embedding output file");
  priv_flags.attach(privatize);
  privatize->add_option("--epsilon", priv_budget.epsilon, "privacy budget");
  privatize->add_option("--delta", priv_budget.delta_dp, "privacy slack");

  // ---- retrieve ----
  auto* retrieve_cmd = app.add_subcommand(
      "retrieve", "private retrieval of nearest matches for each query row");
  std::string ret_query, ret_public, ret_server, ret_output;
  SmlqFlags ret_flags;
  RetrievalConfig ret_config;
  retrieve_cmd->add_option("--query", ret_query, "query feature file")
      ->required();
  retrieve_cmd->add_option("--public", ret_public, "public feature file")
      ->required();
  retrieve_cmd->add_option("--server", ret_server, "server feature file")
      ->required();
  retrieve_cmd->add_option("--output", ret_output, "matches output file");
  ret_flags.attach(retrieve_cmd);
  retrieve_cmd->add_option("--epsilon", ret_config.budget.epsilon,
                           "privacy budget");
  retrieve_cmd->add_option("--delta", ret_config.budget.delta_dp,
                           "privacy slack");
  retrieve_cmd->add_option("--top-k", ret_config.top_k, "matches per query");
  retrieve_cmd->add_option("--post-iterations", ret_config.post_iterations,
                           "post-processing iterations");

  // ---- sweep ----
  auto* sweep = app.add_subcommand(
      "sweep", "privacy-utility curve over a list of epsilons");
  std::string sweep_config_path;
  std::vector<std::string> sweep_overrides;
  std::string sweep_query, sweep_public, sweep_server, sweep_output;
  std::vector<double> sweep_epsilons;
  std::size_t sweep_trials = 0;
  SmlqFlags sweep_flags;
  double sweep_delta = -1.0;
  std::size_t sweep_top_k = 0, sweep_post_iters = static_cast<std::size_t>(-1);
  sweep->add_option("--config", sweep_config_path,
                    "key=value config file (flags win over file values)");
  sweep->add_option("--query", sweep_query, "query feature file");
  sweep->add_option("--public", sweep_public, "public feature file");
  sweep->add_option("--server", sweep_server, "server feature file");
  sweep->add_option("--output", sweep_output, "results file");
  sweep->add_option("--epsilon", sweep_epsilons, "epsilon values (repeatable)");
  sweep->add_option("--trials", sweep_trials, "trials per epsilon");
  sweep_flags.attach(sweep);
  sweep->add_option("--delta", sweep_delta, "privacy slack");
  sweep->add_option("--top-k", sweep_top_k, "matches per query");
  sweep->add_option("--post-iterations", sweep_post_iters,
                    "post-processing iterations");

  // ---- verify-bound ----
  auto* verify = app.add_subcommand(
      "verify-bound", "brute-force check of the sensitivity bound");
  std::size_t vb_n = 4, vb_trials = 10000, vb_embed = 2, vb_dim = 2;
  double vb_alpha = 0.5, vb_sigma = 1.0, vb_qf = 1.0;
  int vb_classes = 1;
  verify->add_option("--n", vb_n, "dataset rows");
  verify->add_option("--alpha", vb_alpha, "label-term weight");
  verify->add_option("--sigma", vb_sigma, "kernel bandwidth");
  verify->add_option("--classes", vb_classes, "maximum label c");
  verify->add_option("--q-frobenius", vb_qf, "Frobenius norm of Q");
  verify->add_option("--embed-dim", vb_embed, "embedding dimension");
  verify->add_option("--dim", vb_dim, "feature dimension");
  verify->add_option("--trials", vb_trials, "random neighboring pairs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      if (!split_spec.empty()) {
        std::size_t server_n = 0, public_n = 0, query_n = 0;
        if (std::sscanf(split_spec.c_str(), "server=%zu,public=%zu,query=%zu",
                        &server_n, &public_n, &query_n) != 3 ||
            server_n == 0 || public_n == 0 || query_n == 0) {
          std::cerr << "--split must look like server=20,public=5,query=2\n";
          return kExitDomain;
        }
        return run_split_synth(classes, dim, spread, seed, server_n, public_n,
                               query_n, output_dir);
      }
      return run_synth(classes, per_class, dim, spread, seed, prefix,
                       synth_output);
    }
    if (embed->parsed()) {
      return run_embed(embed_input, embed_output, embed_flags.config, seed);
    }
    if (privatize->parsed()) {
      return run_privatize(priv_input, priv_output, priv_flags.config,
                           priv_budget, seed);
    }
    if (retrieve_cmd->parsed()) {
      ret_config.smlq = ret_flags.config;
      ret_config.seed = seed;
      return run_retrieve(ret_query, ret_public, ret_server, ret_output,
                          ret_config);
    }
    if (sweep->parsed()) {
      ExperimentConfig config;
      config.retrieval.seed = seed;  // env/default baseline
      if (!sweep_config_path.empty()) {
        config = parse_experiment_config(sweep_config_path, config);
      }
      // flags override config-file values
      if (!sweep_query.empty()) config.query_file = sweep_query;
      if (!sweep_public.empty()) config.public_file = sweep_public;
      if (!sweep_server.empty()) config.server_file = sweep_server;
      if (!sweep_output.empty()) config.output_file = sweep_output;
      if (!sweep_epsilons.empty()) config.epsilons = sweep_epsilons;
      if (sweep_trials > 0) config.trials = sweep_trials;
      if (sweep->count("--alpha")) config.retrieval.smlq.alpha = sweep_flags.config.alpha;
      if (sweep->count("--sigma")) config.retrieval.smlq.kernel_bandwidth = sweep_flags.config.kernel_bandwidth;
      if (sweep->count("--sigma-q")) config.retrieval.smlq.init_stddev = sweep_flags.config.init_stddev;
      if (sweep->count("--embed-dim")) config.retrieval.smlq.embed_dim = sweep_flags.config.embed_dim;
      if (sweep->count("--iterations")) config.retrieval.smlq.max_iterations = sweep_flags.config.max_iterations;
      if (sweep_delta > 0.0) config.retrieval.budget.delta_dp = sweep_delta;
      if (sweep_top_k > 0) config.retrieval.top_k = sweep_top_k;
      if (sweep_post_iters != static_cast<std::size_t>(-1)) {
        config.retrieval.post_iterations = sweep_post_iters;
      }
      if (app.count("--seed")) config.retrieval.seed = seed;  // flag wins
      const auto rows = run_experiment(config);
      for (const auto& row : rows) {
        std::cout << "epsilon " << fmt_short(row.epsilon) << ": recall "
                  << fmt_short(row.mean_recall) << " +- "
                  << fmt_short(row.std_recall) << "\n";
      }
      std::cout << "wrote " << config.output_file.string() << "\n";
      return kExitOk;
    }
    if (verify->parsed()) {
      return run_verify_bound(vb_n, vb_alpha, vb_sigma, vb_classes, vb_qf,
                              vb_embed, vb_dim, vb_trials, seed);
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DuplicateId& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NonPositiveBound& e) {
    std::cerr << "sensitivity error: " << e.what() << "\n";
    return kExitBound;
  } catch (const DegenerateAnchors& e) {
    std::cerr << "alignment error: " << e.what() << "\n";
    return kExitAnchors;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
