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

#include "privmail/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <unordered_map>

#include "privmail/alignment.hpp"
#include "privmail/errors.hpp"
#include "privmail/laplacian.hpp"
#include "privmail/rng.hpp"

namespace privmail {

FeatureDataset build_dummy_targets(const FeatureDataset& public_data,
                                   int target_label, std::uint64_t seed) {
  public_data.validate();
  std::map<int, std::vector<std::size_t>> rows_by_class;
  for (std::size_t i = 0; i < public_data.size(); ++i) {
    rows_by_class[public_data.labels[i]].push_back(i);
  }

  Rng rng(seed);
  std::vector<std::size_t> picks;
  for (int c = 0; c <= public_data.labels.max_label(); ++c) {
    if (c == target_label) continue;
    const auto it = rows_by_class.find(c);
    if (it == rows_by_class.end()) throw MissingClass(c);
    picks.push_back(it->second[rng.uniform_index(it->second.size())]);
  }
  return subset(public_data, picks, Role::kDummy, "d:");
}

namespace {

struct AssembledClient {
  Matrix features;  // row-normalized, shuffled
  std::vector<std::string> ids;
  std::vector<Role> roles;
  LabelVector labels;
};

// Obfuscation + anchoring + shuffle + normalization. The released row order
// must not encode which row is the query, so the concatenated rows are
// permuted with a seeded stream before anything leaves this function.
AssembledClient assemble_client(const FeatureDataset& query,
                                const FeatureDataset& public_data,
                                const RetrievalConfig& config) {
  query.validate();
  public_data.validate();
  if (query.size() != 1) {
    throw Error("query dataset must contain exactly one row");
  }
  if (query.features.cols() != public_data.features.cols()) {
    throw DimensionMismatch("query and public feature dimensions differ");
  }

  const FeatureDataset dummies = build_dummy_targets(
      public_data, query.labels[0],
      derive_seed(config.seed, stream::kDummies));

  const std::size_t n = 1 + dummies.size() + public_data.size();
  const std::size_t d = query.features.cols();

  Matrix feats(n, d);
  std::vector<std::string> ids;
  std::vector<Role> roles;
  std::vector<int> labels;
  ids.reserve(n);

  auto append = [&](const FeatureDataset& ds, Role role) {
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const std::size_t r = ids.size();
      for (std::size_t j = 0; j < d; ++j) feats(r, j) = ds.features(i, j);
      ids.push_back(ds.ids[i]);
      roles.push_back(role);
      labels.push_back(ds.labels[i]);
    }
  };
  append(query, Role::kQuery);
  append(dummies, Role::kDummy);
  append(public_data, Role::kPublic);

  Rng shuffle_rng(derive_seed(config.seed, stream::kShuffle));
  const auto perm = shuffle_rng.permutation(n);

  AssembledClient out;
  out.features = Matrix(n, d);
  std::vector<int> perm_labels(n);
  out.ids.resize(n);
  out.roles.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t src = perm[i];
    for (std::size_t j = 0; j < d; ++j) out.features(i, j) = feats(src, j);
    out.ids[i] = ids[src];
    out.roles[i] = roles[src];
    perm_labels[i] = labels[src];
  }
  out.labels = LabelVector(std::move(perm_labels));
  out.features = normalize_rows(out.features);

  FeatureDataset combined;  // borrow its id-uniqueness check
  combined.ids = out.ids;
  combined.features = out.features;
  combined.labels = out.labels;
  combined.validate();
  return out;
}

ClientPipelineResult run_client(const FeatureDataset& query,
                                const FeatureDataset& public_data,
                                const RetrievalConfig& config,
                                bool privatize) {
  AssembledClient parts = assemble_client(query, public_data, config);

  ClientPipelineResult result;
  result.row_ids = std::move(parts.ids);
  result.row_roles = std::move(parts.roles);
  result.row_labels = parts.labels;

  Matrix released;
  if (privatize) {
    PrivateMailResult pm = private_mail(parts.features, parts.labels,
                                        config.smlq, config.budget,
                                        config.seed);
    result.bound = pm.bound;
    result.calib = pm.calib;
    released = std::move(pm.embedding);
  } else {
    const Matrix q = gaussian_matrix(
        parts.features.rows(), config.smlq.embed_dim, config.smlq.init_stddev,
        derive_seed(config.seed, stream::kEmbeddingInit));
    const Laplacian l_x =
        gaussian_kernel_laplacian(parts.features, config.smlq.kernel_bandwidth);
    const Laplacian l_y =
        label_laplacian(parts.labels, config.smlq.kernel_bandwidth);
    released = smlq_iterate(q, l_x, l_y, config.smlq.alpha);
  }

  result.private_embedding = client_post_process(
      released, result.row_labels, config.smlq, config.post_iterations);
  return result;
}

}  // namespace

ClientPrivateStage client_private_stage(const FeatureDataset& query,
                                        const FeatureDataset& public_data,
                                        const RetrievalConfig& config) {
  AssembledClient parts = assemble_client(query, public_data, config);
  PrivateMailResult pm = private_mail(parts.features, parts.labels,
                                      config.smlq, config.budget, config.seed);
  ClientPrivateStage stage;
  stage.released = std::move(pm.embedding);
  stage.row_ids = std::move(parts.ids);
  stage.row_roles = std::move(parts.roles);
  stage.row_labels = std::move(parts.labels);
  stage.bound = pm.bound;
  stage.calib = pm.calib;
  return stage;
}

Matrix client_post_process(const Matrix& released, const LabelVector& labels,
                           const SmlqConfig& smlq,
                           std::size_t post_iterations) {
  if (post_iterations == 0) return released;
  // The Laplacian is rebuilt once, from the released embedding alone, and
  // reused for every further iteration.
  const Laplacian l_x =
      gaussian_kernel_laplacian(released, smlq.kernel_bandwidth);
  const Laplacian l_y = label_laplacian(labels, smlq.kernel_bandwidth);
  Matrix x = released;
  for (std::size_t t = 0; t < post_iterations; ++t) {
    x = smlq_iterate(x, l_x, l_y, smlq.alpha);
  }
  return x;
}

ClientPipelineResult client_pipeline(const FeatureDataset& query,
                                     const FeatureDataset& public_data,
                                     const RetrievalConfig& config) {
  return run_client(query, public_data, config, /*privatize=*/true);
}

ClientPipelineResult client_pipeline_nonprivate(
    const FeatureDataset& query, const FeatureDataset& public_data,
    const RetrievalConfig& config) {
  return run_client(query, public_data, config, /*privatize=*/false);
}

ServerPipelineResult server_pipeline(const FeatureDataset& server_db,
                                     const FeatureDataset& public_data,
                                     const RetrievalConfig& config) {
  server_db.validate();
  public_data.validate();
  if (server_db.size() == 0) throw Error("server database is empty");
  if (server_db.features.cols() != public_data.features.cols()) {
    throw DimensionMismatch("server and public feature dimensions differ");
  }

  const std::size_t n = server_db.size() + public_data.size();
  const std::size_t d = server_db.features.cols();
  Matrix feats(n, d);
  ServerPipelineResult out;
  std::vector<int> labels;
  auto append = [&](const FeatureDataset& ds, Role role) {
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const std::size_t r = out.row_ids.size();
      for (std::size_t j = 0; j < d; ++j) feats(r, j) = ds.features(i, j);
      out.row_ids.push_back(ds.ids[i]);
      out.row_roles.push_back(role);
      labels.push_back(ds.labels[i]);
    }
  };
  append(server_db, Role::kServer);
  append(public_data, Role::kPublic);
  out.row_labels = LabelVector(std::move(labels));

  {
    FeatureDataset combined;
    combined.ids = out.row_ids;
    combined.features = feats;
    combined.labels = out.row_labels;
    combined.validate();
  }

  SmlqConfig cfg = config.smlq;
  cfg.max_iterations = 1 + config.post_iterations;
  cfg.rel_tolerance = 0.0;  // run every iteration
  Embedding emb = run_smlq(normalize_rows(feats), out.row_labels, cfg,
                           derive_seed(config.seed, stream::kServer));
  out.embedding = std::move(emb.matrix);
  out.objective_trace = std::move(emb.objective_trace);
  return out;
}

std::vector<RankedList> retrieve(const ClientPipelineResult& client_out,
                                 const ServerPipelineResult& server_out,
                                 std::size_t top_k) {
  if (client_out.private_embedding.cols() != server_out.embedding.cols()) {
    throw DimensionMismatch("client and server embedding dimensions differ");
  }
  if (top_k < 1) throw Error("top_k must be at least 1");

  // Pair up the shared public anchors by id.
  std::unordered_map<std::string, std::size_t> server_public;
  for (std::size_t i = 0; i < server_out.row_ids.size(); ++i) {
    if (server_out.row_roles[i] == Role::kPublic) {
      server_public.emplace(server_out.row_ids[i], i);
    }
  }
  std::vector<std::size_t> client_anchor_rows;
  std::vector<std::size_t> server_anchor_rows;
  for (std::size_t i = 0; i < client_out.row_ids.size(); ++i) {
    if (client_out.row_roles[i] != Role::kPublic) continue;
    const auto it = server_public.find(client_out.row_ids[i]);
    if (it == server_public.end()) {
      throw Error("public anchor '" + client_out.row_ids[i] +
                  "' is missing from the server embedding");
    }
    client_anchor_rows.push_back(i);
    server_anchor_rows.push_back(it->second);
  }

  const std::size_t k = client_out.private_embedding.cols();
  Matrix src(client_anchor_rows.size(), k);
  Matrix tgt(server_anchor_rows.size(), k);
  for (std::size_t a = 0; a < client_anchor_rows.size(); ++a) {
    for (std::size_t j = 0; j < k; ++j) {
      src(a, j) = client_out.private_embedding(client_anchor_rows[a], j);
      tgt(a, j) = server_out.embedding(server_anchor_rows[a], j);
    }
  }

  const RigidTransform transform = estimate_transform(src, tgt);
  const Matrix mapped = apply_transform(transform, client_out.private_embedding);

  // Candidates: the server's own database rows, never the public anchors.
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < server_out.row_ids.size(); ++i) {
    if (server_out.row_roles[i] == Role::kServer) candidates.push_back(i);
  }
  if (candidates.empty()) throw Error("server embedding has no database rows");

  std::vector<RankedList> lists;
  for (std::size_t i = 0; i < client_out.row_ids.size(); ++i) {
    const Role role = client_out.row_roles[i];
    if (role != Role::kQuery && role != Role::kDummy) continue;

    std::vector<Match> matches;
    matches.reserve(candidates.size());
    for (const std::size_t s : candidates) {
      double d2 = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        const double diff = mapped(i, j) - server_out.embedding(s, j);
        d2 += diff * diff;
      }
      matches.push_back(Match{server_out.row_ids[s], std::sqrt(d2),
                              server_out.row_labels[s]});
    }
    std::sort(matches.begin(), matches.end(),
              [](const Match& a, const Match& b) {
                if (a.distance != b.distance) return a.distance < b.distance;
                return a.id < b.id;
              });
    matches.resize(std::min(top_k, matches.size()));
    lists.push_back(RankedList{client_out.row_ids[i], role, std::move(matches)});
  }
  return lists;
}

std::vector<RankedList> parse_results(const std::vector<RankedList>& lists) {
  std::vector<RankedList> out;
  for (const auto& l : lists) {
    if (l.role == Role::kQuery) out.push_back(l);
  }
  return out;
}

double recall_at_k(const std::vector<RankedList>& query_lists,
                   const std::vector<int>& query_labels, std::size_t k) {
  if (query_lists.size() != query_labels.size() || query_lists.empty()) {
    throw DimensionMismatch("need one label per query list");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < query_lists.size(); ++i) {
    const auto& matches = query_lists[i].matches;
    if (matches.empty()) throw Error("empty ranked list");
    const std::size_t limit = std::min(k, matches.size());
    for (std::size_t j = 0; j < limit; ++j) {
      if (matches[j].label == query_labels[i]) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(query_lists.size());
}

namespace {

FeatureDataset single_query(const FeatureDataset& queries, std::size_t row) {
  return subset(queries, {row}, Role::kQuery, "");
}

struct RunStats {
  double recall = 0.0;
  double mean_delta = 0.0;
  double mean_noise = 0.0;
};

RunStats run_trial(const SweepInputs& inputs,
                   const ServerPipelineResult& server_out,
                   const RetrievalConfig& base, double epsilon,
                   std::size_t trial, bool privatize) {
  RunStats stats;
  const std::size_t nq = inputs.queries.size();
  double hits = 0.0;
  for (std::size_t qi = 0; qi < nq; ++qi) {
    RetrievalConfig cfg = base;
    cfg.budget.epsilon = epsilon;
    cfg.seed = derive_seed(base.seed, stream::kSweepRun,
                           static_cast<std::uint64_t>(trial),
                           static_cast<std::uint64_t>(qi));
    const FeatureDataset query = single_query(inputs.queries, qi);
    const ClientPipelineResult client =
        privatize ? client_pipeline(query, inputs.public_data, cfg)
                  : client_pipeline_nonprivate(query, inputs.public_data, cfg);
    const auto parsed =
        parse_results(retrieve(client, server_out, base.top_k));
    hits += recall_at_k(parsed, {inputs.queries.labels[qi]}, base.top_k);
    stats.mean_delta += client.bound.delta;
    stats.mean_noise += client.calib.noise_stddev;
  }
  stats.recall = hits / static_cast<double>(nq);
  stats.mean_delta /= static_cast<double>(nq);
  stats.mean_noise /= static_cast<double>(nq);
  return stats;
}

}  // namespace

std::vector<SweepRow> privacy_utility_sweep(const SweepInputs& inputs,
                                            const std::vector<double>& epsilons,
                                            std::size_t trials,
                                            const RetrievalConfig& base) {
  if (epsilons.empty()) throw Error("epsilon list must be non-empty");
  for (const double e : epsilons) {
    if (!(e > 0.0)) throw InvalidBudget("epsilons must be positive");
  }
  if (trials < 1) throw Error("need at least one trial");
  if (inputs.queries.size() == 0) throw Error("no queries");

  const ServerPipelineResult server_out =
      server_pipeline(inputs.server_db, inputs.public_data, base);

  std::vector<SweepRow> rows;
  for (const double eps : epsilons) {
    std::vector<RunStats> per_trial(trials);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
      per_trial[t] = run_trial(inputs, server_out, base, eps,
                               static_cast<std::size_t>(t), true);
    }

    SweepRow row;
    row.epsilon = eps;
    row.trials = trials;
    double sum = 0.0;
    for (const auto& s : per_trial) {
      sum += s.recall;
      row.mean_delta += s.mean_delta;
      row.mean_noise_stddev += s.mean_noise;
    }
    row.mean_recall = sum / static_cast<double>(trials);
    double var = 0.0;
    for (const auto& s : per_trial) {
      const double d = s.recall - row.mean_recall;
      var += d * d;
    }
    row.std_recall = std::sqrt(var / static_cast<double>(trials));
    row.mean_delta /= static_cast<double>(trials);
    row.mean_noise_stddev /= static_cast<double>(trials);
    rows.push_back(row);
  }
  return rows;
}

double nonprivate_sweep_recall(const SweepInputs& inputs, std::size_t trials,
                               const RetrievalConfig& base) {
  if (trials < 1) throw Error("need at least one trial");
  const ServerPipelineResult server_out =
      server_pipeline(inputs.server_db, inputs.public_data, base);
  std::vector<double> recalls(trials);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
    recalls[t] = run_trial(inputs, server_out, base, base.budget.epsilon,
                           static_cast<std::size_t>(t), false)
                     .recall;
  }
  double sum = 0.0;
  for (const double r : recalls) sum += r;
  return sum / static_cast<double>(trials);
}

}  // namespace privmail
