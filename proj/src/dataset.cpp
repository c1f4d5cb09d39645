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

#include "privmail/dataset.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "privmail/errors.hpp"
#include "privmail/rng.hpp"

namespace privmail {

std::string to_string(Role role) {
  switch (role) {
    case Role::kQuery:
      return "query";
    case Role::kDummy:
      return "dummy";
    case Role::kPublic:
      return "public";
    case Role::kServer:
      return "server";
  }
  return "unknown";
}

void FeatureDataset::validate() const {
  if (ids.size() != features.rows() || labels.size() != features.rows()) {
    throw DimensionMismatch("ids, labels and feature rows must agree");
  }
  std::unordered_set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) throw DuplicateId(id);
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, std::size_t line_no) {
  double value = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(line_no, "not a number: '" + s + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line_no, "non-finite value: '" + s + "'");
  }
  return value;
}

int parse_label(const std::string& s, std::size_t line_no) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line_no, "not an integer label: '" + s + "'");
  }
  if (value < 0) {
    throw ParseError(line_no, "label must be nonnegative: '" + s + "'");
  }
  return value;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

FeatureDataset load_features(const std::filesystem::path& path, Role role) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open " + path.string());
  }

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw ParseError(1, "missing header");
  }
  ++line_no;
  const auto header = split_csv(line);
  if (header.size() < 3 || header[0] != "id" || header[1] != "label") {
    throw ParseError(1, "header must start with 'id,label' and name at least "
                        "one feature column");
  }
  const std::size_t dim = header.size() - 2;

  std::vector<std::string> ids;
  std::vector<int> labels;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      throw ParseError(line_no,
                       "expected " + std::to_string(header.size()) +
                           " fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) {
      throw ParseError(line_no, "empty id");
    }
    ids.push_back(fields[0]);
    labels.push_back(parse_label(fields[1], line_no));
    for (std::size_t j = 2; j < fields.size(); ++j) {
      values.push_back(parse_double(fields[j], line_no));
    }
  }
  if (ids.empty()) {
    throw ParseError(line_no, "file has no data rows");
  }

  FeatureDataset ds;
  ds.ids = std::move(ids);
  ds.features = Matrix(ds.ids.size(), dim, std::move(values));
  ds.labels = LabelVector(std::move(labels));
  ds.role = role;
  ds.validate();
  return ds;
}

void save_features(const FeatureDataset& dataset,
                   const std::filesystem::path& path) {
  dataset.validate();
  std::ostringstream out;
  out << "id,label";
  for (std::size_t j = 0; j < dataset.features.cols(); ++j) {
    out << ",f_" << j;
  }
  out << "\n";
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    out << dataset.ids[i] << "," << dataset.labels[i];
    for (std::size_t j = 0; j < dataset.features.cols(); ++j) {
      out << "," << format_double(dataset.features(i, j));
    }
    out << "\n";
  }

  // Write-then-rename so readers never observe a partial file.
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream file(tmp, std::ios::trunc);
    if (!file) throw Error("cannot write " + tmp);
    file << out.str();
  }
  std::filesystem::rename(tmp, path);
}

FeatureDataset generate_synthetic(std::size_t classes, std::size_t per_class,
                                  std::size_t dim, double cluster_spread,
                                  std::uint64_t seed,
                                  const std::string& id_prefix, Role role) {
  if (classes < 1 || per_class < 1 || dim < 1) {
    throw Error("classes, per_class and dim must all be at least 1");
  }
  Rng rng(seed);

  // Unit-norm centers, drawn until pairwise cosines stay below 0.7; after a
  // cap of attempts the best draw so far is kept (relevant only when dim is
  // too small to separate that many classes).
  std::vector<std::vector<double>> centers;
  for (std::size_t c = 0; c < classes; ++c) {
    std::vector<double> best;
    double best_cos = 2.0;
    for (int attempt = 0; attempt < 500; ++attempt) {
      const auto cand = rng.unit_vector(dim);
      double worst = -1.0;
      for (const auto& prev : centers) {
        double dot = 0.0;
        for (std::size_t t = 0; t < dim; ++t) dot += cand[t] * prev[t];
        worst = std::max(worst, dot);
      }
      if (worst < best_cos) {
        best_cos = worst;
        best = cand;
      }
      if (worst < 0.7) break;
    }
    centers.push_back(std::move(best));
  }

  FeatureDataset ds;
  ds.role = role;
  ds.features = Matrix(classes * per_class, dim);
  std::vector<int> labels;
  std::size_t row = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t i = 0; i < per_class; ++i, ++row) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%05zu", row);
      ds.ids.push_back(id_prefix + buf);
      labels.push_back(static_cast<int>(c));
      for (std::size_t t = 0; t < dim; ++t) {
        ds.features(row, t) =
            centers[c][t] + cluster_spread * rng.standard_normal();
      }
    }
  }
  ds.labels = LabelVector(std::move(labels));
  ds.validate();
  return ds;
}

FeatureDataset subset(const FeatureDataset& dataset,
                      const std::vector<std::size_t>& rows, Role role,
                      const std::string& id_prefix) {
  FeatureDataset out;
  out.role = role;
  out.features = Matrix(rows.size(), dataset.features.cols());
  std::vector<int> labels;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t r = rows[i];
    out.ids.push_back(id_prefix + dataset.ids[r]);
    labels.push_back(dataset.labels[r]);
    for (std::size_t j = 0; j < dataset.features.cols(); ++j) {
      out.features(i, j) = dataset.features(r, j);
    }
  }
  out.labels = LabelVector(std::move(labels));
  out.validate();
  return out;
}

}  // namespace privmail
