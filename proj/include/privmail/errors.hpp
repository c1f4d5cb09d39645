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

#ifndef PRIVMAIL_ERRORS_HPP_
#define PRIVMAIL_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace privmail {

// Base class for every error this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class ZeroRow : public Error {
 public:
  explicit ZeroRow(std::size_t row)
      : Error("row " + std::to_string(row) + " has (near-)zero norm"),
        row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

class InvalidBandwidth : public Error {
 public:
  explicit InvalidBandwidth(double sigma)
      : Error("kernel bandwidth must be positive, got " +
              std::to_string(sigma)) {}
};

class TooFewRows : public Error {
 public:
  explicit TooFewRows(std::size_t n)
      : Error("need at least 2 rows to build a Laplacian, got " +
              std::to_string(n)) {}
};

// The closed-form sensitivity constant came out nonpositive; a nonpositive
// "upper bound" would void the privacy guarantee, so we refuse to proceed.
class NonPositiveBound : public Error {
 public:
  explicit NonPositiveBound(double m)
      : Error("sensitivity constant M is not positive: M = " +
              std::to_string(m)),
        m_(m) {}
  double m() const { return m_; }

 private:
  double m_;
};

class InvalidBudget : public Error {
 public:
  explicit InvalidBudget(const std::string& what) : Error(what) {}
};

class DegenerateAnchors : public Error {
 public:
  explicit DegenerateAnchors(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("parse error at line " + std::to_string(line) + ": " + reason),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DuplicateId : public Error {
 public:
  explicit DuplicateId(const std::string& id)
      : Error("duplicate id: " + id), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class MissingClass : public Error {
 public:
  explicit MissingClass(int label)
      : Error("no public exemplar for class " + std::to_string(label)),
        label_(label) {}
  int label() const { return label_; }

 private:
  int label_;
};

}  // namespace privmail

#endif  // PRIVMAIL_ERRORS_HPP_
