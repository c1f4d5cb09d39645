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

#ifndef PRIVMAIL_RNG_HPP_
#define PRIVMAIL_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "privmail/matrix.hpp"

namespace privmail {

// Derives an independent substream seed from a base seed and a tag.
// Deterministic; used everywhere a component needs its own stream so that
// fixing one stream never perturbs another.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag_a,
                          std::uint64_t tag_b);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag_a,
                          std::uint64_t tag_b, std::uint64_t tag_c);

// Stream tags for the seed-derivation tree. Fixed constants so reruns and
// tests can reconstruct any internal stream.
namespace stream {
inline constexpr std::uint64_t kEmbeddingInit = 0x51;
inline constexpr std::uint64_t kNoise = 0x4e;
inline constexpr std::uint64_t kDummies = 0xd0;
inline constexpr std::uint64_t kShuffle = 0x5f;
inline constexpr std::uint64_t kServer = 0x5e;
inline constexpr std::uint64_t kSweepRun = 0x10;
inline constexpr std::uint64_t kVerifierQ = 0x9a;
inline constexpr std::uint64_t kVerifierTrial = 0x9b;
}  // namespace stream

// Seeded random stream. All draws are deterministic for a given seed within
// one build of the library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double standard_normal() { return normal_(engine_); }
  // Uniform integer in [lo, hi], both inclusive.
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  std::size_t uniform_index(std::size_t count) {
    return std::uniform_int_distribution<std::size_t>(0, count - 1)(engine_);
  }

  std::vector<double> unit_vector(std::size_t dim);
  std::vector<std::size_t> permutation(std::size_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Matrix with i.i.d. N(0, stddev^2) entries, filled in row-major order.
// Entries are stddev times a standard-normal draw, so scaling stddev scales
// the realized matrix exactly.
Matrix gaussian_matrix(std::size_t rows, std::size_t cols, double stddev,
                       std::uint64_t seed);

}  // namespace privmail

#endif  // PRIVMAIL_RNG_HPP_
