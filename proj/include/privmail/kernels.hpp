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

#ifndef PRIVMAIL_KERNELS_HPP_
#define PRIVMAIL_KERNELS_HPP_

#include <cstddef>

namespace privmail::kernels {

// Dense compute kernels, parallelized with OpenMP across output rows. Each
// output row is produced by exactly one thread with a serial inner loop, so
// results are bitwise identical to the serial reference implementations in
// kernels::serial regardless of thread count.

// c = a (n x m) * b (m x p), row-major.
void matmul(const double* a, std::size_t n, std::size_t m, const double* b,
            std::size_t p, double* c);

// w(i,j) = exp(-||x_i - x_j||^2 / (2 sigma^2)) for i != j, w(i,i) = 0.
// pts is n x d row-major; w is n x n.
void gaussian_weights(const double* pts, std::size_t n, std::size_t d,
                      double sigma, double* w);

// norms[i] = Euclidean norm of row i of m (n x d).
void row_norms(const double* m, std::size_t n, std::size_t d, double* norms);

// sum of a(i,j) * b(i,j) over all entries (n x m), row-major order.
double dot_product(const double* a, const double* b, std::size_t count);

namespace serial {

void matmul(const double* a, std::size_t n, std::size_t m, const double* b,
            std::size_t p, double* c);
void gaussian_weights(const double* pts, std::size_t n, std::size_t d,
                      double sigma, double* w);
void row_norms(const double* m, std::size_t n, std::size_t d, double* norms);
double dot_product(const double* a, const double* b, std::size_t count);

}  // namespace serial

}  // namespace privmail::kernels

#endif  // PRIVMAIL_KERNELS_HPP_
