// Copyright 2026 The codemix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "codemix/nnet/matrix.hpp"

#include <cassert>
#include <cmath>

namespace codemix::nnet {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

void multiply_add(const Matrix& m, std::span<const double> x, std::span<double> y) {
  assert(x.size() == m.cols() && y.size() == m.rows());
  const std::size_t cols = m.cols();
  const double* w = m.values().data();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const double* wr = w + r * cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += wr[c] * x[c];
    y[r] += acc;
  }
}

void multiply_transpose_add(const Matrix& m, std::span<const double> x, std::span<double> y) {
  assert(x.size() == m.rows() && y.size() == m.cols());
  const std::size_t cols = m.cols();
  const double* w = m.values().data();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const double xr = x[r];
    if (xr == 0.0) continue;
    const double* wr = w + r * cols;
    for (std::size_t c = 0; c < cols; ++c) y[c] += wr[c] * xr;
  }
}

void outer_add(Matrix& m, std::span<const double> a, std::span<const double> b) {
  assert(a.size() == m.rows() && b.size() == m.cols());
  const std::size_t cols = m.cols();
  double* w = m.values().data();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const double ar = a[r];
    if (ar == 0.0) continue;
    double* wr = w + r * cols;
    for (std::size_t c = 0; c < cols; ++c) wr[c] += ar * b[c];
  }
}

double Rng::uniform(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

std::size_t Rng::below(std::size_t n) {
  // Rejection sampling keeps the result unbiased and platform independent.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = 0;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

void glorot_uniform(Matrix& m, Rng& rng) {
  if (m.size() == 0) return;
  const double r = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
  for (double& v : m.values()) v = rng.uniform(-r, r);
}

}  // namespace codemix::nnet
