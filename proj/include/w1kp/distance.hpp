// Copyright 2026 The W1KP Kit Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "w1kp/errors.hpp"
#include "w1kp/parallel.hpp"
#include "w1kp/types.hpp"

namespace w1kp {

// All sums run in double, index-ascending, so a pair's distance does not
// depend on which thread computed it.

inline double squared_euclidean(std::span<const float> a, std::span<const float> b) {
  detail::require(a.size() == b.size(), "dimension mismatch: " +
                                            std::to_string(a.size()) + " vs " +
                                            std::to_string(b.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += diff * diff;
  }
  return sum;
}

inline double euclidean(std::span<const float> a, std::span<const float> b) {
  return std::sqrt(squared_euclidean(a, b));
}

inline constexpr double kCosineSnapTolerance = 1e-12;

/// 1 - cos(a, b) in [0, 2]. Results within 1e-12 of either bound snap to it,
/// since the dot/norm ratio can round slightly past +-1.
inline double cosine_distance(std::span<const float> a, std::span<const float> b) {
  detail::require(a.size() == b.size(), "dimension mismatch: " +
                                            std::to_string(a.size()) + " vs " +
                                            std::to_string(b.size()));
  double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i], y = b[i];
    dot += x * y;
    norm_a += x * x;
    norm_b += y * y;
  }
  detail::require(norm_a > 0.0 && norm_b > 0.0,
                  "cosine distance is undefined for a zero-norm vector");
  const double d = 1.0 - dot / std::sqrt(norm_a * norm_b);
  if (d < kCosineSnapTolerance) return 0.0;
  if (d > 2.0 - kCosineSnapTolerance) return 2.0;
  return d;
}

inline double distance(MetricKind metric, std::span<const float> a,
                       std::span<const float> b) {
  switch (metric) {
    case MetricKind::kEuclidean: return euclidean(a, b);
    case MetricKind::kSquaredEuclidean: return squared_euclidean(a, b);
    case MetricKind::kCosine: return cosine_distance(a, b);
  }
  throw ValidationError("unknown metric");
}

/// All-pairs raw distances. Rows of the triangle are split across workers;
/// the result is bitwise identical for any worker count.
inline DistanceMatrix pairwise_matrix(const EmbeddingSet& set, MetricKind metric,
                                      std::size_t workers = default_workers()) {
  const std::size_t n = set.size();
  detail::require(n >= 2, "pairwise distances need at least 2 embeddings");
  std::vector<double> upper(DistanceMatrix::pair_count(n));
  parallel_blocks(upper.size(), workers, [&](std::size_t begin, std::size_t end) {
    auto [i, j] = DistanceMatrix::pair_at(n, begin);
    for (std::size_t k = begin; k < end; ++k) {
      upper[k] = distance(metric, set.row(i), set.row(j));
      if (++j == n) {
        ++i;
        j = i + 1;
      }
    }
  });
  return DistanceMatrix(n, std::move(upper), DistanceKind::kRaw);
}

}  // namespace w1kp
