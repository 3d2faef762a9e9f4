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

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "w1kp/errors.hpp"

namespace w1kp {

enum class MetricKind { kEuclidean, kSquaredEuclidean, kCosine };

inline std::string_view to_string(MetricKind metric) {
  switch (metric) {
    case MetricKind::kEuclidean: return "euclidean";
    case MetricKind::kSquaredEuclidean: return "squared_euclidean";
    case MetricKind::kCosine: return "cosine";
  }
  return "unknown";
}

inline MetricKind parse_metric(std::string_view name) {
  if (name == "euclidean") return MetricKind::kEuclidean;
  if (name == "squared_euclidean") return MetricKind::kSquaredEuclidean;
  if (name == "cosine") return MetricKind::kCosine;
  throw ValidationError("unknown metric '" + std::string(name) + "'");
}

/// Human-judged similarity level, ordered from least to most similar.
enum class Level { kNone = 0, kLow = 1, kMid = 2, kHigh = 3 };

inline constexpr std::size_t kLevelCount = 4;

inline std::string_view to_string(Level level) {
  switch (level) {
    case Level::kNone: return "none";
    case Level::kLow: return "low";
    case Level::kMid: return "mid";
    case Level::kHigh: return "high";
  }
  return "unknown";
}

inline std::optional<Level> parse_level(std::string_view name) {
  if (name == "none") return Level::kNone;
  if (name == "low") return Level::kLow;
  if (name == "mid") return Level::kMid;
  if (name == "high") return Level::kHigh;
  return std::nullopt;
}

/// Image embeddings, one row per image. Immutable once constructed.
class EmbeddingSet {
 public:
  EmbeddingSet(std::vector<std::string> ids, std::size_t dim,
               std::vector<float> values, std::string provenance = {})
      : ids_(std::move(ids)),
        dim_(dim),
        values_(std::move(values)),
        provenance_(std::move(provenance)) {
    detail::require(!ids_.empty(), "embedding set must contain at least one row");
    detail::require(dim_ >= 1, "embedding dimension must be at least 1");
    detail::require(values_.size() == ids_.size() * dim_,
                    "embedding values do not match n x dim");
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (!index_.emplace(ids_[i], i).second)
        throw ValidationError("duplicate image id '" + ids_[i] + "'");
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (!std::isfinite(values_[k]))
        throw ValidationError("non-finite value in row " +
                              std::to_string(k / dim_) + ", column " +
                              std::to_string(k % dim_));
    }
  }

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::string& provenance() const noexcept { return provenance_; }
  std::span<const float> values() const noexcept { return values_; }

  std::span<const float> row(std::size_t i) const {
    return std::span<const float>(values_).subspan(i * dim_, dim_);
  }

  std::optional<std::size_t> index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const EmbeddingSet& x, const EmbeddingSet& y) {
    return x.ids_ == y.ids_ && x.dim_ == y.dim_ && x.values_ == y.values_ &&
           x.provenance_ == y.provenance_;
  }

 private:
  std::vector<std::string> ids_;
  std::size_t dim_;
  std::vector<float> values_;
  std::string provenance_;
  std::unordered_map<std::string, std::size_t> index_;
};

enum class DistanceKind { kRaw, kNormalized };

/// Symmetric matrix with zero diagonal, stored as the strict upper triangle
/// in row-major order.
class DistanceMatrix {
 public:
  DistanceMatrix(std::size_t n, std::vector<double> upper, DistanceKind kind)
      : n_(n), values_(std::move(upper)), kind_(kind) {
    detail::require(values_.size() == pair_count(n_),
                    "distance storage must hold n(n-1)/2 entries");
    for (double v : values_) {
      detail::require(std::isfinite(v) && v >= 0.0,
                      "distances must be finite and non-negative");
      if (kind_ == DistanceKind::kNormalized)
        detail::require(v <= 1.0, "normalized distances must lie in [0,1]");
    }
  }

  static constexpr std::size_t pair_count(std::size_t n) noexcept {
    return n < 2 ? 0 : n * (n - 1) / 2;
  }

  /// Position of pair (i, j), i < j, in the triangular storage.
  static constexpr std::size_t pair_index(std::size_t n, std::size_t i,
                                          std::size_t j) noexcept {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }

  /// Inverse of pair_index.
  static std::pair<std::size_t, std::size_t> pair_at(std::size_t n,
                                                     std::size_t index) {
    std::size_t i = 0;
    std::size_t row_len = n - 1;
    while (index >= row_len) {
      index -= row_len;
      ++i;
      --row_len;
    }
    return {i, i + 1 + index};
  }

  std::size_t size() const noexcept { return n_; }
  DistanceKind kind() const noexcept { return kind_; }
  std::span<const double> upper() const noexcept { return values_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    return values_[pair_index(n_, i, j)];
  }

  double at(std::size_t i, std::size_t j) const {
    detail::require(i < n_ && j < n_, "distance index out of range");
    return (*this)(i, j);
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<double> values_;
  DistanceKind kind_;
};

struct GradedJudgment {
  std::string pair_id;
  std::string a;
  std::string b;
  Level label;
  std::size_t line = 0;
};

struct TripletJudgment {
  std::string ref;
  std::string a;
  std::string b;
  int votes_a = 0;
  int votes_total = 1;
  std::size_t line = 0;

  double share_a() const noexcept {
    return static_cast<double>(votes_a) / static_cast<double>(votes_total);
  }
};

}  // namespace w1kp
