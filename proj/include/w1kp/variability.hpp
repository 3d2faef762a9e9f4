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

// U-statistic variability estimators over normalized distance matrices.
//
// eta_mean averages every unordered pair. eta_k averages, over size-k
// subsets, the smallest pairwise distance inside the subset (the most similar
// pair one expects among k images). Scores are reported both as eta and as
// the similarity-style w1kp = 1 - eta.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "w1kp/distance.hpp"
#include "w1kp/errors.hpp"
#include "w1kp/parallel.hpp"
#include "w1kp/random.hpp"
#include "w1kp/types.hpp"

namespace w1kp {

inline constexpr std::uint64_t kDefaultExactBudget = 200'000;
inline constexpr std::uint64_t kDefaultMonteCarloSamples = 10'000;

/// Monte-Carlo samples are drawn in fixed-size chunks, each from its own
/// sub-stream of the seed, so results do not depend on the worker count.
inline constexpr std::uint64_t kMonteCarloChunk = 1024;

enum class KernelKind { kMean, kMin };
enum class EstimatorKind { kExact, kMonteCarlo };

struct VariabilityScore {
  double eta = 0.0;
  double w1kp = 1.0;
  KernelKind kernel = KernelKind::kMean;
  std::size_t k = 2;
  EstimatorKind estimator = EstimatorKind::kExact;
  std::uint64_t samples = 0;  // subsets evaluated
  std::optional<std::uint64_t> seed;
  double std_error = 0.0;  // Monte-Carlo standard error of eta; 0 when exact

  static VariabilityScore from_eta(double eta) {
    VariabilityScore s;
    s.eta = eta;
    s.w1kp = 1.0 - eta;
    return s;
  }
};

inline std::string_view to_string(EstimatorKind e) {
  return e == EstimatorKind::kExact ? "exact" : "monte_carlo";
}

/// C(n, k), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t numer = n - k + i;
    // result * numer / i is always integral; guard the multiplication.
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t r = result / g, d = i / g;
    const std::uint64_t num = numer / d;
    if (r > std::numeric_limits<std::uint64_t>::max() / num)
      return std::numeric_limits<std::uint64_t>::max();
    result = r * num;
  }
  return result;
}

namespace detail {

inline void require_normalized(const DistanceMatrix& m) {
  require(m.kind() == DistanceKind::kNormalized,
          "variability estimators expect a normalized distance matrix");
  require(m.size() >= 2, "variability needs at least 2 images");
}

inline void require_subset_size(const DistanceMatrix& m, std::size_t k) {
  require(k >= 2 && k <= m.size(), "subset size k=" + std::to_string(k) +
                                       " must lie in [2, " + std::to_string(m.size()) + "]");
}

}  // namespace detail

inline VariabilityScore eta_mean(const DistanceMatrix& m) {
  detail::require_normalized(m);
  double sum = 0.0;
  for (double v : m.upper()) sum += v;
  auto score =
      VariabilityScore::from_eta(sum / static_cast<double>(m.upper().size()));
  score.kernel = KernelKind::kMean;
  score.k = 2;
  score.samples = m.upper().size();
  return score;
}

/// Exact eta_k by enumerating all C(n, k) subsets in lexicographic order.
/// Throws CapacityError when C(n, k) exceeds `budget`.
inline VariabilityScore eta_k_exact(const DistanceMatrix& m, std::size_t k,
                                    std::uint64_t budget = kDefaultExactBudget) {
  detail::require_normalized(m);
  detail::require_subset_size(m, k);
  const std::size_t n = m.size();
  const std::uint64_t subsets = binomial(n, k);
  if (subsets > budget)
    throw CapacityError("C(" + std::to_string(n) + ", " + std::to_string(k) +
                        ") subsets exceed the exact-enumeration budget of " +
                        std::to_string(budget) + "; use the Monte-Carlo estimator");

  // idx holds the current combination; prefix_min[t] is the smallest distance
  // among idx[0..t]. Advancing position t only invalidates prefix_min[t..].
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<double> prefix_min(k, std::numeric_limits<double>::infinity());
  auto refresh_from = [&](std::size_t t) {
    for (std::size_t p = std::max<std::size_t>(t, 1); p < k; ++p) {
      double best = prefix_min[p - 1];
      for (std::size_t s = 0; s < p; ++s) best = std::min(best, m(idx[s], idx[p]));
      prefix_min[p] = best;
    }
  };
  refresh_from(1);

  double sum = 0.0;
  while (true) {
    sum += prefix_min[k - 1];
    // Next combination: find rightmost position that can still advance.
    std::size_t t = k;
    while (t > 0 && idx[t - 1] == n - k + (t - 1)) --t;
    if (t == 0) break;
    --t;
    ++idx[t];
    for (std::size_t p = t + 1; p < k; ++p) idx[p] = idx[p - 1] + 1;
    refresh_from(t);
  }

  auto score = VariabilityScore::from_eta(sum / static_cast<double>(subsets));
  score.kernel = KernelKind::kMin;
  score.k = k;
  score.estimator = EstimatorKind::kExact;
  score.samples = subsets;
  return score;
}

/// Evaluates the subset-minimum kernel on random subsets of one matrix.
///
/// Small subsets are scored by scanning all pairs in ascending distance order
/// until one lies inside the subset; large subsets by a direct scan of their
/// own k(k-1)/2 pairs. Both give the identical minimum.
class SubsetMinSampler {
 public:
  explicit SubsetMinSampler(const DistanceMatrix& m) : m_(m), n_(m.size()) {
    const auto upper = m.upper();
    std::vector<std::size_t> order(upper.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return upper[x] < upper[y]; });
    sorted_.reserve(order.size());
    for (std::size_t p : order) {
      const auto [i, j] = DistanceMatrix::pair_at(n_, p);
      sorted_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                         upper[p]});
    }
  }

  /// Mean kernel value over `samples` random k-subsets. Chunk c of the run
  /// draws from make_engine(seed, c).
  VariabilityScore estimate(std::size_t k, std::uint64_t samples, std::uint64_t seed,
                            std::size_t workers = default_workers()) const {
    detail::require_subset_size(m_, k);
    detail::require(samples >= 1, "Monte-Carlo estimation needs at least one sample");
    const std::uint64_t chunks = (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
    std::vector<double> chunk_sum(chunks, 0.0), chunk_sq(chunks, 0.0);
    const bool scan_sorted = prefers_sorted_scan(k);

    parallel_blocks(chunks, workers, [&](std::size_t begin, std::size_t end) {
      std::vector<std::uint32_t> perm(n_);
      std::vector<char> member(n_, 0);
      for (std::size_t c = begin; c < end; ++c) {
        Engine engine = make_engine(seed, c);
        std::iota(perm.begin(), perm.end(), std::uint32_t{0});
        const std::uint64_t first = c * kMonteCarloChunk;
        const std::uint64_t last = std::min(samples, first + kMonteCarloChunk);
        double sum = 0.0, sq = 0.0;
        for (std::uint64_t s = first; s < last; ++s) {
          // Partial Fisher-Yates: perm[0..k) becomes a uniform k-subset.
          for (std::size_t t = 0; t < k; ++t) {
            const auto r = t + static_cast<std::size_t>(uniform_below(engine, n_ - t));
            std::swap(perm[t], perm[r]);
          }
          const double v = scan_sorted ? min_by_sorted_scan(perm, k, member)
                                       : min_direct(perm, k);
          sum += v;
          sq += v * v;
        }
        chunk_sum[c] = sum;
        chunk_sq[c] = sq;
      }
    });

    double sum = 0.0, sq = 0.0;
    for (std::uint64_t c = 0; c < chunks; ++c) {
      sum += chunk_sum[c];
      sq += chunk_sq[c];
    }
    const double count = static_cast<double>(samples);
    const double mean = sum / count;
    auto score = VariabilityScore::from_eta(mean);
    score.kernel = KernelKind::kMin;
    score.k = k;
    score.estimator = EstimatorKind::kMonteCarlo;
    score.samples = samples;
    score.seed = seed;
    if (samples > 1) {
      const double var = std::max(0.0, (sq - count * mean * mean) / (count - 1.0));
      score.std_error = std::sqrt(var / count);
    }
    return score;
  }

 private:
  struct Pair {
    std::uint32_t i, j;
    double value;
  };

  bool prefers_sorted_scan(std::size_t k) const {
    const double kk = static_cast<double>(k) * static_cast<double>(k - 1);
    const double nn = static_cast<double>(n_) * static_cast<double>(n_ - 1);
    return nn / kk < kk / 2.0;
  }

  double min_direct(const std::vector<std::uint32_t>& perm, std::size_t k) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a + 1 < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) best = std::min(best, m_(perm[a], perm[b]));
    return best;
  }

  double min_by_sorted_scan(const std::vector<std::uint32_t>& perm, std::size_t k,
                            std::vector<char>& member) const {
    for (std::size_t t = 0; t < k; ++t) member[perm[t]] = 1;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : sorted_) {
      if (member[p.i] && member[p.j]) {
        best = p.value;
        break;
      }
    }
    for (std::size_t t = 0; t < k; ++t) member[perm[t]] = 0;
    return best;
  }

  const DistanceMatrix& m_;
  std::size_t n_;
  std::vector<Pair> sorted_;
};

/// Monte-Carlo eta_k from `samples` uniformly drawn k-subsets. Deterministic
/// for a fixed seed regardless of worker count. k = n has a single subset and
/// is computed exactly.
inline VariabilityScore eta_k_monte_carlo(const DistanceMatrix& m, std::size_t k,
                                          std::uint64_t samples, std::uint64_t seed,
                                          std::size_t workers = default_workers()) {
  detail::require_normalized(m);
  detail::require_subset_size(m, k);
  detail::require(samples >= 1, "Monte-Carlo estimation needs at least one sample");
  if (k == m.size()) return eta_k_exact(m, k);
  return SubsetMinSampler(m).estimate(k, samples, seed, workers);
}

/// Exact when C(n, k) fits the budget, Monte Carlo otherwise.
inline VariabilityScore eta_k(const DistanceMatrix& m, std::size_t k,
                              std::uint64_t samples, std::uint64_t seed,
                              std::uint64_t budget = kDefaultExactBudget) {
  detail::require_normalized(m);
  detail::require_subset_size(m, k);
  if (binomial(m.size(), k) <= budget) return eta_k_exact(m, k, budget);
  return eta_k_monte_carlo(m, k, samples, seed);
}

struct TotalVarianceCheck {
  double mean_pairwise_sq = 0.0;
  double trace_cov = 0.0;
};

/// Mean squared-Euclidean distance over unordered pairs, alongside the trace
/// of the biased (1/n) covariance of the rows. The two satisfy
/// mean_pairwise_sq = 2n / (n - 1) * trace_cov.
inline TotalVarianceCheck total_variance_identity_check(const EmbeddingSet& set) {
  const std::size_t n = set.size();
  detail::require(n >= 2, "total variance check needs at least 2 embeddings");
  const std::size_t dim = set.dim();

  double pair_sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      pair_sum += squared_euclidean(set.row(i), set.row(j));

  std::vector<double> mean(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = set.row(i);
    for (std::size_t c = 0; c < dim; ++c) mean[c] += row[c];
  }
  for (double& v : mean) v /= static_cast<double>(n);
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = set.row(i);
    for (std::size_t c = 0; c < dim; ++c) {
      const double diff = row[c] - mean[c];
      trace += diff * diff;
    }
  }
  return {pair_sum / static_cast<double>(DistanceMatrix::pair_count(n)),
          trace / static_cast<double>(n)};
}

}  // namespace w1kp
