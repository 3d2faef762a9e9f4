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

#include <chrono>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace w1kp {
namespace {

using testing::TempDir;

std::vector<double> lognormal_draws(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> dist(1.0, 0.4);
  std::vector<double> out(count);
  for (auto& v : out) v = dist(rng);
  return out;
}

TEST(FitCdf, SortsSample) {
  const auto cdf = fit_cdf({3, 1, 2}, MetricKind::kEuclidean);
  EXPECT_EQ(std::vector<double>(cdf.sample().begin(), cdf.sample().end()),
            (std::vector<double>{1, 2, 3}));
}

TEST(FitCdf, KeepsMultiplicity) {
  const auto cdf = fit_cdf({1, 1, 1}, MetricKind::kEuclidean);
  EXPECT_EQ(cdf.size(), 3u);
  EXPECT_EQ(apply_cdf(cdf, 1.0), 1.0);
  EXPECT_EQ(apply_cdf(cdf, 0.999), 0.0);
}

TEST(FitCdf, TenThousandPairSample) {
  const auto cdf = fit_cdf(lognormal_draws(10'000, 1), MetricKind::kEuclidean, "gen-a");
  EXPECT_EQ(cdf.size(), 10'000u);
  EXPECT_TRUE(std::is_sorted(cdf.sample().begin(), cdf.sample().end()));
}

TEST(FitCdf, RejectsBadSamples) {
  EXPECT_THROW(fit_cdf({}, MetricKind::kEuclidean), ValidationError);
  EXPECT_THROW(fit_cdf({1.0, -0.5}, MetricKind::kEuclidean), ValidationError);
  EXPECT_THROW(fit_cdf({std::numeric_limits<double>::quiet_NaN()}, MetricKind::kEuclidean),
               ValidationError);
}

TEST(ApplyCdf, HandCounts) {
  const auto cdf = fit_cdf({1, 2, 3, 4}, MetricKind::kEuclidean);
  EXPECT_EQ(apply_cdf(cdf, 2.5), 0.5);
  EXPECT_EQ(apply_cdf(cdf, 0.5), 0.0);
  EXPECT_EQ(apply_cdf(cdf, 4.0), 1.0);
  EXPECT_EQ(apply_cdf(cdf, 2.0), 0.5);  // right-closed
  EXPECT_EQ(apply_cdf(cdf, 1e9), 1.0);  // saturates
}

TEST(ApplyCdf, OwnDistinctSampleMapsToGrid) {
  const auto draws = lognormal_draws(2000, 7);
  const auto cdf = fit_cdf(draws, MetricKind::kEuclidean);
  std::vector<double> mapped;
  for (double x : draws) mapped.push_back(apply_cdf(cdf, x));
  std::sort(mapped.begin(), mapped.end());
  for (std::size_t i = 0; i < mapped.size(); ++i)
    EXPECT_EQ(mapped[i], static_cast<double>(i + 1) / 2000.0);
}

TEST(ApplyCdf, Monotone) {
  const auto cdf = fit_cdf(lognormal_draws(500, 3), MetricKind::kEuclidean);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  for (int t = 0; t < 5000; ++t) {
    double x = dist(rng), y = dist(rng);
    if (x > y) std::swap(x, y);
    EXPECT_LE(apply_cdf(cdf, x), apply_cdf(cdf, y));
  }
}

TEST(ApplyCdf, FreshDrawsAreUniform) {
  const auto cdf = fit_cdf(lognormal_draws(5000, 100), MetricKind::kEuclidean);
  std::vector<double> mapped;
  for (double x : lognormal_draws(5000, 200)) mapped.push_back(apply_cdf(cdf, x));
  const double d = ks_statistic_uniform(mapped);
  const auto n = ks_effective_size(5000, mapped.size());
  EXPECT_LT(d, ks_critical_value(n, 0.01));
  EXPECT_GT(ks_p_value(d, n), 0.01);
}

TEST(KsStatistic, DetectsNonUniformRawDistances) {
  // Raw distances squeezed into a narrow band are far from U[0, 1].
  std::vector<double> raw;
  for (double x : lognormal_draws(1000, 4)) raw.push_back(std::min(1.0, x / 20.0));
  const double d = ks_statistic_uniform(raw);
  EXPECT_GT(d, ks_critical_value(raw.size(), 0.01));
  EXPECT_LT(ks_p_value(d, raw.size()), 0.01);
}

TEST(KsStatistic, EffectiveSize) {
  EXPECT_EQ(ks_effective_size(5000, 5000), 2500u);
  EXPECT_EQ(ks_effective_size(10, 90), 9u);
}

TEST(KsStatistic, HandComputed) {
  // Points 0.1, 0.2: D = max(1/2 - 0.1, 1 - 0.2, 0.1 - 0, 0.2 - 1/2) = 0.8.
  EXPECT_DOUBLE_EQ(ks_statistic_uniform({0.2, 0.1}), 0.8);
}

TEST(NormalizeMatrix, AllZeros) {
  const auto cdf = fit_cdf({1, 2}, MetricKind::kEuclidean);
  const auto m = normalize_matrix(DistanceMatrix(3, {0, 0, 0}, DistanceKind::kRaw), cdf);
  EXPECT_EQ(m.kind(), DistanceKind::kNormalized);
  for (double v : m.upper()) EXPECT_EQ(v, 0.0);
}

TEST(NormalizeMatrix, MaximumMapsToOne) {
  const auto cdf = fit_cdf({1, 2}, MetricKind::kEuclidean);
  const auto m = normalize_matrix(DistanceMatrix(3, {0.5, 2.0, 1.0}, DistanceKind::kRaw), cdf);
  EXPECT_EQ(m(0, 2), 1.0);
  EXPECT_EQ(m(1, 2), 0.5);
}

TEST(NormalizeMatrix, MatchesPerEntryLoop) {
  const auto set = testing::random_embeddings(10, 8, 21);
  const auto raw = pairwise_matrix(set, MetricKind::kEuclidean);
  const auto cdf = fit_cdf(lognormal_draws(300, 5), MetricKind::kEuclidean);
  const auto norm = normalize_matrix(raw, cdf);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) {
      if (i == j) continue;
      // Linear count, independent of the binary search.
      const double x = raw(i, j);
      std::size_t count = 0;
      for (double s : cdf.sample()) count += s <= x ? 1 : 0;
      EXPECT_EQ(norm(i, j), static_cast<double>(count) / 300.0);
    }
}

TEST(NormalizeMatrix, RejectsNormalizedInput) {
  const auto cdf = fit_cdf({1, 2}, MetricKind::kEuclidean);
  EXPECT_THROW(normalize_matrix(DistanceMatrix(2, {0.5}, DistanceKind::kNormalized), cdf),
               ValidationError);
}

TEST(CdfArtifact, RoundTripsExactly) {
  TempDir dir;
  const auto cdf = fit_cdf(lognormal_draws(1000, 8), MetricKind::kCosine, "gen-a/backbone-b");
  save_cdf(cdf, dir / "cdf.json");
  EXPECT_EQ(load_cdf(dir / "cdf.json"), cdf);
}

TEST(CdfArtifact, RejectsBadFiles) {
  TempDir dir;
  detail::write_file(dir / "nosample.json", R"({"version":1,"metric":"euclidean"})");
  EXPECT_THROW(load_cdf(dir / "nosample.json"), FormatError);
  detail::write_file(dir / "v2.json", R"({"version":2,"metric":"euclidean","sample":[1]})");
  EXPECT_THROW(load_cdf(dir / "v2.json"), FormatError);
  detail::write_file(dir / "garbage.json", "{");
  EXPECT_THROW(load_cdf(dir / "garbage.json"), FormatError);
}

TEST(CdfArtifact, TenThousandSampleLoadsQuickly) {
  TempDir dir;
  const auto cdf = fit_cdf(lognormal_draws(10'000, 12), MetricKind::kEuclidean);
  save_cdf(cdf, dir / "big.json");
  const auto bytes = std::filesystem::file_size(dir / "big.json");
  // ~18 significant characters plus a comma per value.
  EXPECT_GT(bytes, 100'000u);
  EXPECT_LT(bytes, 250'000u);
  const auto start = std::chrono::steady_clock::now();
  const auto back = load_cdf(dir / "big.json");
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_EQ(back, cdf);
  EXPECT_LT(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count(), 50);
}

}  // namespace
}  // namespace w1kp
