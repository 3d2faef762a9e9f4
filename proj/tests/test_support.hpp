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

// Fixture generators and brute-force oracles shared by the test suites. The
// oracles deliberately avoid the library's own algorithms.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "w1kp/w1kp.hpp"

namespace w1kp::testing {

inline EmbeddingSet random_embeddings(std::size_t n, std::size_t dim, std::uint64_t seed,
                                      float lo = -1.0f, float hi = 1.0f) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(lo, hi);
  std::vector<std::string> ids;
  std::vector<float> values;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back("img" + std::to_string(i));
    for (std::size_t c = 0; c < dim; ++c) values.push_back(dist(rng));
  }
  return EmbeddingSet(std::move(ids), dim, std::move(values), "synthetic");
}

/// Random normalized matrix with values on the grid {0, 1/m, ..., 1}, the
/// lattice an empirical CDF of size m produces.
inline DistanceMatrix random_normalized(std::size_t n, std::uint64_t seed, int m = 1000) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(0, m);
  std::vector<double> upper(DistanceMatrix::pair_count(n));
  for (auto& v : upper) v = static_cast<double>(dist(rng)) / m;
  return DistanceMatrix(n, std::move(upper), DistanceKind::kNormalized);
}

/// Visits every k-subset of {0..n-1} in lexicographic order (recursive).
inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t next) {
    if (chosen.size() == k) {
      fn(chosen);
      return;
    }
    for (std::size_t i = next; i + (k - chosen.size()) <= n; ++i) {
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
}

/// eta_k by enumerating every subset and recomputing its minimum from scratch,
/// summing in lexicographic subset order.
inline double enumerate_eta_k(const DistanceMatrix& m, std::size_t k) {
  double sum = 0.0;
  std::uint64_t count = 0;
  for_each_subset(m.size(), k, [&](const std::vector<std::size_t>& s) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b) best = std::min(best, m.at(s[a], s[b]));
    sum += best;
    ++count;
  });
  return sum / static_cast<double>(count);
}

/// Brute-force cutoff search over every gap-index triple a <= b <= c, scoring
/// each by classifying every record with the materialized cutoffs.
inline std::size_t brute_force_best_correct(const std::vector<LabeledScore>& data) {
  const auto cand = cutoff_candidates(data);
  std::size_t best = 0;
  for (std::size_t a = 0; a < cand.gaps(); ++a) {
    if (!cand.usable(a)) continue;
    for (std::size_t b = a; b < cand.gaps(); ++b) {
      if (!cand.usable(b)) continue;
      for (std::size_t c = b; c < cand.gaps(); ++c) {
        if (!cand.usable(c)) continue;
        const auto cut = cand.place(a, b, c);
        std::size_t correct = 0;
        for (const auto& d : data) correct += classify(d.score, cut) == d.label ? 1 : 0;
        best = std::max(best, correct);
      }
    }
  }
  return best;
}

/// Labeled scores from four overlapping bands centred at 0.15/0.4/0.6/0.85.
inline std::vector<LabeledScore> overlapping_bands(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> level(0, 3);
  std::normal_distribution<double> noise(0.0, 0.12);
  const double centre[] = {0.15, 0.4, 0.6, 0.85};
  std::vector<LabeledScore> data;
  for (std::size_t i = 0; i < count; ++i) {
    const int l = level(rng);
    const double s = std::clamp(centre[l] + noise(rng), 0.0, 1.0);
    data.push_back({std::round(s * 1000.0) / 1000.0, static_cast<Level>(l)});
  }
  return data;
}

struct PromptExample {
  std::string text;
  PromptSplit expected;
};

/// Reference prompts with their expected keyword tails; long tails are cut at
/// the last listed keyword.
inline std::vector<PromptExample> prompt_examples() {
  return {
      {"ashtray in the messy desk of the detective, smoke and dark, digital art",
       {"ashtray in the messy desk of the detective", {"smoke and dark", "digital art"}}},
      {"onion very sad crying big tears cartoon, 3d render",
       {"onion very sad crying big tears cartoon", {"3d render"}}},
      {"the lost city of Atlantis, 4K, hyper detailed",
       {"the lost city of Atlantis", {"4K", "hyper detailed"}}},
      {"a galleon ship by Darek Zabrocki", {"a galleon ship by Darek Zabrocki", {}}},
      {"hill overlooking a viking city, fantasy, forested, large trees, top down perspective",
       {"hill overlooking a viking city",
        {"fantasy", "forested", "large trees", "top down perspective"}}},
      {"photo of an awesome sunny day environment concept art on a cliff, architecture by "
       "daniel libeskind with village, residential area, mixed development, highrise made up "
       "staircases",
       {"photo of an awesome sunny day environment concept art on a cliff, architecture by "
        "daniel libeskind with village",
        {"residential area", "mixed development", "highrise made up staircases"}}},
      {"giant oversized  battle hedgehog with army pilot uniform and hedgehog babies ,in deep "
       "forest hungle , full body , Cinematic focus, Polaroid photo, vintage , neutral dull "
       "colors, soft lights",
       {"giant oversized  battle hedgehog with army pilot uniform and hedgehog babies, in deep "
        "forest hungle",
        {"full body", "Cinematic focus", "Polaroid photo", "vintage", "neutral dull colors",
         "soft lights"}}},
      {"pizza the hut, akira, gorillaz, poster, high quality",
       {"pizza the hut", {"akira", "gorillaz", "poster", "high quality"}}},
      {"tengu spotted in atlanta", {"tengu spotted in atlanta", {}}},
      {"underground cinema, realistic architecture, colorfull lights, octane render, 4k, 8k",
       {"underground cinema",
        {"realistic architecture", "colorfull lights", "octane render", "4k", "8k"}}},
  };
}

/// Ten-element Spearman fixture with ties in both inputs and its average ranks
/// worked out by hand.
struct TiedRankFixture {
  std::vector<double> x{3, 1, 4, 1, 5, 9, 2, 6, 5, 3};
  std::vector<double> y{2, 7, 1, 8, 2, 8, 1, 8, 2, 8};
  std::vector<double> x_ranks{4.5, 1.5, 6, 1.5, 7.5, 10, 3, 9, 7.5, 4.5};
  std::vector<double> y_ranks{4, 6, 1.5, 8.5, 4, 8.5, 1.5, 8.5, 4, 8.5};
};

/// Textbook Pearson on already-ranked data, in long double.
inline double hand_pearson(const std::vector<double>& a, const std::vector<double>& b) {
  long double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= a.size();
  mb /= b.size();
  long double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return static_cast<double>(sab / std::sqrt(saa * sbb));
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("w1kp_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace w1kp::testing
