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

// Two-alternative forced choice (2AFC) harness.
//
// Each triplet asks which of A and B is more similar to a reference; y of v
// workers chose A. A metric prefers A when its pair score for (ref, A) is
// higher. Its 2AFC score is the mean worker agreement
//   (1/M) sum [prefers_a * y/v + (1 - prefers_a) * (1 - y/v)].

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "w1kp/distance.hpp"
#include "w1kp/errors.hpp"
#include "w1kp/normalization.hpp"
#include "w1kp/parallel.hpp"
#include "w1kp/types.hpp"

namespace w1kp {

struct TripletOutcome {
  bool prefers_a = false;
  bool tie = false;
  int votes_a = 0;
  int votes_total = 1;
};

/// How exact ties are scored: kHalf credits half of each side, kStrict
/// rejects the dataset.
enum class TiePolicy { kHalf, kStrict };

inline TripletOutcome metric_preference(std::span<const float> ref, std::span<const float> a,
                                        std::span<const float> b, MetricKind metric,
                                        const FittedCdf& cdf) {
  detail::require(ref.size() == a.size() && ref.size() == b.size(),
                  "triplet vectors must share one dimension");
  const double score_a = 1.0 - cdf(distance(metric, ref, a));
  const double score_b = 1.0 - cdf(distance(metric, ref, b));
  TripletOutcome out;
  out.tie = score_a == score_b;
  out.prefers_a = score_a > score_b;
  return out;
}

/// Outcome for one recorded triplet, with its vote counts attached.
inline TripletOutcome evaluate_triplet(const TripletJudgment& t, const EmbeddingSet& set,
                                       MetricKind metric, const FittedCdf& cdf) {
  const auto lookup = [&](const std::string& id) {
    const auto i = set.index_of(id);
    if (!i)
      throw ValidationError("line " + std::to_string(t.line) + ": unknown image id '" + id + "'");
    return set.row(*i);
  };
  auto out = metric_preference(lookup(t.ref), lookup(t.a), lookup(t.b), metric, cdf);
  out.votes_a = t.votes_a;
  out.votes_total = t.votes_total;
  return out;
}

inline std::vector<TripletOutcome> evaluate_triplets(const std::vector<TripletJudgment>& triplets,
                                                     const EmbeddingSet& set, MetricKind metric,
                                                     const FittedCdf& cdf,
                                                     std::size_t workers = default_workers()) {
  std::vector<TripletOutcome> outcomes(triplets.size());
  parallel_blocks(triplets.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      outcomes[i] = evaluate_triplet(triplets[i], set, metric, cdf);
  });
  return outcomes;
}

namespace detail {

inline void require_paired(const std::vector<TripletJudgment>& triplets,
                           const std::vector<TripletOutcome>& outcomes) {
  require(triplets.size() == outcomes.size(), "triplet/outcome length mismatch");
  require(!triplets.empty(), "no triplets to score");
}

}  // namespace detail

inline double twoafc_score(const std::vector<TripletJudgment>& triplets,
                           const std::vector<TripletOutcome>& outcomes,
                           TiePolicy ties = TiePolicy::kHalf) {
  detail::require_paired(triplets, outcomes);
  double sum = 0.0;
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    const double share = triplets[i].share_a();
    if (outcomes[i].tie) {
      if (ties == TiePolicy::kStrict)
        throw ValidationError("metric tie on triplet " + std::to_string(i) +
                              " under the strict tie policy");
      sum += 0.5;
    } else {
      sum += outcomes[i].prefers_a ? share : 1.0 - share;
    }
  }
  return sum / static_cast<double>(triplets.size());
}

/// Fraction of triplets where the metric sides with the worker majority.
/// Metric ties count as half-correct (kHalf) or are rejected (kStrict); an
/// even worker split is rejected unless `vote_ties` is kHalf.
inline double majority_accuracy(const std::vector<TripletJudgment>& triplets,
                                const std::vector<TripletOutcome>& outcomes,
                                TiePolicy ties = TiePolicy::kHalf,
                                TiePolicy vote_ties = TiePolicy::kStrict) {
  detail::require_paired(triplets, outcomes);
  double correct = 0.0;
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    const auto& t = triplets[i];
    if (2 * t.votes_a == t.votes_total) {
      if (vote_ties == TiePolicy::kStrict)
        throw ValidationError("even worker split on triplet " + std::to_string(i) +
                              " with no vote-tie policy");
      correct += 0.5;
      continue;
    }
    if (outcomes[i].tie) {
      if (ties == TiePolicy::kStrict)
        throw ValidationError("metric tie on triplet " + std::to_string(i) +
                              " under the strict tie policy");
      correct += 0.5;
      continue;
    }
    const bool majority_a = 2 * t.votes_a > t.votes_total;
    if (majority_a == outcomes[i].prefers_a) correct += 1.0;
  }
  return correct / static_cast<double>(triplets.size());
}

struct OracleBounds {
  double max_twoafc = 0.0;
  double max_accuracy = 1.0;
};

/// Best achievable scores: always siding with the worker majority.
inline OracleBounds oracle_bounds(const std::vector<TripletJudgment>& triplets) {
  detail::require(!triplets.empty(), "no triplets to score");
  double sum = 0.0;
  for (const auto& t : triplets) sum += std::max(t.share_a(), 1.0 - t.share_a());
  return {sum / static_cast<double>(triplets.size()), 1.0};
}

struct TwoAfcReport {
  double twoafc = 0.0;
  double accuracy = 0.0;
  double oracle_twoafc = 0.0;
  std::size_t n_triplets = 0;
  std::size_t ties = 0;
};

inline TwoAfcReport evaluate_2afc(const std::vector<TripletJudgment>& triplets,
                                  const std::vector<TripletOutcome>& outcomes,
                                  TiePolicy ties = TiePolicy::kHalf,
                                  TiePolicy vote_ties = TiePolicy::kStrict) {
  TwoAfcReport r;
  r.twoafc = twoafc_score(triplets, outcomes, ties);
  r.accuracy = majority_accuracy(triplets, outcomes, ties, vote_ties);
  r.oracle_twoafc = oracle_bounds(triplets).max_twoafc;
  r.n_triplets = triplets.size();
  r.ties = static_cast<std::size_t>(
      std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.tie; }));
  return r;
}

inline nlohmann::json to_json(const TwoAfcReport& r) {
  return {{"twoafc", r.twoafc},
          {"accuracy", r.accuracy},
          {"oracle_twoafc", r.oracle_twoafc},
          {"n_triplets", r.n_triplets},
          {"ties", r.ties}};
}

}  // namespace w1kp
