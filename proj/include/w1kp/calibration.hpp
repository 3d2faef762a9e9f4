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

// Cutoff calibration against graded human similarity judgments.
//
// Three cutoffs low < mid < high split [0, 1] into the left-closed segments
//   none = [0, low), low = [low, mid), mid = [mid, high), high = [high, 1].
// fit_cutoffs picks the triple maximizing the number of labeled scores that
// land in the segment of their label.
//
// Search space. Let s_1 < ... < s_D be the distinct scores. A cutoff placed in
// gap t (0 <= t <= D) lies strictly between g_lo(t) and g_hi(t), where
// g_lo(0) = 0, g_hi(D) = 1 and otherwise the gap is (s_t, s_{t+1}). Every
// threshold inside a gap classifies the data identically, so a candidate is a
// gap-index triple a <= b <= c; gaps of zero width (a score of exactly 0 or 1
// at the edge) are excluded. r cutoffs sharing gap t are placed at
// g_lo + (g_hi - g_lo) * q / (r + 1), q = 1..r, so a lone cutoff sits at the
// gap midpoint.
//
// Objective. With per-level prefix counts P_L(t) = #{scores of level L among
// the t smallest distinct scores}, the number of correct labels is
//   P_none(a) + P_low(b) - P_low(a) + P_mid(c) - P_mid(b) + P_high(D) - P_high(c),
// i.e. f(a) + g(b) + h(c) + const, maximized over a <= b <= c with suffix
// maxima in O(N log N). Ties go to the lexicographically smallest (a, b, c).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "w1kp/errors.hpp"
#include "w1kp/io.hpp"
#include "w1kp/random.hpp"
#include "w1kp/types.hpp"

namespace w1kp {

class CalibrationCutoffs {
 public:
  CalibrationCutoffs(double low, double mid, double high)
      : low_(low), mid_(mid), high_(high) {
    if (!(0.0 < low && low < mid && mid < high && high < 1.0))
      throw CalibrationError("cutoffs must satisfy 0 < low < mid < high < 1");
  }

  /// Rounded cutoffs published with the reference study, fitted on its own
  /// crowd judgments. Display defaults only; never fitted locally.
  static CalibrationCutoffs published() { return {0.2, 0.4, 0.85}; }

  double low() const noexcept { return low_; }
  double mid() const noexcept { return mid_; }
  double high() const noexcept { return high_; }

  friend bool operator==(const CalibrationCutoffs&, const CalibrationCutoffs&) = default;

 private:
  double low_, mid_, high_;
};

struct LabeledScore {
  double score;
  Level label;
};

inline Level classify(double score, const CalibrationCutoffs& cutoffs) {
  if (score < cutoffs.low()) return Level::kNone;
  if (score < cutoffs.mid()) return Level::kLow;
  if (score < cutoffs.high()) return Level::kMid;
  return Level::kHigh;
}

struct Accuracy {
  double micro = 0.0;
  double macro = 0.0;
};

/// micro = fraction correct; macro = unweighted mean recall over the levels
/// present in `labels`.
inline Accuracy accuracy(const std::vector<Level>& preds, const std::vector<Level>& labels) {
  detail::require(preds.size() == labels.size(), "prediction/label length mismatch");
  detail::require(!labels.empty(), "accuracy needs at least one label");
  std::array<std::size_t, kLevelCount> total{}, hit{};
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto l = static_cast<std::size_t>(labels[i]);
    ++total[l];
    if (preds[i] == labels[i]) {
      ++hit[l];
      ++correct;
    }
  }
  double recall_sum = 0.0;
  std::size_t present = 0;
  for (std::size_t l = 0; l < kLevelCount; ++l) {
    if (total[l] == 0) continue;
    recall_sum += static_cast<double>(hit[l]) / static_cast<double>(total[l]);
    ++present;
  }
  return {static_cast<double>(correct) / static_cast<double>(labels.size()),
          recall_sum / static_cast<double>(present)};
}

inline Accuracy evaluate_cutoffs(const std::vector<LabeledScore>& data,
                                 const CalibrationCutoffs& cutoffs) {
  std::vector<Level> preds, labels;
  preds.reserve(data.size());
  labels.reserve(data.size());
  for (const auto& d : data) {
    preds.push_back(classify(d.score, cutoffs));
    labels.push_back(d.label);
  }
  return accuracy(preds, labels);
}

struct CutoffFit {
  CalibrationCutoffs cutoffs;
  std::size_t correct = 0;  // objective value: labels landing in their segment
  double train_accuracy = 0.0;
};

/// Distinct sorted scores and the gap geometry used by the fitter. Exposed so
/// tests can enumerate the same candidate space independently.
struct CutoffCandidates {
  std::vector<double> distinct;  // s_1 < ... < s_D

  std::size_t gaps() const noexcept { return distinct.size() + 1; }
  double gap_lo(std::size_t t) const { return t == 0 ? 0.0 : distinct[t - 1]; }
  double gap_hi(std::size_t t) const {
    return t == distinct.size() ? 1.0 : distinct[t];
  }
  bool usable(std::size_t t) const { return gap_hi(t) > gap_lo(t); }

  /// Cutoff values for gap indices a <= b <= c.
  CalibrationCutoffs place(std::size_t a, std::size_t b, std::size_t c) const {
    const std::array<std::size_t, 3> g{a, b, c};
    std::array<double, 3> beta{};
    for (std::size_t q = 0; q < 3;) {
      std::size_t r = q;
      while (r < 3 && g[r] == g[q]) ++r;
      const double lo = gap_lo(g[q]), hi = gap_hi(g[q]);
      const double share = static_cast<double>(r - q + 1);
      for (std::size_t p = q; p < r; ++p)
        beta[p] = lo + (hi - lo) * static_cast<double>(p - q + 1) / share;
      q = r;
    }
    return {beta[0], beta[1], beta[2]};
  }
};

inline CutoffCandidates cutoff_candidates(const std::vector<LabeledScore>& data) {
  CutoffCandidates cand;
  cand.distinct.reserve(data.size());
  for (const auto& d : data) cand.distinct.push_back(d.score);
  std::sort(cand.distinct.begin(), cand.distinct.end());
  cand.distinct.erase(std::unique(cand.distinct.begin(), cand.distinct.end()),
                      cand.distinct.end());
  return cand;
}

inline double round_to_multiple(double x, double step) {
  return std::round(x / step) * step;
}

inline CutoffFit fit_cutoffs(const std::vector<LabeledScore>& data,
                             std::optional<double> round_to = std::nullopt) {
  detail::require(!data.empty(), "calibration needs at least one labeled score");
  for (const auto& d : data)
    detail::require(std::isfinite(d.score) && d.score >= 0.0 && d.score <= 1.0,
                    "calibration scores must lie in [0, 1]");
  if (round_to) detail::require(*round_to > 0.0 && *round_to < 1.0, "round_to must lie in (0, 1)");

  const auto cand = cutoff_candidates(data);
  const std::size_t D = cand.distinct.size();
  const std::size_t G = cand.gaps();

  // prefix[L][t]: records of level L among the t smallest distinct scores.
  std::array<std::vector<long>, kLevelCount> prefix;
  for (auto& p : prefix) p.assign(G, 0);
  {
    std::array<std::vector<long>, kLevelCount> at;
    for (auto& v : at) v.assign(D, 0);
    for (const auto& d : data) {
      const auto t = static_cast<std::size_t>(
          std::lower_bound(cand.distinct.begin(), cand.distinct.end(), d.score) -
          cand.distinct.begin());
      ++at[static_cast<std::size_t>(d.label)][t];
    }
    for (std::size_t l = 0; l < kLevelCount; ++l)
      for (std::size_t t = 0; t < D; ++t) prefix[l][t + 1] = prefix[l][t] + at[l][t];
  }
  const auto P = [&](Level l, std::size_t t) { return prefix[static_cast<std::size_t>(l)][t]; };
  const auto f = [&](std::size_t a) { return P(Level::kNone, a) - P(Level::kLow, a); };
  const auto g = [&](std::size_t b) { return P(Level::kLow, b) - P(Level::kMid, b); };
  const auto h = [&](std::size_t c) { return P(Level::kMid, c) - P(Level::kHigh, c); };

  constexpr long kNeg = std::numeric_limits<long>::min() / 4;
  // best_h[t] = max_{c >= t, usable} h(c); best_gh[t] = max_{b >= t, usable} g(b) + best_h[b].
  std::vector<long> best_h(G + 1, kNeg), best_gh(G + 1, kNeg);
  for (std::size_t t = G; t-- > 0;) {
    best_h[t] = best_h[t + 1];
    if (cand.usable(t)) best_h[t] = std::max(best_h[t], h(t));
    best_gh[t] = best_gh[t + 1];
    if (cand.usable(t) && best_h[t] > kNeg) best_gh[t] = std::max(best_gh[t], g(t) + best_h[t]);
  }

  long best_total = kNeg;
  std::size_t a = 0;
  for (std::size_t t = 0; t < G; ++t) {
    if (!cand.usable(t) || best_gh[t] <= kNeg) continue;
    const long total = f(t) + best_gh[t];
    if (total > best_total) {
      best_total = total;
      a = t;
    }
  }
  std::size_t b = a;
  while (!(cand.usable(b) && g(b) + best_h[b] == best_gh[a])) ++b;
  std::size_t c = b;
  while (!(cand.usable(c) && h(c) == best_h[b])) ++c;

  const long correct = best_total + P(Level::kHigh, D);
  auto cutoffs = cand.place(a, b, c);
  if (round_to) {
    const double lo = round_to_multiple(cutoffs.low(), *round_to);
    const double mid = round_to_multiple(cutoffs.mid(), *round_to);
    const double hi = round_to_multiple(cutoffs.high(), *round_to);
    if (!(0.0 < lo && lo < mid && mid < hi && hi < 1.0))
      throw CalibrationError("rounding to " + std::to_string(*round_to) +
                             " collapses the cutoff ordering");
    cutoffs = CalibrationCutoffs(lo, mid, hi);
  }
  auto hits = static_cast<std::size_t>(correct);
  if (round_to) {
    hits = 0;
    for (const auto& d : data) hits += classify(d.score, cutoffs) == d.label ? 1 : 0;
  }
  return {cutoffs, hits, static_cast<double>(hits) / static_cast<double>(data.size())};
}

struct FoldResult {
  CalibrationCutoffs cutoffs;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  Accuracy test;
};

struct CrossValidation {
  std::vector<FoldResult> folds;
  Accuracy mean;
};

/// Deterministic fold assignment: shuffle record indices with the seed, then
/// fold f holds positions [f * N / folds, (f + 1) * N / folds).
inline std::vector<std::size_t> fold_assignment(std::size_t size, std::size_t folds,
                                                std::uint64_t seed) {
  std::vector<std::size_t> order(size);
  for (std::size_t i = 0; i < size; ++i) order[i] = i;
  Engine engine = make_engine(seed);
  shuffle(order, engine);
  std::vector<std::size_t> fold_of(size);
  for (std::size_t f = 0; f < folds; ++f)
    for (std::size_t p = size * f / folds; p < size * (f + 1) / folds; ++p)
      fold_of[order[p]] = f;
  return fold_of;
}

inline CrossValidation cross_validate(const std::vector<LabeledScore>& data,
                                      std::size_t folds, std::uint64_t seed,
                                      std::optional<double> round_to = std::nullopt) {
  detail::require(folds >= 2, "cross-validation needs at least 2 folds");
  detail::require(data.size() >= folds, "cross-validation needs at least one record per fold");
  const auto fold_of = fold_assignment(data.size(), folds, seed);
  CrossValidation cv;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<LabeledScore> train, test;
    for (std::size_t i = 0; i < data.size(); ++i)
      (fold_of[i] == f ? test : train).push_back(data[i]);
    const auto fit = fit_cutoffs(train, round_to);
    cv.folds.push_back({fit.cutoffs, train.size(), test.size(), evaluate_cutoffs(test, fit.cutoffs)});
  }
  for (const auto& r : cv.folds) {
    cv.mean.micro += r.test.micro;
    cv.mean.macro += r.test.macro;
  }
  cv.mean.micro /= static_cast<double>(folds);
  cv.mean.macro /= static_cast<double>(folds);
  return cv;
}

inline constexpr int kCutoffsArtifactVersion = 1;

inline nlohmann::json to_json(const CalibrationCutoffs& c) {
  return {{"version", kCutoffsArtifactVersion},
          {"beta_low", c.low()},
          {"beta_mid", c.mid()},
          {"beta_high", c.high()}};
}

inline CalibrationCutoffs cutoffs_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("cutoffs artifact must be a JSON object");
  if (!j.contains("version") || !j["version"].is_number_integer() ||
      j["version"].get<int>() != kCutoffsArtifactVersion)
    throw FormatError("unsupported or missing cutoffs artifact version");
  for (const char* key : {"beta_low", "beta_mid", "beta_high"})
    if (!j.contains(key) || !j[key].is_number())
      throw FormatError(std::string("cutoffs artifact lacks \"") + key + "\"");
  return {j["beta_low"].get<double>(), j["beta_mid"].get<double>(), j["beta_high"].get<double>()};
}

inline void save_cutoffs(const CalibrationCutoffs& c, const std::filesystem::path& path) {
  detail::write_file(path, to_json(c).dump() + "\n");
}

inline CalibrationCutoffs load_cutoffs(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(detail::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("'" + path.string() + "': " + e.what());
  }
  return cutoffs_from_json(j);
}

}  // namespace w1kp
