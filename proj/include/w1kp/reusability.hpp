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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "w1kp/errors.hpp"
#include "w1kp/io.hpp"
#include "w1kp/variability.hpp"

namespace w1kp {

/// w1kp_k = 1 - eta_k for k = 2..k_max, one VariabilityScore per point so the
/// estimator behind each point stays visible.
struct ReusabilityCurve {
  std::vector<VariabilityScore> points;

  std::vector<std::size_t> k_values() const {
    std::vector<std::size_t> ks;
    for (const auto& p : points) ks.push_back(p.k);
    return ks;
  }
};

inline ReusabilityCurve reusability_curve(const DistanceMatrix& m, std::size_t k_max,
                                          std::uint64_t mc_samples, std::uint64_t seed,
                                          std::uint64_t budget = kDefaultExactBudget) {
  detail::require(m.kind() == DistanceKind::kNormalized,
                  "reusability curves need a normalized distance matrix");
  detail::require(k_max >= 2 && k_max <= m.size(),
                  "k_max=" + std::to_string(k_max) + " must lie in [2, " +
                      std::to_string(m.size()) + "]");
  ReusabilityCurve curve;
  std::optional<SubsetMinSampler> sampler;
  for (std::size_t k = 2; k <= k_max; ++k) {
    if (binomial(m.size(), k) <= budget) {
      curve.points.push_back(eta_k_exact(m, k, budget));
    } else {
      if (!sampler) sampler.emplace(m);
      curve.points.push_back(sampler->estimate(k, mc_samples, seed));
    }
  }
  return curve;
}

/// Smallest k whose w1kp_k reaches beta_high: the number of images after
/// which near-duplicates are expected.
inline std::optional<std::size_t> reuse_limit(const ReusabilityCurve& curve, double beta_high) {
  for (const auto& p : curve.points)
    if (p.w1kp >= beta_high) return p.k;
  return std::nullopt;
}

/// CSV with header `k,eta_tilde,estimator,samples,seed`; seed is empty for
/// exact points.
inline std::string curve_to_csv(const ReusabilityCurve& curve) {
  std::string out = "k,eta_tilde,estimator,samples,seed\n";
  for (const auto& p : curve.points) {
    out += std::to_string(p.k) + ',' + detail::format_double(p.w1kp) + ',' +
           std::string(to_string(p.estimator)) + ',' + std::to_string(p.samples) + ',' +
           (p.seed ? std::to_string(*p.seed) : std::string()) + '\n';
  }
  return out;
}

}  // namespace w1kp
