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

// Empirical-CDF normalization of raw distances.
//
// A FittedCdf holds the full sorted sample of m raw distances. A raw distance
// x maps to |{s in sample : s <= x}| / m, which is uniform on [0, 1] when the
// sample and the query come from the same continuous distribution. Queries
// past the sample maximum saturate at exactly 1.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "w1kp/errors.hpp"
#include "w1kp/io.hpp"
#include "w1kp/types.hpp"

namespace w1kp {

class FittedCdf {
 public:
  FittedCdf(std::vector<double> sample, MetricKind metric, std::string provenance)
      : sample_(std::move(sample)), metric_(metric), provenance_(std::move(provenance)) {
    detail::require(!sample_.empty(), "CDF sample must not be empty");
    for (double v : sample_)
      detail::require(std::isfinite(v) && v >= 0.0,
                      "CDF sample values must be finite and non-negative");
    std::sort(sample_.begin(), sample_.end());
  }

  std::span<const double> sample() const noexcept { return sample_; }
  std::size_t size() const noexcept { return sample_.size(); }
  MetricKind metric() const noexcept { return metric_; }
  const std::string& provenance() const noexcept { return provenance_; }

  /// Fraction of the sample <= x (right-closed ties).
  double operator()(double x) const {
    detail::require(!std::isnan(x), "cannot normalize NaN");
    const auto count = std::upper_bound(sample_.begin(), sample_.end(), x) - sample_.begin();
    return static_cast<double>(count) / static_cast<double>(sample_.size());
  }

  friend bool operator==(const FittedCdf&, const FittedCdf&) = default;

 private:
  std::vector<double> sample_;
  MetricKind metric_;
  std::string provenance_;
};

inline FittedCdf fit_cdf(std::vector<double> distances, MetricKind metric,
                         std::string provenance = {}) {
  return FittedCdf(std::move(distances), metric, std::move(provenance));
}

inline double apply_cdf(const FittedCdf& cdf, double x) { return cdf(x); }

inline DistanceMatrix normalize_matrix(const DistanceMatrix& raw, const FittedCdf& cdf) {
  detail::require(raw.kind() == DistanceKind::kRaw,
                  "normalize_matrix expects a raw distance matrix");
  std::vector<double> out(raw.upper().size());
  std::transform(raw.upper().begin(), raw.upper().end(), out.begin(),
                 [&](double x) { return cdf(x); });
  return DistanceMatrix(raw.size(), std::move(out), DistanceKind::kNormalized);
}

inline constexpr int kCdfArtifactVersion = 1;

inline nlohmann::json to_json(const FittedCdf& cdf) {
  return {{"version", kCdfArtifactVersion},
          {"metric", std::string(to_string(cdf.metric()))},
          {"provenance", cdf.provenance()},
          {"sample", std::vector<double>(cdf.sample().begin(), cdf.sample().end())}};
}

inline FittedCdf cdf_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("CDF artifact must be a JSON object");
  if (!j.contains("version") || !j["version"].is_number_integer())
    throw FormatError("CDF artifact lacks an integer \"version\"");
  if (j["version"].get<int>() != kCdfArtifactVersion)
    throw FormatError("unsupported CDF artifact version " + j["version"].dump());
  if (!j.contains("metric") || !j["metric"].is_string())
    throw FormatError("CDF artifact lacks \"metric\"");
  if (!j.contains("sample") || !j["sample"].is_array())
    throw FormatError("CDF artifact lacks a \"sample\" array");
  std::vector<double> sample;
  sample.reserve(j["sample"].size());
  for (const auto& v : j["sample"]) {
    if (!v.is_number()) throw FormatError("non-numeric entry in CDF sample");
    sample.push_back(v.get<double>());
  }
  std::string provenance;
  if (j.contains("provenance") && j["provenance"].is_string())
    provenance = j["provenance"].get<std::string>();
  return FittedCdf(std::move(sample), parse_metric(j["metric"].get<std::string>()),
                   std::move(provenance));
}

inline void save_cdf(const FittedCdf& cdf, const std::filesystem::path& path) {
  detail::write_file(path, to_json(cdf).dump() + "\n");
}

inline FittedCdf load_cdf(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(detail::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("'" + path.string() + "': " + e.what());
  }
  return cdf_from_json(j);
}

/// One-sample Kolmogorov-Smirnov statistic of `values` against U[0, 1]:
/// sup |F_n(x) - x|.
inline double ks_statistic_uniform(std::vector<double> values) {
  detail::require(!values.empty(), "KS statistic needs at least one value");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = std::clamp(values[i], 0.0, 1.0);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - x, x - static_cast<double>(i) / n});
  }
  return d;
}

/// Large-sample critical value of the one-sample KS statistic at level
/// alpha: sqrt(-ln(alpha / 2) / 2) / sqrt(n).
inline double ks_critical_value(std::size_t n, double alpha) {
  detail::require(n > 0 && alpha > 0.0 && alpha < 1.0, "invalid KS critical value request");
  return std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
}

/// Sample size to use with the KS helpers when the reference CDF was itself
/// fitted on `fit_size` points and compared against `test_size` fresh ones.
inline std::size_t ks_effective_size(std::size_t fit_size, std::size_t test_size) {
  detail::require(fit_size > 0 && test_size > 0, "invalid KS sample sizes");
  return fit_size * test_size / (fit_size + test_size);
}

/// Asymptotic p-value of a KS statistic d on n points (Kolmogorov
/// distribution with the Stephens small-sample correction).
inline double ks_p_value(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace w1kp
