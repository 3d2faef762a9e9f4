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

#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "w1kp/w1kp.hpp"

namespace w1kp::cli {
namespace {

using nlohmann::json;

// Writes to --out when given, otherwise to stdout.
void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty())
    out << text;
  else
    detail::write_file(out_path, text);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

MetricKind resolve_metric(const FittedCdf& cdf, const std::string& requested) {
  if (requested.empty()) return cdf.metric();
  const auto metric = parse_metric(requested);
  if (metric != cdf.metric())
    throw ValidationError("requested metric " + requested + " does not match the CDF artifact (" +
                          std::string(to_string(cdf.metric())) + ")");
  return metric;
}

DistanceMatrix normalized_matrix(const EmbeddingSet& set, const FittedCdf& cdf,
                                 MetricKind metric) {
  return normalize_matrix(pairwise_matrix(set, metric), cdf);
}

std::optional<CalibrationCutoffs> resolve_cutoffs(const std::string& path, bool published) {
  if (!path.empty() && published)
    throw ValidationError("--cutoffs and --published-cutoffs are mutually exclusive");
  if (!path.empty()) return load_cutoffs(path);
  if (published) return CalibrationCutoffs::published();
  return std::nullopt;
}

json score_to_json(const VariabilityScore& s) {
  json j = {{"eta", s.eta},
            {"w1kp", s.w1kp},
            {"kernel", s.kernel == KernelKind::kMean ? "mean" : "kmax"},
            {"estimator", std::string(to_string(s.estimator))},
            {"samples", s.samples}};
  if (s.kernel == KernelKind::kMin) j["k"] = s.k;
  if (s.seed) {
    j["seed"] = *s.seed;
    j["std_error"] = s.std_error;
  }
  return j;
}

// ---------------------------------------------------------------- fit-cdf

struct FitCdfArgs {
  std::string embeddings, pairs, metric = "euclidean", provenance, out;
  std::uint64_t pair_count = 10'000;
  std::optional<std::uint64_t> seed;
};

// Distinct pair indices in [0, total), sorted (Floyd's sampling).
std::vector<std::uint64_t> sample_pair_indices(std::uint64_t total, std::uint64_t count,
                                               std::uint64_t seed) {
  Engine engine = make_engine(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(count * 2);
  for (std::uint64_t j = total - count; j < total; ++j) {
    const std::uint64_t t = uniform_below(engine, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> sorted(chosen.begin(), chosen.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

std::vector<std::pair<std::size_t, std::size_t>> read_pair_manifest(const std::string& path,
                                                                     const EmbeddingSet& set) {
  json j;
  try {
    j = json::parse(detail::read_file(path));
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
  if (!j.is_object() || !j.contains("pairs") || !j["pairs"].is_array())
    throw FormatError("pair manifest lacks a \"pairs\" array");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& p : j["pairs"]) {
    std::string a, b;
    if (p.is_array() && p.size() == 2 && p[0].is_string() && p[1].is_string()) {
      a = p[0].get<std::string>();
      b = p[1].get<std::string>();
    } else if (p.is_object() && p.contains("a") && p.contains("b") && p["a"].is_string() &&
               p["b"].is_string()) {
      a = p["a"].get<std::string>();
      b = p["b"].get<std::string>();
    } else {
      throw FormatError("pair manifest entry " + std::to_string(pairs.size()) +
                        " must be [a, b] or {\"a\":..,\"b\":..}");
    }
    const auto ia = set.index_of(a), ib = set.index_of(b);
    if (!ia || !ib)
      throw ValidationError("pair manifest entry " + std::to_string(pairs.size()) +
                            " names an id missing from the embeddings");
    if (*ia == *ib)
      throw ValidationError("pair manifest entry " + std::to_string(pairs.size()) +
                            " pairs an image with itself");
    pairs.emplace_back(*ia, *ib);
  }
  if (pairs.empty()) throw ValidationError("pair manifest is empty");
  return pairs;
}

int fit_cdf_command(const FitCdfArgs& a, std::ostream& out) {
  const auto set = read_embeddings(a.embeddings);
  const auto metric = parse_metric(a.metric);
  std::vector<double> distances;
  if (!a.pairs.empty()) {
    for (const auto& [i, j] : read_pair_manifest(a.pairs, set))
      distances.push_back(distance(metric, set.row(i), set.row(j)));
  } else {
    if (!a.seed) throw ValidationError("fit-cdf samples pairs at random; pass --seed");
    if (set.size() < 2) throw CapacityError("fit-cdf needs at least 2 images");
    const std::uint64_t total = DistanceMatrix::pair_count(set.size());
    if (a.pair_count < 1) throw ValidationError("--pair-count must be at least 1");
    if (a.pair_count > total)
      throw CapacityError("--pair-count " + std::to_string(a.pair_count) + " exceeds the " +
                          std::to_string(total) + " distinct pairs of " +
                          std::to_string(set.size()) + " images");
    for (auto p : sample_pair_indices(total, a.pair_count, *a.seed)) {
      const auto [i, j] = DistanceMatrix::pair_at(set.size(), p);
      distances.push_back(distance(metric, set.row(i), set.row(j)));
    }
  }
  const std::string provenance = a.provenance.empty() ? set.provenance() : a.provenance;
  const auto cdf = fit_cdf(std::move(distances), metric, provenance);
  emit(to_json(cdf).dump() + "\n", a.out, out);
  return kOk;
}

// ---------------------------------------------------------------- score

struct ScoreArgs {
  std::string embeddings, cdf, metric, kernel = "mean", cutoffs, out;
  bool published_cutoffs = false;
  std::size_t k = 0;
  std::uint64_t samples = kDefaultMonteCarloSamples, budget = kDefaultExactBudget;
  std::optional<std::uint64_t> seed;
};

int score_command(const ScoreArgs& a, std::ostream& out) {
  if (a.kernel != "mean" && a.kernel != "kmax")
    throw ValidationError("--kernel must be mean or kmax");
  if (a.kernel == "kmax" && a.k == 0) throw ValidationError("--kernel kmax needs --k");
  const auto cutoffs = resolve_cutoffs(a.cutoffs, a.published_cutoffs);
  const auto set = read_embeddings(a.embeddings);
  const auto cdf = load_cdf(a.cdf);
  const auto metric = resolve_metric(cdf, a.metric);
  if (a.kernel == "kmax") {
    detail::require(a.k >= 2 && a.k <= set.size(),
                    "--k " + std::to_string(a.k) + " must lie in [2, " +
                        std::to_string(set.size()) + "]");
    if (binomial(set.size(), a.k) > a.budget && !a.seed)
      throw ValidationError("C(n, k) exceeds the exact budget, so Monte Carlo is needed; pass --seed");
  }
  const auto m = normalized_matrix(set, cdf, metric);
  const auto score = a.kernel == "mean" ? eta_mean(m) : eta_k(m, a.k, a.samples, a.seed.value_or(0), a.budget);
  json j = score_to_json(score);
  j["n"] = set.size();
  j["metric"] = std::string(to_string(metric));
  if (cutoffs) {
    j["level"] = std::string(to_string(classify(score.w1kp, *cutoffs)));
    j["cutoffs"] = to_json(*cutoffs);
  }
  emit(dump(j), a.out, out);
  return kOk;
}

// ---------------------------------------------------------------- calibrate

struct CalibrateArgs {
  std::string judgments, embeddings, cdf, metric, scores, out, report;
  std::optional<double> round_to;
  std::size_t folds = 5;
  std::optional<std::uint64_t> seed;
};

std::vector<LabeledScore> read_score_csv(const std::string& path) {
  std::istringstream in(detail::read_file(path));
  std::string line;
  std::size_t line_no = 0;
  std::vector<LabeledScore> data;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = detail::trim(line);
    if (line_no == 1) {
      if (view != "score,label") throw FormatError("line 1: header must be score,label");
      continue;
    }
    if (view.empty()) continue;
    const auto fields = detail::split_csv_line(view);
    const auto where = "line " + std::to_string(line_no) + ": ";
    if (fields.size() != 2) throw FormatError(where + "expected score,label");
    double score = 0.0;
    const auto f = detail::trim(fields[0]);
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), score);
    if (ec != std::errc{} || ptr != f.data() + f.size())
      throw FormatError(where + "cannot parse score");
    const auto level = parse_level(detail::trim(fields[1]));
    if (!level) throw ValidationError(where + "unknown label '" + std::string(fields[1]) + "'");
    data.push_back({score, *level});
  }
  return data;
}

std::vector<LabeledScore> labeled_scores_from_judgments(const CalibrateArgs& a) {
  if (a.embeddings.empty() || a.cdf.empty())
    throw ValidationError("--judgments needs --embeddings and --cdf");
  const auto records = read_judgments(a.judgments, JudgmentKind::kGraded);
  const auto set = read_embeddings(a.embeddings);
  const auto cdf = load_cdf(a.cdf);
  const auto metric = resolve_metric(cdf, a.metric);
  std::vector<LabeledScore> data;
  for (const auto& g : records.graded) {
    const auto ia = set.index_of(g.a), ib = set.index_of(g.b);
    if (!ia || !ib)
      throw ValidationError("line " + std::to_string(g.line) + ": unknown image id in pair '" +
                            g.pair_id + "'");
    const double w1kp = 1.0 - cdf(distance(metric, set.row(*ia), set.row(*ib)));
    data.push_back({w1kp, g.label});
  }
  return data;
}

int calibrate_command(const CalibrateArgs& a, std::ostream& out) {
  if (a.judgments.empty() == a.scores.empty())
    throw ValidationError("pass exactly one of --judgments or --scores");
  if (!a.seed) throw ValidationError("calibrate shuffles cross-validation folds; pass --seed");
  const auto data = a.scores.empty() ? labeled_scores_from_judgments(a) : read_score_csv(a.scores);
  const auto fit = fit_cutoffs(data, a.round_to);
  const auto train = evaluate_cutoffs(data, fit.cutoffs);
  const auto cv = cross_validate(data, a.folds, *a.seed, a.round_to);

  json folds = json::array();
  for (const auto& f : cv.folds)
    folds.push_back({{"cutoffs", to_json(f.cutoffs)},
                     {"train_size", f.train_size},
                     {"test_size", f.test_size},
                     {"micro", f.test.micro},
                     {"macro", f.test.macro}});
  json report = {{"n", data.size()},
                 {"cutoffs", to_json(fit.cutoffs)},
                 {"train_micro", train.micro},
                 {"train_macro", train.macro},
                 {"cv",
                  {{"folds", a.folds},
                   {"seed", *a.seed},
                   {"mean_micro", cv.mean.micro},
                   {"mean_macro", cv.mean.macro},
                   {"per_fold", folds}}}};
  if (!a.out.empty()) save_cutoffs(fit.cutoffs, a.out);
  emit(dump(report), a.report, out);
  return kOk;
}

// ---------------------------------------------------------------- eval-2afc

struct EvalArgs {
  std::string embeddings, triplets, cdf, metric, tie_policy = "half", vote_ties = "strict", out;
};

TiePolicy parse_policy(const std::string& name, const char* flag) {
  if (name == "half") return TiePolicy::kHalf;
  if (name == "strict") return TiePolicy::kStrict;
  throw ValidationError(std::string(flag) + " must be half or strict");
}

int eval_2afc_command(const EvalArgs& a, std::ostream& out) {
  const auto ties = parse_policy(a.tie_policy, "--tie-policy");
  const auto vote_ties = parse_policy(a.vote_ties, "--vote-ties");
  const auto set = read_embeddings(a.embeddings);
  const auto cdf = load_cdf(a.cdf);
  const auto metric = resolve_metric(cdf, a.metric);
  const auto records = read_judgments(a.triplets, JudgmentKind::kTriplet);
  const auto outcomes = evaluate_triplets(records.triplets, set, metric, cdf);
  emit(dump(to_json(evaluate_2afc(records.triplets, outcomes, ties, vote_ties))), a.out, out);
  return kOk;
}

// ---------------------------------------------------------------- reusability

struct ReusabilityArgs {
  std::string embeddings, cdf, metric, cutoffs, out;
  bool published_cutoffs = false;
  std::size_t k_max = 0;
  std::uint64_t samples = kDefaultMonteCarloSamples, budget = kDefaultExactBudget;
  std::optional<std::uint64_t> seed;
  std::optional<double> beta_high;
};

int reusability_command(const ReusabilityArgs& a, std::ostream& out, std::ostream& err) {
  const auto cutoffs = resolve_cutoffs(a.cutoffs, a.published_cutoffs);
  if (a.beta_high && cutoffs)
    throw ValidationError("--beta-high conflicts with --cutoffs/--published-cutoffs");
  const auto set = read_embeddings(a.embeddings);
  const auto cdf = load_cdf(a.cdf);
  const auto metric = resolve_metric(cdf, a.metric);
  const std::size_t k_max = a.k_max == 0 ? set.size() : a.k_max;
  detail::require(k_max >= 2 && k_max <= set.size(),
                  "--k-max " + std::to_string(k_max) + " must lie in [2, " +
                      std::to_string(set.size()) + "]");
  bool needs_sampling = false;
  for (std::size_t k = 2; k <= k_max; ++k)
    needs_sampling = needs_sampling || binomial(set.size(), k) > a.budget;
  if (needs_sampling && !a.seed)
    throw ValidationError("some curve points need Monte Carlo; pass --seed");
  const auto m = normalized_matrix(set, cdf, metric);
  const auto curve = reusability_curve(m, k_max, a.samples, a.seed.value_or(0), a.budget);
  emit(curve_to_csv(curve), a.out, out);

  std::optional<double> beta = a.beta_high;
  if (cutoffs) beta = cutoffs->high();
  if (beta) {
    const auto limit = reuse_limit(curve, *beta);
    json summary = {{"beta_high", *beta}, {"reuse_limit", limit ? json(*limit) : json(nullptr)}};
    (a.out.empty() ? err : out) << summary.dump() << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- mds

struct MdsArgs {
  std::string embeddings, cdf, metric = "euclidean", out;
  std::size_t dims = 2;
};

int mds_command(const MdsArgs& a, std::ostream& out) {
  const auto set = read_embeddings(a.embeddings);
  DistanceMatrix m = [&] {
    if (a.cdf.empty()) return pairwise_matrix(set, parse_metric(a.metric));
    const auto cdf = load_cdf(a.cdf);
    return normalized_matrix(set, cdf, cdf.metric());
  }();
  emit(coordinates_to_csv(classical_mds(m, a.dims), set.ids()), a.out, out);
  return kOk;
}

// ---------------------------------------------------------------- split-prompt

struct SplitArgs {
  std::string text, file, out;
};

int split_prompt_command(const SplitArgs& a, std::ostream& out) {
  if (!a.text.empty() && !a.file.empty())
    throw ValidationError("pass a prompt argument or --file, not both");
  if (a.file.empty()) {
    emit(to_json(split_prompt(a.text)).dump() + "\n", a.out, out);
    return kOk;
  }
  std::istringstream in(detail::read_file(a.file));
  std::string result;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    result += to_json(split_prompt(line)).dump() + "\n";
  }
  emit(result, a.out, out);
  return kOk;
}

// ---------------------------------------------------------------- correlate

struct CorrelateArgs {
  std::string input, x, y, out;
};

int correlate_command(const CorrelateArgs& a, std::ostream& out) {
  std::istringstream in(detail::read_file(a.input));
  std::string line;
  if (!std::getline(in, line)) throw FormatError("'" + a.input + "' is empty");
  const auto header = detail::split_csv_line(detail::trim(line));
  std::optional<std::size_t> cx, cy;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (detail::trim(header[c]) == a.x) cx = c;
    if (detail::trim(header[c]) == a.y) cy = c;
  }
  if (!cx || !cy) throw ValidationError("columns --x/--y not found in the CSV header");
  std::vector<double> xs, ys;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = detail::trim(line);
    if (view.empty()) continue;
    const auto fields = detail::split_csv_line(view);
    if (fields.size() != header.size())
      throw FormatError("line " + std::to_string(line_no) + ": field count differs from header");
    for (auto [col, dest] : {std::pair{*cx, &xs}, std::pair{*cy, &ys}}) {
      const auto f = detail::trim(fields[col]);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc{} || ptr != f.data() + f.size())
        throw FormatError("line " + std::to_string(line_no) + ": cannot parse '" +
                          std::string(f) + "'");
      dest->push_back(v);
    }
  }
  const double rho = spearman(xs, ys);
  emit(dump({{"spearman", rho}, {"n", xs.size()}, {"x", a.x}, {"y", a.y}}), a.out, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perceptual variability scoring for generated image sets", "w1kp"};
  app.set_config("--config", "", "TOML/INI file with default flag values");
  app.require_subcommand(1);

  FitCdfArgs fit;
  auto* fit_cmd = app.add_subcommand("fit-cdf", "Fit the empirical distance CDF");
  fit_cmd->add_option("--embeddings", fit.embeddings, "Embedding file")->required();
  fit_cmd->add_option("--pairs", fit.pairs, "JSON pair manifest; replaces random sampling");
  fit_cmd->add_option("--metric", fit.metric, "euclidean | squared_euclidean | cosine")
      ->capture_default_str();
  fit_cmd->add_option("--pair-count", fit.pair_count, "Random pairs to sample")
      ->capture_default_str();
  fit_cmd->add_option("--seed", fit.seed, "Sampling seed");
  fit_cmd->add_option("--provenance", fit.provenance, "Backbone/generator tag");
  fit_cmd->add_option("--out", fit.out, "Output CDF artifact")->required();

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Score one image set");
  score_cmd->add_option("--embeddings", score.embeddings)->required();
  score_cmd->add_option("--cdf", score.cdf, "CDF artifact")->required();
  score_cmd->add_option("--metric", score.metric, "Must match the CDF artifact");
  score_cmd->add_option("--kernel", score.kernel, "mean | kmax")->capture_default_str();
  score_cmd->add_option("--k", score.k, "Subset size for --kernel kmax");
  score_cmd->add_option("--samples", score.samples, "Monte-Carlo subsets")->capture_default_str();
  score_cmd->add_option("--budget", score.budget, "Largest C(n,k) enumerated exactly")
      ->capture_default_str();
  score_cmd->add_option("--seed", score.seed, "Monte-Carlo seed");
  score_cmd->add_option("--cutoffs", score.cutoffs, "Cutoffs artifact for the level");
  score_cmd->add_flag("--published-cutoffs", score.published_cutoffs,
                      "Classify with the published 0.2/0.4/0.85 cutoffs");
  score_cmd->add_option("--out", score.out);

  CalibrateArgs cal;
  auto* cal_cmd = app.add_subcommand("calibrate", "Fit similarity-level cutoffs");
  cal_cmd->add_option("--judgments", cal.judgments, "Graded judgments (JSON lines)");
  cal_cmd->add_option("--embeddings", cal.embeddings);
  cal_cmd->add_option("--cdf", cal.cdf);
  cal_cmd->add_option("--metric", cal.metric);
  cal_cmd->add_option("--scores", cal.scores, "CSV score,label instead of judgments");
  cal_cmd->add_option("--round-to", cal.round_to, "Round cutoffs to this multiple");
  cal_cmd->add_option("--folds", cal.folds, "Cross-validation folds")->capture_default_str();
  cal_cmd->add_option("--seed", cal.seed, "Fold-assignment seed");
  cal_cmd->add_option("--out", cal.out, "Cutoffs artifact");
  cal_cmd->add_option("--report", cal.report, "Report JSON (default stdout)");

  EvalArgs ev;
  auto* ev_cmd = app.add_subcommand("eval-2afc", "Score a backbone on 2AFC triplets");
  ev_cmd->add_option("--embeddings", ev.embeddings)->required();
  ev_cmd->add_option("--triplets", ev.triplets, "Triplet judgments (JSON lines)")->required();
  ev_cmd->add_option("--cdf", ev.cdf)->required();
  ev_cmd->add_option("--metric", ev.metric);
  ev_cmd->add_option("--tie-policy", ev.tie_policy, "half | strict")->capture_default_str();
  ev_cmd->add_option("--vote-ties", ev.vote_ties, "half | strict")->capture_default_str();
  ev_cmd->add_option("--out", ev.out);

  ReusabilityArgs reuse;
  auto* reuse_cmd = app.add_subcommand("reusability", "Prompt-reusability curve");
  reuse_cmd->add_option("--embeddings", reuse.embeddings)->required();
  reuse_cmd->add_option("--cdf", reuse.cdf)->required();
  reuse_cmd->add_option("--metric", reuse.metric);
  reuse_cmd->add_option("--k-max", reuse.k_max, "Largest k (default n)");
  reuse_cmd->add_option("--samples", reuse.samples)->capture_default_str();
  reuse_cmd->add_option("--budget", reuse.budget)->capture_default_str();
  reuse_cmd->add_option("--seed", reuse.seed);
  reuse_cmd->add_option("--beta-high", reuse.beta_high, "Report the first k reaching this");
  reuse_cmd->add_option("--cutoffs", reuse.cutoffs);
  reuse_cmd->add_flag("--published-cutoffs", reuse.published_cutoffs);
  reuse_cmd->add_option("--out", reuse.out, "Curve CSV (default stdout)");

  MdsArgs mds;
  auto* mds_cmd = app.add_subcommand("mds", "Classical MDS coordinates");
  mds_cmd->add_option("--embeddings", mds.embeddings)->required();
  mds_cmd->add_option("--cdf", mds.cdf, "Embed normalized instead of raw distances");
  mds_cmd->add_option("--metric", mds.metric)->capture_default_str();
  mds_cmd->add_option("--dims", mds.dims)->capture_default_str();
  mds_cmd->add_option("--out", mds.out);

  SplitArgs split;
  auto* split_cmd = app.add_subcommand("split-prompt", "Split a prompt into main text and keywords");
  split_cmd->add_option("text", split.text, "Prompt text");
  split_cmd->add_option("--file", split.file, "One prompt per line; emits JSON lines");
  split_cmd->add_option("--out", split.out);

  CorrelateArgs corr;
  auto* corr_cmd = app.add_subcommand("correlate", "Spearman correlation of two CSV columns");
  corr_cmd->add_option("--input", corr.input)->required();
  corr_cmd->add_option("--x", corr.x)->required();
  corr_cmd->add_option("--y", corr.y)->required();
  corr_cmd->add_option("--out", corr.out);

  // CLI11 consumes a reversed vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*fit_cmd) return fit_cdf_command(fit, out);
    if (*score_cmd) return score_command(score, out);
    if (*cal_cmd) return calibrate_command(cal, out);
    if (*ev_cmd) return eval_2afc_command(ev, out);
    if (*reuse_cmd) return reusability_command(reuse, out, err);
    if (*mds_cmd) return mds_command(mds, out);
    if (*split_cmd) return split_prompt_command(split, out);
    if (*corr_cmd) return correlate_command(corr, out);
  } catch (const Error& e) {
    err << "w1kp: " << e.what() << "\n";
    return static_cast<int>(e.category());
  } catch (const nlohmann::json::exception& e) {
    err << "w1kp: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "w1kp: " << e.what() << "\n";
    return kIo;
  }
  return kValidation;
}

}  // namespace w1kp::cli
