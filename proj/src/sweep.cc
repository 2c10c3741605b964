// Copyright 2026 The fairrec Authors.
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

#include "fairrec/sweep.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "fairrec/error.h"
#include "fairrec/plot.h"
#include "fairrec/reranking.h"

namespace fairrec {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T ParseValue(std::string_view key, std::string_view text) {
  text = Trim(text);
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("bad value '" + std::string(text) + "' for " +
                      std::string(key));
  }
  return value;
}

bool ParseBool(std::string_view key, std::string_view text) {
  text = Trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("bad boolean '" + std::string(text) + "' for " +
                    std::string(key));
}

std::string Fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace

std::string_view ToString(PredictorKind kind) {
  return kind == PredictorKind::kKnn ? "knn" : "nmf";
}

std::string_view ToString(PostKind kind) {
  switch (kind) {
    case PostKind::kNone:
      return "none";
    case PostKind::kRandom:
      return "random";
    case PostKind::kGreedy:
      return "greedy";
  }
  return "none";
}

PredictorKind ParsePredictorKind(std::string_view text) {
  if (text == "knn") return PredictorKind::kKnn;
  if (text == "nmf") return PredictorKind::kNmf;
  throw ConfigError("unknown predictor '" + std::string(text) + "'");
}

PostKind ParsePostKind(std::string_view text) {
  if (text == "none") return PostKind::kNone;
  if (text == "random") return PostKind::kRandom;
  if (text == "greedy") return PostKind::kGreedy;
  throw ConfigError("unknown post-processor '" + std::string(text) + "'");
}

std::vector<std::size_t> ParseCountList(std::string_view text) {
  std::vector<std::size_t> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(ParseValue<std::size_t>("grid", text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

void SweepConfig::Validate() const {
  if (k < 1) throw ConfigError("k must be at least 1");
  if (post == PostKind::kRandom) {
    if (ell_grid.empty()) throw ConfigError("ell grid is empty");
    for (std::size_t ell : ell_grid) {
      if (ell < k) {
        throw ConfigError("ell = " + std::to_string(ell) +
                          " is smaller than k = " + std::to_string(k));
      }
    }
  }
  if (post == PostKind::kGreedy) {
    if (theta_grid.empty()) throw ConfigError("theta grid is empty");
    if (!(threshold >= kMinRating && threshold <= kMaxRating)) {
      throw ConfigError("threshold must lie in [1, 5]");
    }
  }
  if (knn.n_neighbors < 1) throw ConfigError("knn.neighbors must be >= 1");
  if (nmf.n_factors < 1) throw ConfigError("nmf.factors must be >= 1");
}

void ApplySetting(SweepConfig& config, std::string_view key,
                  std::string_view value) {
  value = Trim(value);
  if (key == "data") {
    config.data_path = std::string(value);
  } else if (key == "predictor") {
    config.predictor = ParsePredictorKind(value);
  } else if (key == "post") {
    config.post = ParsePostKind(value);
  } else if (key == "k") {
    config.k = ParseValue<std::size_t>(key, value);
  } else if (key == "ell") {
    config.ell_grid = ParseCountList(value);
  } else if (key == "theta") {
    config.theta_grid = ParseCountList(value);
  } else if (key == "threshold") {
    config.threshold = ParseValue<double>(key, value);
  } else if (key == "seed") {
    config.seed = ParseValue<std::uint64_t>(key, value);
  } else if (key == "out") {
    config.output_dir = std::string(value);
  } else if (key == "cache") {
    config.cache_path = std::string(value);
  } else if (key == "per_user") {
    config.per_user = ParseBool(key, value);
  } else if (key == "svg") {
    config.svg = ParseBool(key, value);
  } else if (key == "knn.neighbors") {
    config.knn.n_neighbors = ParseValue<std::size_t>(key, value);
  } else if (key == "knn.min_overlap") {
    config.knn.min_overlap = ParseValue<std::size_t>(key, value);
  } else if (key == "knn.similarity") {
    if (value == "msd") {
      config.knn.similarity = KnnSimilarity::kMsd;
    } else if (value == "cosine") {
      config.knn.similarity = KnnSimilarity::kCenteredCosine;
    } else {
      throw ConfigError("knn.similarity must be msd or cosine");
    }
  } else if (key == "knn.aggregation") {
    if (value == "mean") {
      config.knn.aggregation = KnnAggregation::kWeightedMean;
    } else if (value == "centered") {
      config.knn.aggregation = KnnAggregation::kMeanCentered;
    } else {
      throw ConfigError("knn.aggregation must be mean or centered");
    }
  } else if (key == "nmf.factors") {
    config.nmf.n_factors = ParseValue<std::size_t>(key, value);
  } else if (key == "nmf.epochs") {
    config.nmf.n_epochs = ParseValue<std::size_t>(key, value);
  } else if (key == "nmf.seed") {
    config.nmf.init_seed = ParseValue<std::uint64_t>(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

SweepConfig ParseConfig(std::istream& in,
                        const std::filesystem::path& base_dir) {
  SweepConfig config;
  std::vector<std::string> keys;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    view = Trim(view.substr(0, view.find('#')));
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string_view key = Trim(view.substr(0, eq));
    ApplySetting(config, key, view.substr(eq + 1));
    keys.emplace_back(key);
  }
  auto rebase = [&](const char* key, std::filesystem::path& p) {
    const bool from_file =
        std::find(keys.begin(), keys.end(), key) != keys.end();
    if (from_file && !base_dir.empty() && p.is_relative()) p = base_dir / p;
  };
  rebase("data", config.data_path);
  rebase("out", config.output_dir);
  if (config.cache_path) rebase("cache", *config.cache_path);
  return config;
}

SweepConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  return ParseConfig(in, path.parent_path());
}

ScoreGraph FitPredictor(const SweepConfig& config,
                        const RatingsDataset& dataset,
                        const CandidateSets& candidates) {
  return config.predictor == PredictorKind::kKnn
             ? PredictKnn(dataset, candidates, config.knn)
             : PredictNmf(dataset, candidates, config.nmf);
}

std::vector<SweepPoint> EvaluateSweep(const SweepConfig& config,
                                      const RatingsDataset& dataset,
                                      const ScoreGraph& scores) {
  config.Validate();
  const std::string predictor(ToString(config.predictor));
  const std::size_t n_items = dataset.n_items();
  const RecommendationSet top = TopK(scores, config.k, &dataset);

  std::vector<SweepPoint> points;
  auto add = [&](const RecommendationSet& set, PostKind post,
                 std::string param) -> SweepPoint& {
    SweepPoint point;
    point.report = Evaluate(scores, set, top, n_items);
    point.report.predictor = predictor;
    point.report.post = std::string(ToString(post));
    point.report.param = std::move(param);
    points.push_back(std::move(point));
    return points.back();
  };

  add(top, PostKind::kNone, "-");
  if (config.post == PostKind::kRandom) {
    for (std::size_t ell : config.ell_grid) {
      add(RandomRerank(scores, RandomParams{ell, config.seed}, config.k,
                       &dataset),
          PostKind::kRandom, std::to_string(ell));
    }
  } else if (config.post == PostKind::kGreedy) {
    for (std::size_t theta : config.theta_grid) {
      GreedyResult greedy =
          GreedyRerank(scores, top, GreedyParams{theta, config.threshold});
      SweepPoint& point = add(greedy.recommendations, PostKind::kGreedy,
                              std::to_string(theta));
      point.requested_increase = greedy.requested;
      point.achieved_increase = greedy.achieved;
    }
  }
  return points;
}

void WriteResults(std::ostream& out, const std::vector<SweepPoint>& points) {
  out << kResultsHeader << '\n';
  for (const SweepPoint& p : points) {
    const DisparityReport& r = p.report;
    out << r.predictor << ',' << r.post << ',' << r.param << ',' << r.k << ','
        << Fixed(r.aggregate_diversity, 8) << ',' << Fixed(r.score_disparity, 8)
        << ',' << Fixed(r.recommendation_disparity, 8) << '\n';
  }
}

std::vector<DisparityReport> ReadResults(std::istream& in) {
  std::vector<DisparityReport> reports;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kResultsHeader) {
        throw ParseError(line_no, "unexpected results header");
      }
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) throw ParseError(line_no, "expected 7 columns");
    DisparityReport r;
    r.predictor = cells[0];
    r.post = cells[1];
    r.param = cells[2];
    try {
      r.k = ParseValue<std::size_t>("k", cells[3]);
      r.aggregate_diversity = ParseValue<double>("agg_div", cells[4]);
      r.score_disparity = ParseValue<double>("d_s", cells[5]);
      r.recommendation_disparity = ParseValue<double>("d_r", cells[6]);
    } catch (const ConfigError& e) {
      throw ParseError(line_no, e.what());
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<SweepPoint> RunSweep(const SweepConfig& config) {
  config.Validate();
  const RatingsDataset dataset = RatingsDataset::Load(config.data_path);
  const CandidateSets candidates = CandidateSets::Build(dataset, config.k);

  ScoreGraph scores;
  if (config.cache_path && std::filesystem::exists(*config.cache_path)) {
    std::ifstream in(*config.cache_path);
    if (!in) throw IoError("cannot open cache " + config.cache_path->string());
    scores = ReadScoreCache(in, dataset);
  } else {
    scores = FitPredictor(config, dataset, candidates);
    if (config.cache_path) {
      std::stringstream text;
      WriteScoreCache(text, scores, dataset);
      WriteFile(*config.cache_path, text.str());
      // Continue from the rounded cached values so that cold and warm runs
      // agree.
      scores = ReadScoreCache(text, dataset);
    }
  }
  ValidateCoverage(scores, candidates);

  std::vector<SweepPoint> points = EvaluateSweep(config, dataset, scores);

  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) {
    throw IoError("cannot create output dir " + config.output_dir.string() +
                  ": " + ec.message());
  }

  std::ostringstream results;
  WriteResults(results, points);
  WriteFile(config.output_dir / "results.csv", results.str());

  std::ostringstream summary;
  summary << "# " << points.front().report.provenance << "\n";
  for (const SweepPoint& p : points) {
    const DisparityReport& r = p.report;
    summary << r.predictor << ' ' << r.post << ' ' << r.param
            << ": agg_div=" << Fixed(100.0 * r.aggregate_diversity, 2)
            << "% D_S=" << Fixed(100.0 * r.score_disparity, 2)
            << "% D_R=" << Fixed(100.0 * r.recommendation_disparity, 2) << '%';
    if (r.post == "greedy") {
      summary << " achieved_theta=" << p.achieved_increase << '/'
              << p.requested_increase;
    }
    summary << '\n';
  }
  WriteFile(config.output_dir / "summary.txt", summary.str());

  if (config.per_user) {
    for (const SweepPoint& p : points) {
      std::ostringstream text;
      WritePerUser(text, p.report, dataset);
      WriteFile(config.output_dir / ("per_user_" + p.report.post + "_" +
                                     (p.report.param == "-" ? "baseline"
                                                            : p.report.param) +
                                     ".csv"),
                text.str());
    }
  }

  // Plot files come from the serialized results so that re-plotting an
  // existing results.csv reproduces them byte for byte.
  std::istringstream reread(results.str());
  EmitPlotData(ReadResults(reread), config.output_dir, config.svg);
  return points;
}

}  // namespace fairrec
