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

// Experiment harness: fit one predictor, then evaluate the un-processed
// top-k baseline and every point of an ell (Random) or theta (Greedy) grid.

#ifndef FAIRREC_SWEEP_H_
#define FAIRREC_SWEEP_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairrec/dataset.h"
#include "fairrec/metrics.h"
#include "fairrec/predictors.h"
#include "fairrec/score_graph.h"

namespace fairrec {

enum class PredictorKind { kKnn, kNmf };
enum class PostKind { kNone, kRandom, kGreedy };

std::string_view ToString(PredictorKind kind);
std::string_view ToString(PostKind kind);
PredictorKind ParsePredictorKind(std::string_view text);
PostKind ParsePostKind(std::string_view text);

struct SweepConfig {
  std::filesystem::path data_path = "data/ml-100k/u.data";
  PredictorKind predictor = PredictorKind::kKnn;
  KnnParams knn;
  NmfParams nmf;
  PostKind post = PostKind::kNone;
  std::size_t k = 5;
  std::vector<std::size_t> ell_grid = {10, 50, 100, 500};
  std::vector<std::size_t> theta_grid = {10, 100, 200, 500, 1000};
  double threshold = 3.5;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "fairrec_out";
  // Score cache file; read when present, written after fitting otherwise.
  std::optional<std::filesystem::path> cache_path;
  bool per_user = false;
  bool svg = false;

  // Throws ConfigError.
  void Validate() const;
};

// Applies one `key = value` setting. Keys: data, predictor, post, k, ell,
// theta, threshold, seed, out, cache, per_user, svg, knn.neighbors,
// knn.min_overlap, knn.similarity (msd|cosine), knn.aggregation
// (mean|centered), nmf.factors, nmf.epochs, nmf.seed.
// Throws ConfigError for unknown keys or bad values.
void ApplySetting(SweepConfig& config, std::string_view key,
                  std::string_view value);

// Reads `key = value` lines; `#` starts a comment. Relative paths are taken
// relative to `base_dir`.
SweepConfig ParseConfig(std::istream& in,
                        const std::filesystem::path& base_dir = {});
SweepConfig LoadConfig(const std::filesystem::path& path);

// Comma-separated list of positive counts, e.g. "10,50,100".
std::vector<std::size_t> ParseCountList(std::string_view text);

struct SweepPoint {
  DisparityReport report;
  // Greedy only: requested and achieved growth of the distinct-item count.
  std::size_t requested_increase = 0;
  std::size_t achieved_increase = 0;
};

ScoreGraph FitPredictor(const SweepConfig& config,
                        const RatingsDataset& dataset,
                        const CandidateSets& candidates);

// Baseline first, then one point per grid value in grid order. No I/O.
std::vector<SweepPoint> EvaluateSweep(const SweepConfig& config,
                                      const RatingsDataset& dataset,
                                      const ScoreGraph& scores);

// Loads data, fits or loads cached scores, evaluates, and writes
// results.csv, summary.txt, the scatter files and optional per-user CSVs
// into config.output_dir.
std::vector<SweepPoint> RunSweep(const SweepConfig& config);

inline constexpr std::string_view kResultsHeader =
    "predictor,post,param,k,agg_div,d_s,d_r";

void WriteResults(std::ostream& out, const std::vector<SweepPoint>& points);

// Reads the scalar columns of a results.csv back. Throws ParseError.
std::vector<DisparityReport> ReadResults(std::istream& in);

}  // namespace fairrec

#endif  // FAIRREC_SWEEP_H_
