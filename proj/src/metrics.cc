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

#include "fairrec/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <ostream>

#include "fairrec/error.h"

namespace fairrec {
namespace {

void CheckComparable(const RecommendationSet& a, const RecommendationSet& b) {
  if (a.k() != b.k()) {
    throw InvalidInput("recommendation sets differ in k (" +
                       std::to_string(a.k()) + " vs " +
                       std::to_string(b.k()) + ")");
  }
  if (a.n_users() != b.n_users()) {
    throw InvalidInput("recommendation sets differ in user count (" +
                       std::to_string(a.n_users()) + " vs " +
                       std::to_string(b.n_users()) + ")");
  }
}

double ScoreMass(const ScoreGraph& scores, UserId u,
                 std::span<const ScoredItem> list) {
  double sum = 0.0;
  for (const ScoredItem& e : list) {
    auto w = scores.Score(u, e.item);
    if (!w) {
      throw InvalidInput("item #" + std::to_string(e.item) +
                         " has no score for user #" + std::to_string(u));
    }
    sum += *w;
  }
  return sum;
}

}  // namespace

std::vector<double> Satisfaction(const ScoreGraph& scores,
                                 const RecommendationSet& recommended,
                                 const RecommendationSet& top) {
  CheckComparable(recommended, top);
  if (scores.n_users() != top.n_users()) {
    throw InvalidInput("score graph and recommendations differ in user count");
  }
  std::vector<double> out(top.n_users());
  for (UserId u = 0; u < top.n_users(); ++u) {
    const double best = ScoreMass(scores, u, top.of(u));
    if (!(best > 0.0)) {
      throw InvalidInput("top-k score mass of user #" + std::to_string(u) +
                         " is not positive");
    }
    out[u] = ScoreMass(scores, u, recommended.of(u)) / best;
  }
  return out;
}

std::vector<double> OverlapSimilarity(const RecommendationSet& recommended,
                                      const RecommendationSet& top) {
  CheckComparable(recommended, top);
  const std::size_t k = top.k();
  std::vector<double> out(top.n_users());
  std::vector<ItemId> a, b, common;
  for (UserId u = 0; u < top.n_users(); ++u) {
    a.clear();
    b.clear();
    common.clear();
    for (const ScoredItem& e : recommended.of(u)) a.push_back(e.item);
    for (const ScoredItem& e : top.of(u)) b.push_back(e.item);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(common));
    out[u] = k == 0 ? 1.0
                    : static_cast<double>(common.size()) /
                          static_cast<double>(k);
  }
  return out;
}

double Gini(std::span<const double> values) {
  if (values.empty()) throw InvalidInput("gini of an empty vector");
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidInput("gini needs finite non-negative entries");
    }
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) return 0.0;
  const auto n = static_cast<double>(sorted.size());
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    total += sorted[i];
    weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * sorted[i];
  }
  return std::max(0.0, weighted / (n * total));
}

double AggregateDiversity(const RecommendationSet& recommended,
                          std::size_t n_items) {
  if (n_items == 0) throw InvalidInput("catalogue has no items");
  return static_cast<double>(recommended.CountDistinctItems()) /
         static_cast<double>(n_items);
}

DisparityReport Evaluate(const ScoreGraph& scores,
                         const RecommendationSet& recommended,
                         const RecommendationSet& top, std::size_t n_items) {
  DisparityReport report;
  report.k = top.k();
  report.satisfaction = Satisfaction(scores, recommended, top);
  report.overlap = OverlapSimilarity(recommended, top);
  report.aggregate_diversity = AggregateDiversity(recommended, n_items);
  report.score_disparity = ScoreDisparity(report.satisfaction);
  report.recommendation_disparity = RecommendationDisparity(report.overlap);
  report.provenance = scores.provenance() + " | " + recommended.procedure();
  return report;
}

void WritePerUser(std::ostream& out, const DisparityReport& report,
                  const RatingsDataset& dataset) {
  out << "user,satisfaction,overlap\n";
  char buf[96];
  for (UserId u = 0; u < report.satisfaction.size(); ++u) {
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f", report.satisfaction[u],
                  report.overlap[u]);
    out << dataset.raw_user_id(u) << ',' << buf << '\n';
  }
  if (!out) throw IoError("failed writing per-user report");
}

}  // namespace fairrec
