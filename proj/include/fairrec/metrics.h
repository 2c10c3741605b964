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

// User fairness measures for a recommendation set compared with the
// users' own top-k lists.
//
//   satisfaction A(u) = sum of scores in R(u) / sum of scores in top-k(u)
//   overlap    sim(u) = |R(u) & top-k(u)| / k
//   Score Disparity          D_S = Gini(A)
//   Recommendation Disparity D_R = Gini(sim)
//
// where Gini(x) = sum_{a,b} |x_a - x_b| / (2 n sum_a x_a) over ordered pairs.

#ifndef FAIRREC_METRICS_H_
#define FAIRREC_METRICS_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fairrec/dataset.h"
#include "fairrec/reranking.h"
#include "fairrec/score_graph.h"

namespace fairrec {

// Throws InvalidInput if the sets differ in k or user count, if an item is
// not scored for its user, or if a top-k score mass is not positive.
std::vector<double> Satisfaction(const ScoreGraph& scores,
                                 const RecommendationSet& recommended,
                                 const RecommendationSet& top);

// Throws InvalidInput if the sets differ in k or user count.
std::vector<double> OverlapSimilarity(const RecommendationSet& recommended,
                                      const RecommendationSet& top);

// Gini coefficient via the sorted closed form
//   sum_i (2i - n - 1) x_(i) / (n sum x),  i = 1..n ascending.
// Returns 0 when every entry is 0. Throws InvalidInput for an empty vector or
// a negative or non-finite entry.
double Gini(std::span<const double> values);

inline double ScoreDisparity(std::span<const double> satisfaction) {
  return Gini(satisfaction);
}

inline double RecommendationDisparity(std::span<const double> overlap) {
  return Gini(overlap);
}

// Fraction of the catalogue recommended to at least one user.
double AggregateDiversity(const RecommendationSet& recommended,
                          std::size_t n_items);

struct DisparityReport {
  std::string predictor;
  std::string post;   // none | random | greedy
  std::string param;  // ell or theta, "-" for the baseline
  std::size_t k = 0;
  double aggregate_diversity = 0.0;
  double score_disparity = 0.0;
  double recommendation_disparity = 0.0;
  std::vector<double> satisfaction;
  std::vector<double> overlap;
  // Full provenance of the scores and of the post-processing step.
  std::string provenance;
};

DisparityReport Evaluate(const ScoreGraph& scores,
                         const RecommendationSet& recommended,
                         const RecommendationSet& top, std::size_t n_items);

// CSV `user,satisfaction,overlap` with raw user ids.
void WritePerUser(std::ostream& out, const DisparityReport& report,
                  const RatingsDataset& dataset);

}  // namespace fairrec

#endif  // FAIRREC_METRICS_H_
