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

// Collaborative filtering predictors that fill a ScoreGraph with predicted
// star ratings for every (user, candidate item) pair. Predictions are
// clamped to [1, 5] so every score is strictly positive.

#ifndef FAIRREC_PREDICTORS_H_
#define FAIRREC_PREDICTORS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fairrec/dataset.h"
#include "fairrec/score_graph.h"

namespace fairrec {

enum class KnnSimilarity {
  // 1 / (1 + mean squared difference over co-rated items). Always positive.
  kMsd,
  // Mean-centred cosine: dot product of the centred rating vectors over
  // co-rated items divided by the product of the full centred norms.
  kCenteredCosine,
};

enum class KnnAggregation {
  // sum_v sim(u,v) r_vi / sum_v sim(u,v), neighbours with sim <= 0 skipped.
  kWeightedMean,
  // mean_u + sum_v sim(u,v) (r_vi - mean_v) / sum_v |sim(u,v)|.
  kMeanCentered,
};

// User-based k-nearest-neighbours.
struct KnnParams {
  std::size_t n_neighbors = 40;
  // Co-rated items needed before two users count as neighbours at all.
  std::size_t min_overlap = 1;
  KnnSimilarity similarity = KnnSimilarity::kMsd;
  KnnAggregation aggregation = KnnAggregation::kWeightedMean;

  std::string Describe() const;
};

// For user u and candidate i, takes the n_neighbors most similar users who
// rated i (ties by ascending user id) and aggregates their ratings. Falls
// back to mean_u when no neighbour contributes a non-zero weight.
ScoreGraph PredictKnn(const RatingsDataset& dataset,
                      const CandidateSets& candidates, const KnnParams& params);

// Similarity between users u and v. Returns nullopt when they co-rated
// fewer than max(1, min_overlap) items.
std::optional<double> UserSimilarity(const RatingsDataset& dataset, UserId u,
                                     UserId v, const KnnParams& params);

struct NmfParams {
  std::size_t n_factors = 15;
  std::size_t n_epochs = 50;
  std::uint64_t init_seed = 42;

  std::string Describe() const;
};

// Non-negative factors P (n_users x f) and Q (n_items x f), row-major.
struct NmfModel {
  std::size_t n_factors = 0;
  std::vector<double> user_factors;
  std::vector<double> item_factors;

  double Predict(UserId u, ItemId i) const;
};

// Squared error of the model over the observed ratings only.
double NmfObjective(const NmfModel& model, const RatingsDataset& dataset);

// Multiplicative updates restricted to observed entries. Initial factors are
// uniform(0, 1) draws from `init_seed`, scaled so that P_u . Q_i starts at the
// global mean rating in expectation. `on_epoch`, when set, sees the model
// after every completed epoch (1-based).
// Throws NumericalError if a factor becomes NaN or infinite.
using NmfEpochObserver =
    std::function<void(std::size_t epoch, const NmfModel& model)>;
NmfModel FitNmf(const RatingsDataset& dataset, const NmfParams& params,
                const NmfEpochObserver& on_epoch = {});

ScoreGraph PredictNmf(const RatingsDataset& dataset,
                      const CandidateSets& candidates, const NmfParams& params);

}  // namespace fairrec

#endif  // FAIRREC_PREDICTORS_H_
