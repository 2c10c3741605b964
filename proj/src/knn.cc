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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fairrec/error.h"
#include "fairrec/predictors.h"
#include "parallel.h"

namespace fairrec {
namespace {

double CenteredNorm(const RatingsDataset& dataset, UserId u) {
  const double mean = dataset.user_mean(u);
  double sum = 0.0;
  for (const Rating& r : dataset.user_ratings(u)) {
    sum += (r.value - mean) * (r.value - mean);
  }
  return std::sqrt(sum);
}

struct CoRated {
  std::size_t count = 0;
  double centered_dot = 0.0;
  double squared_diff = 0.0;
};

CoRated Compare(const RatingsDataset& dataset, UserId u, UserId v) {
  auto a = dataset.user_ratings(u);
  auto b = dataset.user_ratings(v);
  const double mean_a = dataset.user_mean(u);
  const double mean_b = dataset.user_mean(v);
  CoRated out;
  std::size_t x = 0;
  std::size_t y = 0;
  while (x < a.size() && y < b.size()) {
    if (a[x].item < b[y].item) {
      ++x;
    } else if (b[y].item < a[x].item) {
      ++y;
    } else {
      out.centered_dot += (a[x].value - mean_a) * (b[y].value - mean_b);
      const double diff = a[x].value - b[y].value;
      out.squared_diff += diff * diff;
      ++out.count;
      ++x;
      ++y;
    }
  }
  return out;
}

std::optional<double> Similarity(const CoRated& common, double norm_product,
                                 const KnnParams& params) {
  if (common.count == 0 || common.count < params.min_overlap) {
    return std::nullopt;
  }
  switch (params.similarity) {
    case KnnSimilarity::kMsd:
      return 1.0 / (1.0 + common.squared_diff /
                              static_cast<double>(common.count));
    case KnnSimilarity::kCenteredCosine:
      return norm_product > 0.0 ? common.centered_dot / norm_product : 0.0;
  }
  return std::nullopt;
}

struct Neighbor {
  double sim;
  UserId user;
  double rating;
};

}  // namespace

std::string KnnParams::Describe() const {
  return std::string("knn(n_neighbors=") + std::to_string(n_neighbors) +
         ",min_overlap=" + std::to_string(min_overlap) + ",similarity=" +
         (similarity == KnnSimilarity::kMsd ? "msd" : "cosine") +
         ",aggregation=" +
         (aggregation == KnnAggregation::kWeightedMean ? "mean" : "centered") +
         ")";
}

std::optional<double> UserSimilarity(const RatingsDataset& dataset, UserId u,
                                     UserId v, const KnnParams& params) {
  return Similarity(Compare(dataset, u, v),
                    CenteredNorm(dataset, u) * CenteredNorm(dataset, v),
                    params);
}

ScoreGraph PredictKnn(const RatingsDataset& dataset,
                      const CandidateSets& candidates,
                      const KnnParams& params) {
  if (params.n_neighbors < 1) throw ConfigError("knn needs n_neighbors >= 1");
  const std::size_t n = dataset.n_users();

  std::vector<double> norms(n);
  for (UserId u = 0; u < n; ++u) norms[u] = CenteredNorm(dataset, u);

  // Dense similarity table; NaN marks pairs that are not neighbours.
  std::vector<double> sims(n * n, std::nan(""));
  internal::ParallelFor(n, [&](std::size_t u) {
    for (UserId v = 0; v < n; ++v) {
      if (v == u) continue;
      auto sim = Similarity(Compare(dataset, static_cast<UserId>(u), v),
                            norms[u] * norms[v], params);
      if (sim) sims[u * n + v] = *sim;
    }
  });

  const auto more_similar = [](const Neighbor& a, const Neighbor& b) {
    return a.sim != b.sim ? a.sim > b.sim : a.user < b.user;
  };

  std::vector<std::vector<ScoredItem>> per_user(n);
  internal::ParallelFor(n, [&](std::size_t u) {
    const double mean_u = dataset.user_mean(static_cast<UserId>(u));
    const double* row = &sims[u * n];
    std::vector<Neighbor> pool;
    auto& out = per_user[u];
    out.reserve(candidates.of(static_cast<UserId>(u)).size());
    for (ItemId i : candidates.of(static_cast<UserId>(u))) {
      pool.clear();
      for (const UserRating& r : dataset.item_raters(i)) {
        const double s = row[r.user];
        if (!std::isnan(s)) pool.push_back({s, r.user, r.value});
      }
      const std::size_t take = std::min(pool.size(), params.n_neighbors);
      std::partial_sort(pool.begin(), pool.begin() + take, pool.end(),
                        more_similar);
      double num = 0.0;
      double den = 0.0;
      for (std::size_t k = 0; k < take; ++k) {
        const Neighbor& nb = pool[k];
        if (params.aggregation == KnnAggregation::kWeightedMean) {
          if (nb.sim <= 0.0) continue;
          num += nb.sim * nb.rating;
          den += nb.sim;
        } else {
          num += nb.sim * (nb.rating - dataset.user_mean(nb.user));
          den += std::abs(nb.sim);
        }
      }
      double estimate = mean_u;
      if (den > 0.0) {
        estimate = params.aggregation == KnnAggregation::kWeightedMean
                       ? num / den
                       : mean_u + num / den;
      }
      out.push_back({i, std::clamp(estimate, kMinRating, kMaxRating)});
    }
  });
  return ScoreGraph(per_user, params.Describe());
}

}  // namespace fairrec
