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

#ifndef FAIRREC_SCORE_GRAPH_H_
#define FAIRREC_SCORE_GRAPH_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairrec/dataset.h"

namespace fairrec {

struct ScoredItem {
  ItemId item;
  double score;

  friend bool operator==(const ScoredItem&, const ScoredItem&) = default;
};

// Predicted preference scores of each user for each of their candidate items,
// i.e. the edge weights of the user-item bipartite graph. Immutable.
class ScoreGraph {
 public:
  ScoreGraph() = default;

  // `per_user[u]` must be sorted by item with unique ids; every score must be
  // finite and within [1, 5]. Throws InvalidInput otherwise.
  ScoreGraph(const std::vector<std::vector<ScoredItem>>& per_user,
             std::string provenance);

  std::size_t n_users() const {
    return offsets_.empty() ? 0 : offsets_.size() - 1;
  }
  std::size_t n_edges() const { return edges_.size(); }

  // Scores of user `u`, ascending by item id.
  std::span<const ScoredItem> of(UserId u) const {
    return std::span<const ScoredItem>(edges_).subspan(
        offsets_[u], offsets_[u + 1] - offsets_[u]);
  }
  std::optional<double> Score(UserId u, ItemId i) const;

  // Which predictor and hyperparameters produced the scores.
  const std::string& provenance() const { return provenance_; }

  friend bool operator==(const ScoreGraph& a, const ScoreGraph& b) {
    return a.offsets_ == b.offsets_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<ScoredItem> edges_;
  std::string provenance_;
};

// Checks that the graph covers exactly each user's candidate set.
void ValidateCoverage(const ScoreGraph& graph, const CandidateSets& candidates);

// Cache format: a `# <provenance>` comment, the header `user,item,score`, then
// one row per edge with raw ids and the score at 6 decimal places.
void WriteScoreCache(std::ostream& out, const ScoreGraph& graph,
                     const RatingsDataset& dataset);
ScoreGraph ReadScoreCache(std::istream& in, const RatingsDataset& dataset);

}  // namespace fairrec

#endif  // FAIRREC_SCORE_GRAPH_H_
