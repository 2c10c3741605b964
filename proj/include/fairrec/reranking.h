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

// Top-k ranking and the two diversity post-processors (Random, Greedy).
//
// Every list is kept in rank order: descending score, ties by ascending item
// id. All metrics are set-based, so the order only matters for export.

#ifndef FAIRREC_RERANKING_H_
#define FAIRREC_RERANKING_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fairrec/dataset.h"
#include "fairrec/score_graph.h"

namespace fairrec {

// True when `a` ranks ahead of `b`.
inline bool RanksBefore(const ScoredItem& a, const ScoredItem& b) {
  return a.score != b.score ? a.score > b.score : a.item < b.item;
}

// k distinct items per user, in rank order.
class RecommendationSet {
 public:
  // Throws InvalidInput if a list does not hold exactly k distinct items.
  RecommendationSet(std::size_t k, std::vector<std::vector<ScoredItem>> lists,
                    std::string procedure);

  std::size_t k() const { return k_; }
  std::size_t n_users() const { return lists_.size(); }
  std::span<const ScoredItem> of(UserId u) const { return lists_[u]; }

  // "top_k", "random(ell=..,seed=..)" or "greedy(theta=..,threshold=..)".
  const std::string& procedure() const { return procedure_; }

  // Size of the union of all lists.
  std::size_t CountDistinctItems() const;

  friend bool operator==(const RecommendationSet& a,
                         const RecommendationSet& b) {
    return a.k_ == b.k_ && a.lists_ == b.lists_;
  }

 private:
  std::size_t k_;
  std::vector<std::vector<ScoredItem>> lists_;
  std::string procedure_;
};

// Every user's k best candidates. Throws ConfigError naming the user when a
// user has fewer than k scored candidates.
RecommendationSet TopK(const ScoreGraph& scores, std::size_t k,
                       const RatingsDataset* dataset = nullptr);

struct RandomParams {
  std::size_t ell = 10;
  std::uint64_t seed = 0;
};

// Samples k items uniformly without replacement from each user's top-ell
// list (ell is truncated to the user's candidate count). User u draws from
// its own stream MakeStream(seed, u).
RecommendationSet RandomRerank(const ScoreGraph& scores,
                               const RandomParams& params, std::size_t k,
                               const RatingsDataset* dataset = nullptr);

struct GreedyParams {
  // Number of new distinct items to bring into the recommended pool.
  std::size_t theta = 0;
  double threshold = 3.5;
};

struct GreedyMove {
  UserId user;
  ItemId added;
  ItemId removed;

  friend bool operator==(const GreedyMove&, const GreedyMove&) = default;
};

struct GreedyResult {
  RecommendationSet recommendations;
  std::size_t requested = 0;
  std::size_t achieved = 0;
  std::vector<GreedyMove> moves;
};

// Raises the number of distinct recommended items by up to theta.
//
// Candidate moves are (user u, item i) pairs with i not yet recommended to
// anyone, i a candidate of u and score(u, i) >= threshold. They are taken in
// order of descending score, then ascending item id, then ascending user id.
// A move replaces the lowest-ranked item of u's list that is recommended to
// at least two users, so no item ever leaves the pool; if u has no such item
// the pair is skipped. Stops after theta additions or when no move remains.
GreedyResult GreedyRerank(const ScoreGraph& scores,
                          const RecommendationSet& base,
                          const GreedyParams& params);

// CSV `user,rank,item,score` with raw ids, rank 1..k, 6-decimal scores.
void WriteRecommendations(std::ostream& out, const RecommendationSet& set,
                          const RatingsDataset& dataset);

}  // namespace fairrec

#endif  // FAIRREC_RERANKING_H_
