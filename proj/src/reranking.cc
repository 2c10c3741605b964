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

#include "fairrec/reranking.h"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <utility>

#include "fairrec/error.h"
#include "fairrec/random.h"
#include "parallel.h"

namespace fairrec {
namespace {

std::string UserName(UserId u, const RatingsDataset* dataset) {
  return dataset != nullptr ? std::to_string(dataset->raw_user_id(u))
                            : "#" + std::to_string(u);
}

// The `count` best entries of `scores` in rank order.
std::vector<ScoredItem> BestOf(std::span<const ScoredItem> scores,
                               std::size_t count) {
  std::vector<ScoredItem> all(scores.begin(), scores.end());
  count = std::min(count, all.size());
  std::partial_sort(all.begin(), all.begin() + count, all.end(), RanksBefore);
  all.resize(count);
  return all;
}

std::string FormatThreshold(double threshold) {
  std::ostringstream s;
  s << threshold;
  return s.str();
}

}  // namespace

RecommendationSet::RecommendationSet(
    std::size_t k, std::vector<std::vector<ScoredItem>> lists,
    std::string procedure)
    : k_(k), lists_(std::move(lists)), procedure_(std::move(procedure)) {
  std::vector<ItemId> items;
  for (std::size_t u = 0; u < lists_.size(); ++u) {
    if (lists_[u].size() != k_) {
      throw InvalidInput("list of user #" + std::to_string(u) + " has " +
                         std::to_string(lists_[u].size()) +
                         " items, expected " + std::to_string(k_));
    }
    items.clear();
    for (const ScoredItem& e : lists_[u]) items.push_back(e.item);
    std::sort(items.begin(), items.end());
    if (std::adjacent_find(items.begin(), items.end()) != items.end()) {
      throw InvalidInput("list of user #" + std::to_string(u) +
                         " repeats an item");
    }
  }
}

std::size_t RecommendationSet::CountDistinctItems() const {
  std::vector<ItemId> items;
  items.reserve(lists_.size() * k_);
  for (const auto& list : lists_) {
    for (const ScoredItem& e : list) items.push_back(e.item);
  }
  std::sort(items.begin(), items.end());
  return static_cast<std::size_t>(
      std::unique(items.begin(), items.end()) - items.begin());
}

RecommendationSet TopK(const ScoreGraph& scores, std::size_t k,
                       const RatingsDataset* dataset) {
  std::vector<std::vector<ScoredItem>> lists(scores.n_users());
  for (UserId u = 0; u < scores.n_users(); ++u) {
    if (scores.of(u).size() < k) {
      throw ConfigError("user " + UserName(u, dataset) + " has only " +
                        std::to_string(scores.of(u).size()) +
                        " candidates, fewer than k = " + std::to_string(k));
    }
    lists[u] = BestOf(scores.of(u), k);
  }
  return RecommendationSet(k, std::move(lists), "top_k");
}

RecommendationSet RandomRerank(const ScoreGraph& scores,
                               const RandomParams& params, std::size_t k,
                               const RatingsDataset* dataset) {
  if (params.ell < k) {
    throw ConfigError("random re-ranking needs ell >= k (ell = " +
                      std::to_string(params.ell) +
                      ", k = " + std::to_string(k) + ")");
  }
  for (UserId u = 0; u < scores.n_users(); ++u) {
    if (scores.of(u).size() < k) {
      throw ConfigError("user " + UserName(u, dataset) + " has only " +
                        std::to_string(scores.of(u).size()) +
                        " candidates, fewer than k = " + std::to_string(k));
    }
  }
  std::vector<std::vector<ScoredItem>> lists(scores.n_users());
  internal::ParallelFor(scores.n_users(), [&](std::size_t u) {
    std::vector<ScoredItem> top =
        BestOf(scores.of(static_cast<UserId>(u)), params.ell);
    Rng rng = MakeStream(params.seed, u);
    // Partial Fisher-Yates: the first k slots become a uniform k-subset.
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t pick = j + UniformIndex(rng, top.size() - j);
      std::swap(top[j], top[pick]);
    }
    top.resize(k);
    std::sort(top.begin(), top.end(), RanksBefore);
    lists[u] = std::move(top);
  });
  return RecommendationSet(k, std::move(lists),
                           "random(ell=" + std::to_string(params.ell) +
                               ",seed=" + std::to_string(params.seed) + ")");
}

GreedyResult GreedyRerank(const ScoreGraph& scores,
                          const RecommendationSet& base,
                          const GreedyParams& params) {
  if (scores.n_users() != base.n_users()) {
    throw InvalidInput("score graph and base recommendations disagree on the "
                       "number of users");
  }
  if (!(params.threshold >= kMinRating && params.threshold <= kMaxRating)) {
    throw ConfigError("greedy threshold must lie in [1, 5]");
  }
  const std::size_t k = base.k();

  std::size_t n_items = 0;
  for (UserId u = 0; u < scores.n_users(); ++u) {
    for (const ScoredItem& e : scores.of(u)) {
      n_items = std::max<std::size_t>(n_items, e.item + 1);
    }
    for (const ScoredItem& e : base.of(u)) {
      n_items = std::max<std::size_t>(n_items, e.item + 1);
    }
  }

  std::vector<std::vector<ScoredItem>> lists(base.n_users());
  std::vector<std::size_t> counts(n_items, 0);
  for (UserId u = 0; u < base.n_users(); ++u) {
    lists[u].assign(base.of(u).begin(), base.of(u).end());
    for (const ScoredItem& e : lists[u]) ++counts[e.item];
  }

  struct Pair {
    double score;
    ItemId item;
    UserId user;
  };
  std::vector<Pair> pairs;
  if (params.theta > 0) {
    for (UserId u = 0; u < scores.n_users(); ++u) {
      for (const ScoredItem& e : scores.of(u)) {
        if (counts[e.item] == 0 && e.score >= params.threshold) {
          pairs.push_back({e.score, e.item, u});
        }
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.item != b.item) return a.item < b.item;
    return a.user < b.user;
  });

  // Pool counts only ever drop for old items and new items enter with count
  // one, so a pair that is infeasible now stays infeasible. A single pass in
  // selection order therefore reproduces "repeatedly take the best feasible
  // move".
  GreedyResult result{base, params.theta, 0, {}};
  for (const Pair& pair : pairs) {
    if (result.achieved == params.theta) break;
    if (counts[pair.item] > 0) continue;
    auto& list = lists[pair.user];
    std::size_t victim = k;
    for (std::size_t pos = k; pos-- > 0;) {
      if (counts[list[pos].item] >= 2) {
        victim = pos;
        break;
      }
    }
    if (victim == k) continue;
    result.moves.push_back({pair.user, pair.item, list[victim].item});
    --counts[list[victim].item];
    counts[pair.item] = 1;
    list[victim] = ScoredItem{pair.item, pair.score};
    std::sort(list.begin(), list.end(), RanksBefore);
    ++result.achieved;
  }

  result.recommendations = RecommendationSet(
      k, std::move(lists),
      "greedy(theta=" + std::to_string(params.theta) +
          ",threshold=" + FormatThreshold(params.threshold) + ")");
  return result;
}

void WriteRecommendations(std::ostream& out, const RecommendationSet& set,
                          const RatingsDataset& dataset) {
  out << "user,rank,item,score\n";
  char buf[64];
  for (UserId u = 0; u < set.n_users(); ++u) {
    auto list = set.of(u);
    for (std::size_t rank = 0; rank < list.size(); ++rank) {
      std::snprintf(buf, sizeof(buf), "%.6f", list[rank].score);
      out << dataset.raw_user_id(u) << ',' << rank + 1 << ','
          << dataset.raw_item_id(list[rank].item) << ',' << buf << '\n';
    }
  }
  if (!out) throw IoError("failed writing recommendations");
}

}  // namespace fairrec
