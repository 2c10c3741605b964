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

#include "fairrec/score_graph.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "fairrec/error.h"

namespace fairrec {

ScoreGraph::ScoreGraph(const std::vector<std::vector<ScoredItem>>& per_user,
                       std::string provenance)
    : provenance_(std::move(provenance)) {
  offsets_.reserve(per_user.size() + 1);
  offsets_.push_back(0);
  for (std::size_t u = 0; u < per_user.size(); ++u) {
    const auto& list = per_user[u];
    for (std::size_t k = 0; k < list.size(); ++k) {
      const ScoredItem& e = list[k];
      if (!std::isfinite(e.score) || e.score < kMinRating ||
          e.score > kMaxRating) {
        throw InvalidInput("score for user " + std::to_string(u) + ", item " +
                           std::to_string(e.item) + " is not in [1, 5]");
      }
      if (k > 0 && list[k - 1].item >= e.item) {
        throw InvalidInput("scores of user " + std::to_string(u) +
                           " are not strictly ascending by item");
      }
    }
    edges_.insert(edges_.end(), list.begin(), list.end());
    offsets_.push_back(edges_.size());
  }
}

std::optional<double> ScoreGraph::Score(UserId u, ItemId i) const {
  auto scores = of(u);
  auto it = std::lower_bound(
      scores.begin(), scores.end(), i,
      [](const ScoredItem& e, ItemId item) { return e.item < item; });
  if (it == scores.end() || it->item != i) return std::nullopt;
  return it->score;
}

void ValidateCoverage(const ScoreGraph& graph,
                      const CandidateSets& candidates) {
  if (graph.n_users() != candidates.n_users()) {
    throw InvalidInput("score graph has " + std::to_string(graph.n_users()) +
                       " users, candidate sets have " +
                       std::to_string(candidates.n_users()));
  }
  for (UserId u = 0; u < graph.n_users(); ++u) {
    auto scores = graph.of(u);
    auto items = candidates.of(u);
    bool same = scores.size() == items.size() &&
                std::equal(scores.begin(), scores.end(), items.begin(),
                           [](const ScoredItem& e, ItemId i) {
                             return e.item == i;
                           });
    if (!same) {
      throw InvalidInput("scores of user " + std::to_string(u) +
                         " do not cover exactly its candidate set");
    }
  }
}

void WriteScoreCache(std::ostream& out, const ScoreGraph& graph,
                     const RatingsDataset& dataset) {
  out << "# " << graph.provenance() << "\n";
  out << "user,item,score\n";
  char buf[64];
  for (UserId u = 0; u < graph.n_users(); ++u) {
    for (const ScoredItem& e : graph.of(u)) {
      std::snprintf(buf, sizeof(buf), "%.6f", e.score);
      out << dataset.raw_user_id(u) << ',' << dataset.raw_item_id(e.item)
          << ',' << buf << '\n';
    }
  }
  if (!out) throw IoError("failed writing score cache");
}

ScoreGraph ReadScoreCache(std::istream& in, const RatingsDataset& dataset) {
  std::vector<std::vector<ScoredItem>> per_user(dataset.n_users());
  std::string provenance;
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (provenance.empty()) provenance = line.substr(line.find_first_not_of("# "));
      continue;
    }
    if (!seen_header) {
      if (line != "user,item,score") {
        throw ParseError(line_no, "expected header 'user,item,score'");
      }
      seen_header = true;
      continue;
    }
    std::istringstream fields(line);
    RawId raw_user = 0;
    RawId raw_item = 0;
    double score = 0.0;
    char c1 = 0;
    char c2 = 0;
    if (!(fields >> raw_user >> c1 >> raw_item >> c2 >> score) || c1 != ',' ||
        c2 != ',') {
      throw ParseError(line_no, "malformed score row");
    }
    auto u = dataset.FindUser(raw_user);
    auto i = dataset.FindItem(raw_item);
    if (!u || !i) throw ParseError(line_no, "unknown user or item id");
    per_user[*u].push_back(ScoredItem{*i, score});
  }
  if (!seen_header) throw ParseError(line_no, "missing score cache header");
  for (auto& list : per_user) {
    std::sort(list.begin(), list.end(),
              [](const ScoredItem& a, const ScoredItem& b) {
                return a.item < b.item;
              });
  }
  return ScoreGraph(per_user, provenance);
}

}  // namespace fairrec
