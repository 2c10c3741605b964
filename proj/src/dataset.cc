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

#include "fairrec/dataset.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "fairrec/error.h"

namespace fairrec {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t pos = 0; pos <= line.size(); ++pos) {
    if (pos == line.size() || line[pos] == '\t' || line[pos] == ' ') {
      fields.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
  }
  return fields;
}

template <typename T>
bool ParseNumber(std::string_view field, T& out) {
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end && !field.empty();
}

std::string RatingText(double value) {
  if (value == static_cast<double>(static_cast<long long>(value))) {
    return std::to_string(static_cast<long long>(value));
  }
  return std::to_string(value);
}

void CheckRange(const RawRating& r, std::size_t line) {
  if (!(r.value >= kMinRating && r.value <= kMaxRating)) {
    std::string msg = "rating " + RatingText(r.value) + " for user " +
                      std::to_string(r.user) + ", item " +
                      std::to_string(r.item) + " outside [1, 5]";
    if (line > 0) msg = "line " + std::to_string(line) + ": " + msg;
    throw RangeError(msg);
  }
}

}  // namespace

RatingsDataset RatingsDataset::Parse(std::istream& in) {
  std::vector<RawRating> raw;
  std::map<std::pair<RawId, RawId>, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (view.find_first_not_of(" \t") == std::string_view::npos) continue;

    auto fields = SplitFields(view);
    if (fields.size() != 4) {
      throw ParseError(line_no, "expected 4 fields, found " +
                                    std::to_string(fields.size()));
    }
    RawRating r{};
    long long stars = 0;
    if (!ParseNumber(fields[0], r.user)) {
      throw ParseError(line_no, "non-numeric user id '" +
                                    std::string(fields[0]) + "'");
    }
    if (!ParseNumber(fields[1], r.item)) {
      throw ParseError(line_no, "non-numeric item id '" +
                                    std::string(fields[1]) + "'");
    }
    if (!ParseNumber(fields[2], stars)) {
      throw ParseError(line_no, "non-numeric rating '" +
                                    std::string(fields[2]) + "'");
    }
    r.value = static_cast<double>(stars);
    CheckRange(r, line_no);
    auto [it, inserted] = seen.emplace(std::pair{r.user, r.item}, line_no);
    if (!inserted) {
      throw DuplicateError("line " + std::to_string(line_no) + ": user " +
                           std::to_string(r.user) + " already rated item " +
                           std::to_string(r.item) + " on line " +
                           std::to_string(it->second));
    }
    raw.push_back(r);
  }
  if (in.bad()) throw IoError("read failure while parsing ratings");

  return FromRaw(raw);
}

RatingsDataset RatingsDataset::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ratings file " + path.string());
  return Parse(in);
}

RatingsDataset RatingsDataset::FromRaw(std::span<const RawRating> raw) {
  RatingsDataset d;
  for (const RawRating& r : raw) {
    CheckRange(r, 0);
    d.raw_user_ids_.push_back(r.user);
    d.raw_item_ids_.push_back(r.item);
  }
  auto unique_sorted = [](std::vector<RawId>& ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  };
  unique_sorted(d.raw_user_ids_);
  unique_sorted(d.raw_item_ids_);

  d.ratings_.reserve(raw.size());
  for (const RawRating& r : raw) {
    d.ratings_.push_back(Rating{*d.FindUser(r.user), *d.FindItem(r.item),
                                r.value});
  }
  std::sort(d.ratings_.begin(), d.ratings_.end(),
            [](const Rating& a, const Rating& b) {
              return std::pair{a.user, a.item} < std::pair{b.user, b.item};
            });
  for (std::size_t k = 1; k < d.ratings_.size(); ++k) {
    const Rating& prev = d.ratings_[k - 1];
    const Rating& cur = d.ratings_[k];
    if (prev.user == cur.user && prev.item == cur.item) {
      throw DuplicateError("user " + std::to_string(d.raw_user_id(cur.user)) +
                           " rated item " +
                           std::to_string(d.raw_item_id(cur.item)) +
                           " more than once");
    }
  }

  const std::size_t n_users = d.raw_user_ids_.size();
  const std::size_t n_items = d.raw_item_ids_.size();

  d.user_offsets_.assign(n_users + 1, 0);
  std::vector<std::size_t> item_counts(n_items + 1, 0);
  for (const Rating& r : d.ratings_) {
    ++d.user_offsets_[r.user + 1];
    ++item_counts[r.item + 1];
  }
  for (std::size_t u = 0; u < n_users; ++u) {
    d.user_offsets_[u + 1] += d.user_offsets_[u];
  }
  for (std::size_t i = 0; i < n_items; ++i) {
    item_counts[i + 1] += item_counts[i];
  }
  d.item_offsets_ = item_counts;
  d.item_raters_.resize(d.ratings_.size());
  std::vector<std::size_t> cursor(item_counts.begin(), item_counts.end() - 1);
  // Ratings are user-ordered, so each item's rater list comes out sorted.
  for (const Rating& r : d.ratings_) {
    d.item_raters_[cursor[r.item]++] = UserRating{r.user, r.value};
  }

  d.user_means_.assign(n_users, 0.0);
  double total = 0.0;
  for (UserId u = 0; u < n_users; ++u) {
    double sum = 0.0;
    for (const Rating& r : d.user_ratings(u)) sum += r.value;
    d.user_means_[u] = sum / static_cast<double>(d.user_ratings(u).size());
    total += sum;
  }
  d.global_mean_ =
      d.ratings_.empty() ? 0.0 : total / static_cast<double>(d.ratings_.size());
  return d;
}

std::span<const Rating> RatingsDataset::user_ratings(UserId u) const {
  return std::span<const Rating>(ratings_).subspan(
      user_offsets_[u], user_offsets_[u + 1] - user_offsets_[u]);
}

std::span<const UserRating> RatingsDataset::item_raters(ItemId i) const {
  return std::span<const UserRating>(item_raters_)
      .subspan(item_offsets_[i], item_offsets_[i + 1] - item_offsets_[i]);
}

std::optional<UserId> RatingsDataset::FindUser(RawId raw) const {
  auto it = std::lower_bound(raw_user_ids_.begin(), raw_user_ids_.end(), raw);
  if (it == raw_user_ids_.end() || *it != raw) return std::nullopt;
  return static_cast<UserId>(it - raw_user_ids_.begin());
}

std::optional<ItemId> RatingsDataset::FindItem(RawId raw) const {
  auto it = std::lower_bound(raw_item_ids_.begin(), raw_item_ids_.end(), raw);
  if (it == raw_item_ids_.end() || *it != raw) return std::nullopt;
  return static_cast<ItemId>(it - raw_item_ids_.begin());
}

void WriteRatings(std::ostream& out, const RatingsDataset& dataset) {
  for (const Rating& r : dataset.ratings()) {
    out << dataset.raw_user_id(r.user) << '\t' << dataset.raw_item_id(r.item)
        << '\t' << RatingText(r.value) << "\t0\n";
  }
}

CandidateSets CandidateSets::Build(const RatingsDataset& dataset,
                                   std::size_t min_candidates) {
  CandidateSets sets;
  sets.per_user_.resize(dataset.n_users());
  const auto n_items = static_cast<ItemId>(dataset.n_items());
  for (UserId u = 0; u < dataset.n_users(); ++u) {
    auto rated = dataset.user_ratings(u);
    auto& out = sets.per_user_[u];
    out.reserve(n_items - rated.size());
    std::size_t next = 0;
    for (ItemId i = 0; i < n_items; ++i) {
      if (next < rated.size() && rated[next].item == i) {
        ++next;
      } else {
        out.push_back(i);
      }
    }
    if (out.size() < min_candidates) {
      throw ConfigError("user " + std::to_string(dataset.raw_user_id(u)) +
                        " has " + std::to_string(out.size()) +
                        " unrated items, fewer than k = " +
                        std::to_string(min_candidates));
    }
  }
  return sets;
}

bool CandidateSets::Contains(UserId u, ItemId i) const {
  return std::binary_search(per_user_[u].begin(), per_user_[u].end(), i);
}

}  // namespace fairrec
