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

// MovieLens-style rating data and the per-user candidate item sets derived
// from it.
//
// Raw ids from the input file are remapped to dense 0-based ids, assigned in
// ascending raw-id order. Everything downstream of this header works in
// dense ids; raw ids are only used again when writing reports.

#ifndef FAIRREC_DATASET_H_
#define FAIRREC_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace fairrec {

using UserId = std::uint32_t;
using ItemId = std::uint32_t;
using RawId = std::int64_t;

inline constexpr double kMinRating = 1.0;
inline constexpr double kMaxRating = 5.0;

struct RawRating {
  RawId user;
  RawId item;
  double value;
};

struct Rating {
  UserId user;
  ItemId item;
  double value;

  friend bool operator==(const Rating&, const Rating&) = default;
};

struct UserRating {
  UserId user;
  double value;
};

class RatingsDataset {
 public:
  // Reads `user item rating timestamp` lines separated by a TAB or a single
  // space. Blank lines are skipped; timestamps are not interpreted.
  // Throws ParseError, RangeError or DuplicateError.
  static RatingsDataset Parse(std::istream& in);
  static RatingsDataset Load(const std::filesystem::path& path);

  // Throws RangeError or DuplicateError.
  static RatingsDataset FromRaw(std::span<const RawRating> raw);

  std::size_t n_users() const { return raw_user_ids_.size(); }
  std::size_t n_items() const { return raw_item_ids_.size(); }
  std::size_t n_ratings() const { return ratings_.size(); }

  // All ratings, ordered by (user, item).
  std::span<const Rating> ratings() const { return ratings_; }

  // Ratings of user `u`, ordered by item id.
  std::span<const Rating> user_ratings(UserId u) const;

  // Users who rated item `i`, ordered by user id.
  std::span<const UserRating> item_raters(ItemId i) const;

  double user_mean(UserId u) const { return user_means_[u]; }
  double global_mean() const { return global_mean_; }

  RawId raw_user_id(UserId u) const { return raw_user_ids_[u]; }
  RawId raw_item_id(ItemId i) const { return raw_item_ids_[i]; }
  std::optional<UserId> FindUser(RawId raw) const;
  std::optional<ItemId> FindItem(RawId raw) const;

  friend bool operator==(const RatingsDataset& a, const RatingsDataset& b) {
    return a.raw_user_ids_ == b.raw_user_ids_ &&
           a.raw_item_ids_ == b.raw_item_ids_ && a.ratings_ == b.ratings_;
  }

 private:
  RatingsDataset() = default;

  std::vector<RawId> raw_user_ids_;  // sorted; index is the dense id
  std::vector<RawId> raw_item_ids_;
  std::vector<Rating> ratings_;
  std::vector<std::size_t> user_offsets_;
  std::vector<std::size_t> item_offsets_;
  std::vector<UserRating> item_raters_;
  std::vector<double> user_means_;
  double global_mean_ = 0.0;
};

// Writes the dataset back in the line format accepted by Parse, with raw ids
// and a zero timestamp.
void WriteRatings(std::ostream& out, const RatingsDataset& dataset);

// Items each user has not rated. These are the only items that may be
// recommended to that user.
class CandidateSets {
 public:
  // Throws ConfigError naming the raw user id when a user has fewer than
  // `min_candidates` unrated items.
  static CandidateSets Build(const RatingsDataset& dataset,
                             std::size_t min_candidates);

  std::size_t n_users() const { return per_user_.size(); }

  // Ascending item ids.
  std::span<const ItemId> of(UserId u) const { return per_user_[u]; }
  bool Contains(UserId u, ItemId i) const;

 private:
  std::vector<std::vector<ItemId>> per_user_;
};

}  // namespace fairrec

#endif  // FAIRREC_DATASET_H_
