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

// Weighted (observed-entries-only) NMF trained with Lee-Seung style
// multiplicative updates. With the 0/1 observation mask W the updates are
//   P <- P * ((W.R) Q) / ((W.PQ^T) Q)
//   Q <- Q * ((W.R)^T P) / ((W.PQ^T)^T P)
// and each half-step does not increase ||W.(R - PQ^T)||^2.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "fairrec/error.h"
#include "fairrec/predictors.h"
#include "fairrec/random.h"
#include "parallel.h"

namespace fairrec {
namespace {

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t f = 0; f < a.size(); ++f) sum += a[f] * b[f];
  return sum;
}

// One multiplicative half-step for `row`, given the row's observed entries and
// the opposite factor matrix.
template <typename Entries, typename PartnerOf>
void UpdateRow(std::span<double> row, std::span<const double> partners,
               std::size_t f, const Entries& entries, PartnerOf partner_of,
               std::vector<double>& numer, std::vector<double>& denom) {
  std::fill(numer.begin(), numer.end(), 0.0);
  std::fill(denom.begin(), denom.end(), 0.0);
  for (const auto& e : entries) {
    auto other = partners.subspan(partner_of(e) * f, f);
    const double pred = Dot(row, other);
    for (std::size_t k = 0; k < f; ++k) {
      numer[k] += e.value * other[k];
      denom[k] += pred * other[k];
    }
  }
  for (std::size_t k = 0; k < f; ++k) {
    if (denom[k] > 0.0) row[k] *= numer[k] / denom[k];
  }
}

void CheckFinite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw NumericalError(std::string("non-finite value in NMF ") + what);
    }
  }
}

}  // namespace

std::string NmfParams::Describe() const {
  return "nmf(n_factors=" + std::to_string(n_factors) +
         ",n_epochs=" + std::to_string(n_epochs) +
         ",seed=" + std::to_string(init_seed) + ")";
}

double NmfModel::Predict(UserId u, ItemId i) const {
  return Dot(std::span<const double>(user_factors).subspan(u * n_factors,
                                                           n_factors),
             std::span<const double>(item_factors).subspan(i * n_factors,
                                                           n_factors));
}

double NmfObjective(const NmfModel& model, const RatingsDataset& dataset) {
  double sum = 0.0;
  for (const Rating& r : dataset.ratings()) {
    const double err = r.value - model.Predict(r.user, r.item);
    sum += err * err;
  }
  return sum;
}

NmfModel FitNmf(const RatingsDataset& dataset, const NmfParams& params,
                const NmfEpochObserver& on_epoch) {
  if (params.n_factors < 1) throw ConfigError("nmf needs n_factors >= 1");
  const std::size_t f = params.n_factors;
  const std::size_t n_users = dataset.n_users();
  const std::size_t n_items = dataset.n_items();

  NmfModel model;
  model.n_factors = f;
  model.user_factors.resize(n_users * f);
  model.item_factors.resize(n_items * f);
  const double scale =
      2.0 * std::sqrt(dataset.global_mean() / static_cast<double>(f));
  Rng rng = MakeStream(params.init_seed, 0);
  for (double& v : model.user_factors) v = scale * UniformUnit(rng);
  for (double& v : model.item_factors) v = scale * UniformUnit(rng);

  std::span<double> p(model.user_factors);
  std::span<double> q(model.item_factors);
  for (std::size_t epoch = 0; epoch < params.n_epochs; ++epoch) {
    internal::ParallelFor(n_users, [&](std::size_t u) {
      std::vector<double> numer(f), denom(f);
      UpdateRow(p.subspan(u * f, f), q, f,
                dataset.user_ratings(static_cast<UserId>(u)),
                [](const Rating& r) { return r.item; }, numer, denom);
    });
    internal::ParallelFor(n_items, [&](std::size_t i) {
      std::vector<double> numer(f), denom(f);
      UpdateRow(q.subspan(i * f, f), p, f,
                dataset.item_raters(static_cast<ItemId>(i)),
                [](const UserRating& r) { return r.user; }, numer, denom);
    });
    CheckFinite(model.user_factors, "user factors");
    CheckFinite(model.item_factors, "item factors");
    if (on_epoch) on_epoch(epoch + 1, model);
  }
  return model;
}

ScoreGraph PredictNmf(const RatingsDataset& dataset,
                      const CandidateSets& candidates,
                      const NmfParams& params) {
  const NmfModel model = FitNmf(dataset, params);
  std::vector<std::vector<ScoredItem>> per_user(dataset.n_users());
  for (UserId u = 0; u < dataset.n_users(); ++u) {
    auto& out = per_user[u];
    out.reserve(candidates.of(u).size());
    for (ItemId i : candidates.of(u)) {
      out.push_back({i, std::clamp(model.Predict(u, i), kMinRating,
                                   kMaxRating)});
    }
  }
  return ScoreGraph(per_user, params.Describe());
}

}  // namespace fairrec
