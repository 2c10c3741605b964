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

// fairrec run  --config FILE [overrides...]   fit, re-rank, measure, write
// fairrec plot --results results.csv --out DIR  rebuild scatter files

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fairrec/error.h"
#include "fairrec/plot.h"
#include "fairrec/sweep.h"

int main(int argc, char** argv) {
  CLI::App app{"User fairness of diversity re-ranking for top-k recommenders"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "Run a re-ranking sweep");
  std::string config_path;
  std::optional<std::string> data, predictor, post, ell, theta, out, cache,
      knn_similarity, knn_aggregation;
  std::optional<std::size_t> k, knn_neighbors, nmf_factors, nmf_epochs;
  std::optional<double> threshold;
  std::optional<std::uint64_t> seed;
  bool per_user = false;
  bool svg = false;
  run->add_option("--config", config_path, "key = value config file");
  run->add_option("--data", data, "MovieLens u.data ratings file");
  run->add_option("--predictor", predictor, "knn | nmf");
  run->add_option("--post", post, "none | random | greedy");
  run->add_option("--k", k, "list length");
  run->add_option("--ell", ell, "Random grid, e.g. 10,50,100,500");
  run->add_option("--theta", theta, "Greedy grid, e.g. 10,100,200,500,1000");
  run->add_option("--threshold", threshold, "Greedy score threshold");
  run->add_option("--seed", seed, "Random seed");
  run->add_option("--out", out, "output directory");
  run->add_option("--cache", cache, "score cache CSV (read or written)");
  run->add_option("--knn-neighbors", knn_neighbors);
  run->add_option("--knn-similarity", knn_similarity, "msd | cosine");
  run->add_option("--knn-aggregation", knn_aggregation, "mean | centered");
  run->add_option("--nmf-factors", nmf_factors);
  run->add_option("--nmf-epochs", nmf_epochs);
  run->add_flag("--per-user", per_user, "write per-user CSVs");
  run->add_flag("--svg", svg, "also write SVG scatter plots");

  CLI::App* plot = app.add_subcommand("plot", "Rebuild scatter files");
  std::string results_path;
  std::string plot_dir = ".";
  bool plot_svg = false;
  plot->add_option("--results", results_path, "results.csv")->required();
  plot->add_option("--out", plot_dir, "output directory");
  plot->add_flag("--svg", plot_svg, "also write SVG scatter plots");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      fairrec::SweepConfig config = config_path.empty()
                                        ? fairrec::SweepConfig{}
                                        : fairrec::LoadConfig(config_path);
      auto set = [&](const char* key, const auto& value) {
        if (value) {
          std::string text;
          if constexpr (std::is_same_v<std::decay_t<decltype(*value)>,
                                       std::string>) {
            text = *value;
          } else {
            text = std::to_string(*value);
          }
          fairrec::ApplySetting(config, key, text);
        }
      };
      set("data", data);
      set("predictor", predictor);
      set("post", post);
      set("k", k);
      set("ell", ell);
      set("theta", theta);
      set("seed", seed);
      set("out", out);
      set("cache", cache);
      set("knn.neighbors", knn_neighbors);
      set("knn.similarity", knn_similarity);
      set("knn.aggregation", knn_aggregation);
      set("nmf.factors", nmf_factors);
      set("nmf.epochs", nmf_epochs);
      if (threshold) config.threshold = *threshold;
      if (per_user) config.per_user = true;
      if (svg) config.svg = true;

      const auto points = fairrec::RunSweep(config);
      std::ifstream summary(config.output_dir / "summary.txt");
      std::cout << summary.rdbuf();
      std::cout << "wrote " << points.size() << " points to "
                << config.output_dir.string() << "\n";
    } else if (*plot) {
      std::ifstream in(results_path);
      if (!in) throw fairrec::IoError("cannot open " + results_path);
      const auto reports = fairrec::ReadResults(in);
      for (const auto& path : fairrec::EmitPlotData(reports, plot_dir,
                                                    plot_svg)) {
        std::cout << path.string() << "\n";
      }
    }
  } catch (const fairrec::Error& e) {
    std::cerr << "fairrec: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
