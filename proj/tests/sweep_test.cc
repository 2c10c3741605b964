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

#include "fairrec/sweep.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fairrec/error.h"
#include "fairrec/plot.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairrec {
namespace {

namespace fs = std::filesystem;
using testing::ReadFile;

class SweepTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fairrec_sweep_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream out(dir_ / "u.data");
    WriteRatings(out, dataset_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  SweepConfig Config(PostKind post, const std::string& out) const {
    SweepConfig c;
    c.data_path = dir_ / "u.data";
    c.post = post;
    c.ell_grid = {10, 50};
    c.theta_grid = {5, 20, 60};
    c.output_dir = dir_ / out;
    return c;
  }

  fs::path dir_;
  RatingsDataset dataset_ =
      RatingsDataset::FromRaw(testing::RandomRatings(17, 80, 120, 5, 30));
};

TEST(ConfigTest, ParsesKeysCommentsAndRelativePaths) {
  std::istringstream in(
      "# sweep\n"
      "data = ml/u.data\n"
      "predictor = nmf   # trailing comment\n"
      "post = greedy\n"
      "k = 3\n"
      "theta = 10,100\n"
      "threshold = 4\n"
      "nmf.factors = 8\n"
      "knn.similarity = cosine\n"
      "per_user = true\n");
  SweepConfig c = ParseConfig(in, "/base");
  EXPECT_EQ(c.data_path, fs::path("/base/ml/u.data"));
  EXPECT_EQ(c.output_dir, fs::path("fairrec_out"));
  EXPECT_EQ(c.predictor, PredictorKind::kNmf);
  EXPECT_EQ(c.post, PostKind::kGreedy);
  EXPECT_EQ(c.k, 3u);
  EXPECT_EQ(c.theta_grid, (std::vector<std::size_t>{10, 100}));
  EXPECT_DOUBLE_EQ(c.threshold, 4.0);
  EXPECT_EQ(c.nmf.n_factors, 8u);
  EXPECT_EQ(c.knn.similarity, KnnSimilarity::kCenteredCosine);
  EXPECT_TRUE(c.per_user);
}

TEST(ConfigTest, Errors) {
  SweepConfig c;
  EXPECT_THROW(ApplySetting(c, "colour", "red"), ConfigError);
  EXPECT_THROW(ApplySetting(c, "k", "five"), ConfigError);
  EXPECT_THROW(ApplySetting(c, "predictor", "svd"), ConfigError);
  EXPECT_THROW(ApplySetting(c, "post", "shuffle"), ConfigError);
  EXPECT_THROW(ApplySetting(c, "ell", "10,,50"), ConfigError);
  EXPECT_THROW(ApplySetting(c, "per_user", "maybe"), ConfigError);
  std::istringstream bad("k 5\n");
  EXPECT_THROW(ParseConfig(bad), ConfigError);
  EXPECT_THROW(LoadConfig("/nonexistent/sweep.conf"), IoError);

  SweepConfig small_ell;
  small_ell.post = PostKind::kRandom;
  small_ell.ell_grid = {3};
  EXPECT_THROW(small_ell.Validate(), ConfigError);
  SweepConfig bad_threshold;
  bad_threshold.post = PostKind::kGreedy;
  bad_threshold.threshold = 0.5;
  EXPECT_THROW(bad_threshold.Validate(), ConfigError);
}

TEST_F(SweepTest, BaselineHasNoDisparity) {
  for (PredictorKind predictor : {PredictorKind::kKnn, PredictorKind::kNmf}) {
    SweepConfig c = Config(PostKind::kNone, "none");
    c.predictor = predictor;
    auto c_sets = CandidateSets::Build(dataset_, c.k);
    auto points = EvaluateSweep(c, dataset_, FitPredictor(c, dataset_, c_sets));
    ASSERT_EQ(points.size(), 1u);
    EXPECT_EQ(points[0].report.score_disparity, 0.0);
    EXPECT_EQ(points[0].report.recommendation_disparity, 0.0);
    EXPECT_EQ(points[0].report.param, "-");
  }
}

TEST_F(SweepTest, RandomWithEllEqualToKIsTheBaseline) {
  SweepConfig c = Config(PostKind::kRandom, "r");
  c.ell_grid = {5};
  auto scores = FitPredictor(c, dataset_, CandidateSets::Build(dataset_, 5));
  auto points = EvaluateSweep(c, dataset_, scores);
  ASSERT_EQ(points.size(), 2u);
  EXPECT_EQ(points[1].report.aggregate_diversity,
            points[0].report.aggregate_diversity);
  EXPECT_EQ(points[1].report.score_disparity, 0.0);
  EXPECT_EQ(points[1].report.recommendation_disparity, 0.0);
}

TEST_F(SweepTest, GreedyDiversityIsNonDecreasing) {
  SweepConfig c = Config(PostKind::kGreedy, "g");
  c.theta_grid = {10, 100, 200, 500, 1000};
  auto scores = FitPredictor(c, dataset_, CandidateSets::Build(dataset_, 5));
  auto points = EvaluateSweep(c, dataset_, scores);
  ASSERT_EQ(points.size(), 6u);
  for (std::size_t p = 1; p < points.size(); ++p) {
    EXPECT_GE(points[p].report.aggregate_diversity,
              points[p - 1].report.aggregate_diversity);
    EXPECT_LE(points[p].achieved_increase, points[p].requested_increase);
  }
}

TEST_F(SweepTest, RunWritesAllOutputs) {
  SweepConfig c = Config(PostKind::kRandom, "out");
  c.per_user = true;
  c.svg = true;
  auto points = RunSweep(c);
  ASSERT_EQ(points.size(), 3u);
  const std::string results = ReadFile(c.output_dir / "results.csv");
  EXPECT_EQ(results.substr(0, results.find('\n')), kResultsHeader);
  EXPECT_EQ(std::count(results.begin(), results.end(), '\n'), 4);
  EXPECT_NE(results.find("knn,none,-,5,"), std::string::npos);
  EXPECT_NE(results.find("knn,random,50,5,"), std::string::npos);
  for (const char* name :
       {"summary.txt", "random_knn_d_s.dat", "random_knn_d_r.dat",
        "random_knn_d_s.svg", "random_knn_d_r.svg",
        "per_user_none_baseline.csv", "per_user_random_10.csv",
        "per_user_random_50.csv"}) {
    EXPECT_TRUE(fs::exists(c.output_dir / name)) << name;
  }
  const std::string per_user = ReadFile(c.output_dir / "per_user_random_10.csv");
  EXPECT_EQ(std::count(per_user.begin(), per_user.end(), '\n'),
            static_cast<long>(dataset_.n_users()) + 1);
}

TEST_F(SweepTest, RunsAreByteIdenticalAndReplotReproducesFiles) {
  SweepConfig a = Config(PostKind::kGreedy, "a");
  SweepConfig b = Config(PostKind::kGreedy, "b");
  RunSweep(a);
  RunSweep(b);
  for (const char* name :
       {"results.csv", "summary.txt", "greedy_knn_d_s.dat",
        "greedy_knn_d_r.dat"}) {
    EXPECT_EQ(ReadFile(a.output_dir / name), ReadFile(b.output_dir / name))
        << name;
  }
  std::ifstream in(a.output_dir / "results.csv");
  EmitPlotData(ReadResults(in), dir_ / "replot");
  for (const char* name : {"greedy_knn_d_s.dat", "greedy_knn_d_r.dat"}) {
    EXPECT_EQ(ReadFile(a.output_dir / name), ReadFile(dir_ / "replot" / name))
        << name;
  }
}

TEST_F(SweepTest, CachedScoresGiveTheSameResults) {
  SweepConfig cold = Config(PostKind::kRandom, "cold");
  cold.predictor = PredictorKind::kNmf;
  cold.cache_path = dir_ / "scores.csv";
  RunSweep(cold);
  ASSERT_TRUE(fs::exists(*cold.cache_path));
  SweepConfig warm = cold;
  warm.output_dir = dir_ / "warm";
  RunSweep(warm);
  EXPECT_EQ(ReadFile(cold.output_dir / "results.csv"),
            ReadFile(warm.output_dir / "results.csv"));
}

TEST_F(SweepTest, InfeasibleKNamesAUser) {
  SweepConfig c = Config(PostKind::kNone, "big_k");
  c.k = 100;  // some users have fewer than 100 unrated items
  try {
    RunSweep(c);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("user "), std::string::npos);
  }
}

TEST_F(SweepTest, MissingDataFile) {
  SweepConfig c = Config(PostKind::kNone, "x");
  c.data_path = dir_ / "missing.data";
  EXPECT_THROW(RunSweep(c), IoError);
}

DisparityReport Report(std::string post, std::string param, double x,
                       double y) {
  DisparityReport r;
  r.predictor = "knn";
  r.post = std::move(post);
  r.param = std::move(param);
  r.k = 5;
  r.aggregate_diversity = x;
  r.score_disparity = y;
  r.recommendation_disparity = 2 * y;
  return r;
}

std::size_t DataRows(const std::string& text) {
  std::size_t rows = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    rows += !line.empty() && line[0] != '#' ? 1 : 0;
  }
  return rows;
}

TEST(ScatterTest, RowCounts) {
  std::vector<DisparityReport> one = {Report("none", "-", 0.01, 0.0)};
  EXPECT_EQ(DataRows(ScatterData(one, DisparityMetric::kScore)), 1u);

  std::vector<DisparityReport> five = {
      Report("none", "-", 0.016, 0.0), Report("random", "500", 0.9, 0.3),
      Report("random", "10", 0.05, 0.02), Report("random", "50", 0.3, 0.1),
      Report("random", "100", 0.5, 0.2)};
  const std::string text = ScatterData(five, DisparityMetric::kRecommendation);
  EXPECT_EQ(DataRows(text), 5u);
  EXPECT_NE(text.find("# baseline (no post-processing): 0.016000 0.000000"),
            std::string::npos);
  // Rows are sorted by x.
  EXPECT_LT(text.find("0.050000 0.040000"), text.find("0.300000 0.200000"));
  EXPECT_NE(ScatterSvg(five, DisparityMetric::kScore).find("<svg"),
            std::string::npos);
}

TEST(ScatterTest, EmitErrors) {
  EXPECT_THROW(EmitPlotData({}, fs::temp_directory_path()), InvalidInput);
  std::vector<DisparityReport> one = {Report("none", "-", 0.01, 0.0)};
  EXPECT_THROW(EmitPlotData(one, "/proc/fairrec_cannot_write"), IoError);
}

TEST(ResultsTest, ReadErrors) {
  std::istringstream bad_header("a,b\n");
  EXPECT_THROW(ReadResults(bad_header), ParseError);
  std::istringstream short_row(std::string(kResultsHeader) + "\nknn,none,-\n");
  EXPECT_THROW(ReadResults(short_row), ParseError);
  std::istringstream bad_number(std::string(kResultsHeader) +
                                "\nknn,none,-,5,x,0,0\n");
  EXPECT_THROW(ReadResults(bad_number), ParseError);
}

}  // namespace
}  // namespace fairrec
