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

#include "fairrec/plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <system_error>
#include <utility>

#include "fairrec/error.h"

namespace fairrec {
namespace {

struct Point {
  double x;
  double y;
  bool baseline;
};

const char* MetricName(DisparityMetric metric) {
  return metric == DisparityMetric::kScore ? "d_s" : "d_r";
}

std::vector<Point> Points(const std::vector<DisparityReport>& reports,
                          DisparityMetric metric) {
  std::vector<Point> points;
  for (const DisparityReport& r : reports) {
    points.push_back({r.aggregate_diversity,
                      metric == DisparityMetric::kScore
                          ? r.score_disparity
                          : r.recommendation_disparity,
                      r.post == "none"});
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const Point& a, const Point& b) {
                     return a.x != b.x ? a.x < b.x : a.y < b.y;
                   });
  return points;
}

std::string Format(const char* fmt, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return buf;
}

// Sweep post-processor of a report set: the first non-baseline entry.
std::string SweepPost(const std::vector<DisparityReport>& reports) {
  for (const DisparityReport& r : reports) {
    if (r.post != "none") return r.post;
  }
  return "none";
}

std::string Label(const std::vector<DisparityReport>& reports) {
  return reports.empty() ? std::string()
                         : "predictor=" + reports.front().predictor +
                               " post=" + SweepPost(reports);
}

double NiceCeiling(double v) {
  if (v <= 0.0) return 1.0;
  const double step = std::pow(10.0, std::floor(std::log10(v)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (m * step >= v) return m * step;
  }
  return 10.0 * step;
}

}  // namespace

std::string ScatterData(const std::vector<DisparityReport>& reports,
                        DisparityMetric metric) {
  std::string out = "# x=agg_div y=" + std::string(MetricName(metric)) + " " +
                    Label(reports) + "\n";
  const auto points = Points(reports, metric);
  for (const Point& p : points) {
    if (p.baseline) {
      out += Format("# baseline (no post-processing): %.6f %.6f\n", p.x, p.y);
    }
  }
  for (const Point& p : points) out += Format("%.6f %.6f\n", p.x, p.y);
  return out;
}

std::string ScatterSvg(const std::vector<DisparityReport>& reports,
                       DisparityMetric metric) {
  constexpr double kWidth = 480, kHeight = 360;
  constexpr double kLeft = 60, kRight = 20, kTop = 30, kBottom = 50;
  const auto points = Points(reports, metric);
  double max_x = 0.0, max_y = 0.0;
  for (const Point& p : points) {
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  max_x = NiceCeiling(max_x);
  max_y = NiceCeiling(max_y);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + plot_w * x / max_x; };
  auto sy = [&](double y) { return kTop + plot_h * (1.0 - y / max_y); };

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"360\" "
      "font-family=\"sans-serif\" font-size=\"11\">\n"
      "<rect width=\"480\" height=\"360\" fill=\"white\"/>\n";
  svg += "<text x=\"240\" y=\"18\" text-anchor=\"middle\">" + Label(reports) +
         "</text>\n";
  svg += Format("<line x1=\"%.1f\" y1=\"%.1f\" ", kLeft, kTop + plot_h) +
         Format("x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", kLeft + plot_w,
                kTop + plot_h);
  svg += Format("<line x1=\"%.1f\" y1=\"%.1f\" ", kLeft, kTop) +
         Format("x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", kLeft,
                kTop + plot_h);
  for (int t = 0; t <= 4; ++t) {
    const double fx = max_x * t / 4.0;
    const double fy = max_y * t / 4.0;
    svg += Format("<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">",
                  sx(fx), kTop + plot_h + 15) +
           Format("%.3g", fx, 0.0) + "</text>\n";
    svg += Format("<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">",
                  kLeft - 5, sy(fy) + 4) +
           Format("%.3g", fy, 0.0) + "</text>\n";
  }
  svg += Format("<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">"
                "aggregate diversity</text>\n",
                kLeft + plot_w / 2, kHeight - 12);
  svg += Format("<text x=\"14\" y=\"%.1f\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 14 %.1f)\">",
                kTop + plot_h / 2, kTop + plot_h / 2) +
         std::string(metric == DisparityMetric::kScore
                         ? "score disparity"
                         : "recommendation disparity") +
         "</text>\n";
  for (const Point& p : points) {
    if (p.baseline) {
      svg += Format("<rect x=\"%.2f\" y=\"%.2f\" width=\"8\" height=\"8\" "
                    "fill=\"black\"/>\n",
                    sx(p.x) - 4, sy(p.y) - 4);
    } else {
      svg += Format("<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" "
                    "fill=\"steelblue\"/>\n",
                    sx(p.x), sy(p.y));
    }
  }
  svg += "</svg>\n";
  return svg;
}

std::vector<std::filesystem::path> EmitPlotData(
    const std::vector<DisparityReport>& reports,
    const std::filesystem::path& dir, bool svg) {
  if (reports.empty()) throw InvalidInput("no reports to plot");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  std::map<std::string, std::vector<DisparityReport>> by_predictor;
  for (const DisparityReport& r : reports) by_predictor[r.predictor].push_back(r);

  std::vector<std::filesystem::path> written;
  auto write = [&](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw IoError("cannot write " + path.string());
    written.push_back(path);
  };
  for (const auto& [predictor, group] : by_predictor) {
    const std::string stem = SweepPost(group) + "_" + predictor + "_";
    for (DisparityMetric metric :
         {DisparityMetric::kScore, DisparityMetric::kRecommendation}) {
      const std::string name = stem + MetricName(metric);
      write(dir / (name + ".dat"), ScatterData(group, metric));
      if (svg) write(dir / (name + ".svg"), ScatterSvg(group, metric));
    }
  }
  return written;
}

}  // namespace fairrec
