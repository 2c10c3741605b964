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

#ifndef FAIRREC_PLOT_H_
#define FAIRREC_PLOT_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fairrec/metrics.h"

namespace fairrec {

enum class DisparityMetric { kScore, kRecommendation };

// Scatter data for one panel: aggregate diversity against one disparity
// measure for the reports of a single predictor. Rows `x y` at 6 decimals,
// sorted by x then y; the baseline (post == "none") is also named in a
// comment line.
std::string ScatterData(const std::vector<DisparityReport>& reports,
                        DisparityMetric metric);

// Self-contained SVG rendering of the same points.
std::string ScatterSvg(const std::vector<DisparityReport>& reports,
                       DisparityMetric metric);

// Writes `<post>_<predictor>_d_s.dat` and `<post>_<predictor>_d_r.dat` (plus
// `.svg` twins when `svg` is set) per predictor found in `reports`, where
// <post> is the sweep's post-processor. Returns the paths written.
// Throws InvalidInput for no reports and IoError for an unwritable dir.
std::vector<std::filesystem::path> EmitPlotData(
    const std::vector<DisparityReport>& reports,
    const std::filesystem::path& dir, bool svg = false);

}  // namespace fairrec

#endif  // FAIRREC_PLOT_H_
