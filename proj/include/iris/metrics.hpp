// Copyright 2026 The iriskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IRIS_METRICS_HPP_
#define IRIS_METRICS_HPP_

#include <string>
#include <utility>
#include <vector>

#include "iris/image.hpp"

namespace iris {

struct SegScores {
  double e1 = 0.0;
  double e2 = 0.0;
  double f1_mean = 0.0;
  double f1_std = 0.0;
  double miou = 0.0;
};

struct LocScores {
  double mhdis_inner = 0.0;
  double mhdis_outer = 0.0;
  double mhdis_overall = 0.0;  // (inner + outer) / 2
  std::vector<std::pair<double, double>> success_curve;  // over overall error
};

struct PerImageScores {
  std::string id;
  double e1 = 0.0;
  double e2 = 0.0;
  double f1 = 0.0;
  double iou = 0.0;
  double hd_inner = 0.0;
  double hd_outer = 0.0;
};

struct EvalReport {
  std::size_t n = 0;
  std::vector<PerImageScores> per_image;
  SegScores seg;
  LocScores loc;
};

// Pixel disagreement rate: XOR count / (c*r). Batches average per-image rates,
// which matches the pooled formulation when all images share one size.
double e1_rate(const BinaryMask& gt, const BinaryMask& pred);
double batch_e1(const std::vector<std::pair<BinaryMask, BinaryMask>>& pairs);

// Mean of false-positive and false-negative rates; a term whose denominator
// is empty (gt all one class) contributes 0.
double e2_rate(const BinaryMask& gt, const BinaryMask& pred);
double batch_e2(const std::vector<std::pair<BinaryMask, BinaryMask>>& pairs);

// Foreground F-measure 2PR/(P+R). Both-empty counts as 1; an undefined
// precision/recall term makes the score 0.
double f1_score(const BinaryMask& gt, const BinaryMask& pred);

// Mean of foreground and background IoU; an IoU with an empty union is 1.
double miou_score(const BinaryMask& gt, const BinaryMask& pred);

// Symmetric Hausdorff distance between nonempty point sets (Euclidean).
double hausdorff(const std::vector<Vec2>& g_points,
                 const std::vector<Vec2>& d_points);

// Circle sampled at `n` even angular steps, for Hausdorff against labeled
// boundary points (1-degree steps by default).
std::vector<Vec2> densify_circle(const Circle& c, int n = 360);

// rate(t) = |{e <= t}| / n for each threshold (thresholds sorted ascending).
std::vector<std::pair<double, double>> success_curve(
    const std::vector<double>& errors, const std::vector<double>& thresholds);

// Default success-curve thresholds: 0 to 30 px in 0.5 px steps.
std::vector<double> default_hd_thresholds();

// Aggregates per-image rows (means; f1_std is the population deviation) and
// builds the overall success curve.
EvalReport aggregate(const std::vector<PerImageScores>& rows);

// CSV: per-image rows then one "aggregate" footer row. JSON mirrors the full
// report. Curves go to two-column CSV.
void write_report_csv(const std::string& path, const EvalReport& report);
void write_report_json(const std::string& path, const EvalReport& report);
void write_curve_csv(const std::string& path,
                     const std::vector<std::pair<double, double>>& curve);

}  // namespace iris

#endif  // IRIS_METRICS_HPP_
