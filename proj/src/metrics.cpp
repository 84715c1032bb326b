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

#include "iris/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "json.hpp"

namespace iris {

namespace {

struct Confusion {
  std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
};

Confusion confusion(const BinaryMask& gt, const BinaryMask& pred) {
  if (!gt.same_shape(pred))
    throw ShapeError("segmentation metric: mask size mismatch");
  Confusion c;
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      const bool g = gt.get(x, y);
      const bool p = pred.get(x, y);
      if (g && p)
        ++c.tp;
      else if (!g && p)
        ++c.fp;
      else if (g && !p)
        ++c.fn;
      else
        ++c.tn;
    }
  }
  return c;
}

}  // namespace

double e1_rate(const BinaryMask& gt, const BinaryMask& pred) {
  if (!gt.same_shape(pred)) throw ShapeError("e1: mask size mismatch");
  std::uint64_t diff = 0;
  for (int y = 0; y < gt.height(); ++y)
    for (int x = 0; x < gt.width(); ++x)
      diff += gt.get(x, y) != pred.get(x, y) ? 1 : 0;
  return static_cast<double>(diff) /
         (static_cast<double>(gt.width()) * gt.height());
}

double batch_e1(const std::vector<std::pair<BinaryMask, BinaryMask>>& pairs) {
  if (pairs.empty()) throw ConfigError("batch_e1: no pairs");
  double sum = 0.0;
  for (const auto& [gt, pred] : pairs) sum += e1_rate(gt, pred);
  return sum / pairs.size();
}

double e2_rate(const BinaryMask& gt, const BinaryMask& pred) {
  const Confusion c = confusion(gt, pred);
  const double fpr =
      c.fp + c.tn == 0 ? 0.0
                       : static_cast<double>(c.fp) /
                             static_cast<double>(c.fp + c.tn);
  const double fnr =
      c.fn + c.tp == 0 ? 0.0
                       : static_cast<double>(c.fn) /
                             static_cast<double>(c.fn + c.tp);
  return (fpr + fnr) / 2.0;
}

double batch_e2(const std::vector<std::pair<BinaryMask, BinaryMask>>& pairs) {
  if (pairs.empty()) throw ConfigError("batch_e2: no pairs");
  double sum = 0.0;
  for (const auto& [gt, pred] : pairs) sum += e2_rate(gt, pred);
  return sum / pairs.size();
}

double f1_score(const BinaryMask& gt, const BinaryMask& pred) {
  const Confusion c = confusion(gt, pred);
  if (c.tp + c.fn == 0 && c.tp + c.fp == 0) return 1.0;  // both empty
  if (c.tp + c.fp == 0 || c.tp + c.fn == 0) return 0.0;
  const double precision =
      static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  const double recall =
      static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double miou_score(const BinaryMask& gt, const BinaryMask& pred) {
  const Confusion c = confusion(gt, pred);
  auto iou = [](std::uint64_t inter, std::uint64_t uni) {
    return uni == 0 ? 1.0
                    : static_cast<double>(inter) / static_cast<double>(uni);
  };
  const double fg = iou(c.tp, c.tp + c.fp + c.fn);
  const double bg = iou(c.tn, c.tn + c.fp + c.fn);
  return (fg + bg) / 2.0;
}

double hausdorff(const std::vector<Vec2>& g_points,
                 const std::vector<Vec2>& d_points) {
  if (g_points.empty() || d_points.empty())
    throw ConfigError("hausdorff: empty point set");
  auto directed = [](const std::vector<Vec2>& from,
                     const std::vector<Vec2>& to) {
    double worst = 0.0;
    for (const Vec2& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec2& q : to) best = std::min(best, distance(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(g_points, d_points), directed(d_points, g_points));
}

std::vector<Vec2> densify_circle(const Circle& c, int n) {
  std::vector<Vec2> pts;
  pts.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n;
    pts.push_back({c.cx + c.r * std::cos(theta), c.cy + c.r * std::sin(theta)});
  }
  return pts;
}

std::vector<std::pair<double, double>> success_curve(
    const std::vector<double>& errors, const std::vector<double>& thresholds) {
  if (!std::is_sorted(thresholds.begin(), thresholds.end()))
    throw ConfigError("success_curve: thresholds must be ascending");
  std::vector<std::pair<double, double>> curve;
  curve.reserve(thresholds.size());
  for (double t : thresholds) {
    std::size_t hits = 0;
    for (double e : errors) hits += e <= t ? 1 : 0;
    curve.push_back(
        {t, errors.empty() ? 0.0 : static_cast<double>(hits) / errors.size()});
  }
  return curve;
}

std::vector<double> default_hd_thresholds() {
  std::vector<double> t;
  for (int i = 0; i <= 60; ++i) t.push_back(0.5 * i);
  return t;
}

EvalReport aggregate(const std::vector<PerImageScores>& rows) {
  if (rows.empty()) throw ConfigError("aggregate: no rows");
  EvalReport report;
  report.n = rows.size();
  report.per_image = rows;

  double e1 = 0.0, e2 = 0.0, f1 = 0.0, iou = 0.0, hdi = 0.0, hdo = 0.0;
  for (const PerImageScores& r : rows) {
    e1 += r.e1;
    e2 += r.e2;
    f1 += r.f1;
    iou += r.iou;
    hdi += r.hd_inner;
    hdo += r.hd_outer;
  }
  const double n = static_cast<double>(rows.size());
  report.seg.e1 = e1 / n;
  report.seg.e2 = e2 / n;
  report.seg.f1_mean = f1 / n;
  report.seg.miou = iou / n;
  double var = 0.0;
  for (const PerImageScores& r : rows) {
    const double d = r.f1 - report.seg.f1_mean;
    var += d * d;
  }
  report.seg.f1_std = std::sqrt(var / n);

  report.loc.mhdis_inner = hdi / n;
  report.loc.mhdis_outer = hdo / n;
  report.loc.mhdis_overall =
      (report.loc.mhdis_inner + report.loc.mhdis_outer) / 2.0;
  std::vector<double> overall;
  overall.reserve(rows.size());
  for (const PerImageScores& r : rows)
    overall.push_back(0.5 * (r.hd_inner + r.hd_outer));
  report.loc.success_curve = success_curve(overall, default_hd_thresholds());
  return report;
}

void write_report_csv(const std::string& path, const EvalReport& report) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "id,e1,e2,f1,iou,hd_inner,hd_outer\n";
  out.precision(17);
  for (const PerImageScores& r : report.per_image) {
    out << r.id << ',' << r.e1 << ',' << r.e2 << ',' << r.f1 << ',' << r.iou
        << ',' << r.hd_inner << ',' << r.hd_outer << '\n';
  }
  out << "aggregate," << report.seg.e1 << ',' << report.seg.e2 << ','
      << report.seg.f1_mean << ',' << report.seg.miou << ','
      << report.loc.mhdis_inner << ',' << report.loc.mhdis_outer << '\n';
  if (!out) throw IoError("short write: " + path);
}

void write_report_json(const std::string& path, const EvalReport& report) {
  nlohmann::json j;
  j["n"] = report.n;
  j["e1"] = report.seg.e1;
  j["e2"] = report.seg.e2;
  j["f1_mean"] = report.seg.f1_mean;
  j["f1_std"] = report.seg.f1_std;
  j["miou"] = report.seg.miou;
  j["mhdis_inner"] = report.loc.mhdis_inner;
  j["mhdis_outer"] = report.loc.mhdis_outer;
  j["mhdis_overall"] = report.loc.mhdis_overall;
  j["per_image"] = nlohmann::json::array();
  for (const PerImageScores& r : report.per_image) {
    j["per_image"].push_back({{"id", r.id},
                              {"e1", r.e1},
                              {"e2", r.e2},
                              {"f1", r.f1},
                              {"iou", r.iou},
                              {"hd_inner", r.hd_inner},
                              {"hd_outer", r.hd_outer}});
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

void write_curve_csv(const std::string& path,
                     const std::vector<std::pair<double, double>>& curve) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "threshold,rate\n";
  out.precision(17);
  for (const auto& [t, rate] : curve) out << t << ',' << rate << '\n';
  if (!out) throw IoError("short write: " + path);
}

}  // namespace iris
