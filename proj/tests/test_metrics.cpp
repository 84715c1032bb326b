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

#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "iris/metrics.hpp"
#include "iris/rng.hpp"
#include "oracles.hpp"

using namespace iris;

namespace {

BinaryMask random_mask(Rng& rng, int w, int h, double p) {
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) m.set(x, y, rng.uniform() < p);
  return m;
}

BinaryMask invert(const BinaryMask& m) {
  BinaryMask out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) out.set(x, y, !m.get(x, y));
  return out;
}

}  // namespace

TEST_CASE("e1") {
  Rng rng(81);
  const BinaryMask gt = random_mask(rng, 4, 4, 0.5);
  CHECK(e1_rate(gt, gt) == 0.0);
  CHECK(e1_rate(gt, invert(gt)) == 1.0);

  BinaryMask pred = gt;
  pred.set(0, 0, !pred.get(0, 0));
  pred.set(3, 2, !pred.get(3, 2));
  CHECK(e1_rate(gt, pred) == doctest::Approx(2.0 / 16.0));
  CHECK(e1_rate(gt, pred) == e1_rate(pred, gt));  // XOR symmetry

  SUBCASE("batch averages per-image rates") {
    const BinaryMask a = random_mask(rng, 8, 8, 0.4);
    const BinaryMask b = random_mask(rng, 8, 8, 0.4);
    BinaryMask a_pred = a;
    a_pred.set(0, 0, !a_pred.get(0, 0));
    const double batch = batch_e1({{a, a_pred}, {b, b}});
    CHECK(batch == doctest::Approx(0.5 * e1_rate(a, a_pred)));
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS_AS(e1_rate(BinaryMask(3, 3), BinaryMask(4, 3)), ShapeError);
  }
}

TEST_CASE("e2") {
  SUBCASE("exact confusion cases") {
    BinaryMask gt(4, 4);
    for (int y = 0; y < 2; ++y)
      for (int x = 0; x < 4; ++x) gt.set(x, y, true);  // top half foreground
    CHECK(e2_rate(gt, gt) == 0.0);
    CHECK(e2_rate(gt, BinaryMask(4, 4, true)) == doctest::Approx(0.5));
    CHECK(e2_rate(gt, invert(gt)) == doctest::Approx(1.0));
  }
  SUBCASE("degenerate ground truths contribute zero for the undefined term") {
    const BinaryMask gt_empty(4, 4);
    const BinaryMask gt_full(4, 4, true);
    BinaryMask half(4, 4);
    for (int x = 0; x < 4; ++x) half.set(x, 0, true);
    // No positives: fnr undefined -> 0; fpr = 4/16.
    CHECK(e2_rate(gt_empty, half) == doctest::Approx(0.5 * 4.0 / 16.0));
    // No negatives: fpr undefined -> 0; fnr = 12/16.
    CHECK(e2_rate(gt_full, half) == doctest::Approx(0.5 * 12.0 / 16.0));
  }
  SUBCASE("batch averages per-image rates") {
    Rng rng(86);
    const BinaryMask a = random_mask(rng, 8, 8, 0.5);
    const BinaryMask b = random_mask(rng, 8, 8, 0.5);
    const BinaryMask pa = random_mask(rng, 8, 8, 0.5);
    CHECK(batch_e2({{a, pa}, {b, b}}) ==
          doctest::Approx(0.5 * e2_rate(a, pa)));
  }
}

TEST_CASE("f1 and miou") {
  SUBCASE("perfect prediction") {
    Rng rng(82);
    const BinaryMask gt = random_mask(rng, 6, 6, 0.5);
    CHECK(f1_score(gt, gt) == 1.0);
    CHECK(miou_score(gt, gt) == 1.0);
  }
  SUBCASE("empty prediction against non-empty truth") {
    BinaryMask gt(4, 4);
    gt.set(1, 1, true);
    CHECK(f1_score(gt, BinaryMask(4, 4)) == 0.0);
  }
  SUBCASE("half-overlap arithmetic") {
    BinaryMask gt(8, 4), pred(8, 4);
    for (int x = 0; x < 8; ++x) gt.set(x, 0, true);       // 8 px row 0
    for (int x = 4; x < 8; ++x) pred.set(x, 0, true);     // 4 overlap
    for (int x = 0; x < 4; ++x) pred.set(x, 1, true);     // 4 disjoint
    CHECK(f1_score(gt, pred) == doctest::Approx(0.5));
    // IoU fg = 4 / 12.
    const double iou_fg = 4.0 / 12.0;
    const double iou_bg = 20.0 / 28.0;
    CHECK(miou_score(gt, pred) == doctest::Approx((iou_fg + iou_bg) / 2.0));
  }
  SUBCASE("both empty counts as perfect") {
    CHECK(f1_score(BinaryMask(3, 3), BinaryMask(3, 3)) == 1.0);
    CHECK(miou_score(BinaryMask(3, 3), BinaryMask(3, 3)) == 1.0);
  }
}

TEST_CASE("segmentation metrics agree with the confusion-matrix oracle") {
  Rng rng(83);
  for (int trial = 0; trial < 200; ++trial) {
    const BinaryMask gt = random_mask(rng, 16, 16, rng.uniform(0.1, 0.9));
    const BinaryMask pred = random_mask(rng, 16, 16, rng.uniform(0.1, 0.9));
    const auto o = oracle::seg_metrics_oracle(gt, pred);
    CHECK(e1_rate(gt, pred) == o.e1);
    CHECK(e2_rate(gt, pred) == o.e2);
    CHECK(f1_score(gt, pred) == o.f1);
    CHECK(miou_score(gt, pred) == o.miou);
  }
}

TEST_CASE("hausdorff") {
  SUBCASE("identical sets are at distance zero") {
    const std::vector<Vec2> pts = {{0.0, 0.0}, {1.0, 2.0}, {5.0, 5.0}};
    CHECK(hausdorff(pts, pts) == 0.0);
  }
  SUBCASE("concentric dense circles differ by the radius gap") {
    const Circle a{0.0, 0.0, 10.0};
    const Circle b{0.0, 0.0, 12.0};
    const double d = hausdorff(densify_circle(a), densify_circle(b));
    CHECK(d == doctest::Approx(2.0).epsilon(0.01));
  }
  SUBCASE("singletons reduce to the Euclidean distance") {
    CHECK(hausdorff({{0.0, 0.0}}, {{3.0, 4.0}}) == doctest::Approx(5.0));
  }
  SUBCASE("symmetric and equal to brute force on random sets") {
    Rng rng(84);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Vec2> a, b;
      const int na = rng.uniform_int(1, 100);
      const int nb = rng.uniform_int(1, 100);
      for (int i = 0; i < na; ++i)
        a.push_back({rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)});
      for (int i = 0; i < nb; ++i)
        b.push_back({rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)});
      const double got = hausdorff(a, b);
      CHECK(got == oracle::brute_force_hausdorff(a, b));
      CHECK(got == hausdorff(b, a));
    }
  }
  SUBCASE("empty set is an error") {
    CHECK_THROWS_AS(hausdorff({}, {{1.0, 1.0}}), ConfigError);
  }
}

TEST_CASE("success_curve") {
  const std::vector<double> errors = {1.0, 2.0, 3.0};
  SUBCASE("counting") {
    const auto curve = success_curve(errors, {2.0});
    CHECK(curve[0].second == doctest::Approx(2.0 / 3.0));
  }
  SUBCASE("extremes") {
    CHECK(success_curve(errors, {0.5})[0].second == 0.0);
    CHECK(success_curve(errors, {3.0})[0].second == 1.0);
    CHECK(success_curve(errors, {100.0})[0].second == 1.0);
  }
  SUBCASE("monotone and bounded over the default grid") {
    Rng rng(85);
    std::vector<double> errs;
    for (int i = 0; i < 40; ++i) errs.push_back(rng.uniform(0.0, 40.0));
    const auto curve = success_curve(errs, default_hd_thresholds());
    for (std::size_t i = 0; i < curve.size(); ++i) {
      CHECK(curve[i].second >= 0.0);
      CHECK(curve[i].second <= 1.0);
      if (i > 0) CHECK(curve[i].second >= curve[i - 1].second);
    }
  }
  SUBCASE("unsorted thresholds are rejected") {
    CHECK_THROWS_AS(success_curve(errors, {3.0, 1.0}), ConfigError);
  }
}

TEST_CASE("aggregate") {
  PerImageScores a{"a", 0.1, 0.05, 0.9, 0.8, 1.0, 2.0};
  PerImageScores b{"b", 0.3, 0.15, 0.7, 0.6, 3.0, 4.0};
  SUBCASE("single row aggregates to itself") {
    const EvalReport r = aggregate({a});
    CHECK(r.seg.e1 == a.e1);
    CHECK(r.seg.f1_mean == a.f1);
    CHECK(r.seg.f1_std == 0.0);
    CHECK(r.loc.mhdis_overall == doctest::Approx(1.5));
  }
  SUBCASE("two rows average") {
    const EvalReport r = aggregate({a, b});
    CHECK(r.seg.e1 == doctest::Approx(0.2));
    CHECK(r.loc.mhdis_inner == doctest::Approx(2.0));
    CHECK(r.loc.mhdis_outer == doctest::Approx(3.0));
    CHECK(r.loc.mhdis_overall == doctest::Approx(2.5));
    // Aggregates recompute from the stored rows.
    double e1 = 0.0;
    for (const auto& row : r.per_image) e1 += row.e1;
    CHECK(r.seg.e1 == doctest::Approx(e1 / r.per_image.size()));
  }
  SUBCASE("identical rows have zero deviation") {
    const EvalReport r = aggregate({a, a, a});
    CHECK(r.seg.f1_std == doctest::Approx(0.0));
  }
  SUBCASE("empty input throws") {
    CHECK_THROWS_AS(aggregate({}), ConfigError);
  }
  SUBCASE("report files are written") {
    const std::string dir = oracle::make_temp_dir("report");
    const EvalReport r = aggregate({a, b});
    write_report_csv(dir + "/report.csv", r);
    write_report_json(dir + "/report.json", r);
    write_curve_csv(dir + "/curve.csv", r.loc.success_curve);
    std::ifstream csv(dir + "/report.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "id,e1,e2,f1,iou,hd_inner,hd_outer");
    int lines = 1;
    std::string line;
    while (std::getline(csv, line)) ++lines;
    CHECK(lines == 4);  // header + 2 rows + aggregate
    std::filesystem::remove_all(dir);
  }
}
