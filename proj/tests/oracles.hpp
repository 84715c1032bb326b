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

// Reference implementations kept deliberately naive and independent of the
// library code paths they check.

#ifndef IRIS_TESTS_ORACLES_HPP_
#define IRIS_TESTS_ORACLES_HPP_

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "iris/image.hpp"
#include "iris/localize.hpp"
#include "iris/tensor.hpp"

namespace iris::oracle {

// O(n^3): try every 2-point diameter circle and every 3-point circumcircle,
// keep the smallest that encloses all points.
inline Circle brute_force_enclosing_circle(const std::vector<Vec2>& pts) {
  auto contains_all = [&](const Circle& c) {
    for (const Vec2& p : pts)
      if (std::hypot(p.x - c.cx, p.y - c.cy) > c.r + 1e-9) return false;
    return true;
  };
  Circle best{0.0, 0.0, std::numeric_limits<double>::infinity()};
  auto consider = [&](const Circle& c) {
    if (c.r < best.r && contains_all(c)) best = c;
  };
  const std::size_t n = pts.size();
  if (n == 1) return {pts[0].x, pts[0].y, 1e-9};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      consider({0.5 * (pts[i].x + pts[j].x), 0.5 * (pts[i].y + pts[j].y),
                0.5 * std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y)});
      for (std::size_t k = j + 1; k < n; ++k) {
        const double bx = pts[j].x - pts[i].x, by = pts[j].y - pts[i].y;
        const double cx = pts[k].x - pts[i].x, cy = pts[k].y - pts[i].y;
        const double d = 2.0 * (bx * cy - by * cx);
        if (std::abs(d) < 1e-12) continue;
        const double b2 = bx * bx + by * by;
        const double c2 = cx * cx + cy * cy;
        const double ux = (cy * b2 - by * c2) / d;
        const double uy = (bx * c2 - cx * b2) / d;
        consider({pts[i].x + ux, pts[i].y + uy, std::hypot(ux, uy)});
      }
    }
  }
  return best;
}

// Union-find component labelling, 8-connected; returns pixel sets.
inline std::vector<std::set<std::pair<int, int>>> flood_components(
    const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<int> parent(static_cast<std::size_t>(w) * h);
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.get(x, y)) continue;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if ((dx == 0 && dy == 0) || !mask.in_bounds(nx, ny)) continue;
          if (mask.get(nx, ny)) unite(y * w + x, ny * w + nx);
        }
      }
    }
  }
  std::map<int, std::set<std::pair<int, int>>> by_root;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (mask.get(x, y)) by_root[find(y * w + x)].insert({x, y});
  std::vector<std::set<std::pair<int, int>>> out;
  for (auto& [root, pixels] : by_root) out.push_back(std::move(pixels));
  return out;
}

// Per-pixel confusion counts and the five segmentation metrics from them.
struct SegOracle {
  std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
  double e1 = 0.0, e2 = 0.0, f1 = 0.0, miou = 0.0;
};

inline SegOracle seg_metrics_oracle(const BinaryMask& gt,
                                    const BinaryMask& pred) {
  SegOracle o;
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      const bool g = gt.get(x, y), p = pred.get(x, y);
      o.tp += g && p;
      o.fp += !g && p;
      o.fn += g && !p;
      o.tn += !g && !p;
    }
  }
  const double total = static_cast<double>(gt.width()) * gt.height();
  o.e1 = static_cast<double>(o.fp + o.fn) / total;
  const double fpr = o.fp + o.tn == 0
                         ? 0.0
                         : static_cast<double>(o.fp) /
                               static_cast<double>(o.fp + o.tn);
  const double fnr = o.fn + o.tp == 0
                         ? 0.0
                         : static_cast<double>(o.fn) /
                               static_cast<double>(o.fn + o.tp);
  o.e2 = (fpr + fnr) / 2.0;
  if (o.tp + o.fn == 0 && o.tp + o.fp == 0) {
    o.f1 = 1.0;
  } else if (o.tp + o.fp == 0 || o.tp + o.fn == 0) {
    o.f1 = 0.0;
  } else {
    const double precision =
        static_cast<double>(o.tp) / static_cast<double>(o.tp + o.fp);
    const double recall =
        static_cast<double>(o.tp) / static_cast<double>(o.tp + o.fn);
    o.f1 = precision + recall == 0.0
               ? 0.0
               : 2.0 * precision * recall / (precision + recall);
  }
  auto iou = [](std::uint64_t inter, std::uint64_t uni) {
    return uni == 0 ? 1.0
                    : static_cast<double>(inter) / static_cast<double>(uni);
  };
  o.miou = (iou(o.tp, o.tp + o.fp + o.fn) + iou(o.tn, o.tn + o.fp + o.fn)) / 2.0;
  return o;
}

inline double brute_force_hausdorff(const std::vector<Vec2>& a,
                                    const std::vector<Vec2>& b) {
  double worst = 0.0;
  for (const Vec2& q : b) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const Vec2& p : a)
      nearest = std::min(nearest, std::hypot(p.x - q.x, p.y - q.y));
    worst = std::max(worst, nearest);
  }
  for (const Vec2& p : a) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const Vec2& q : b)
      nearest = std::min(nearest, std::hypot(p.x - q.x, p.y - q.y));
    worst = std::max(worst, nearest);
  }
  return worst;
}

// Exhaustive search over every radius sequence obeying the step and
// wrap-around constraints; scores accumulate left to right exactly like the
// dynamic program so optima compare bit-for-bit.
struct ViterbiOracleResult {
  double score = -std::numeric_limits<double>::infinity();
  std::vector<int> path;
};

inline void enumerate_paths(const std::vector<std::vector<double>>& emission,
                            int delta, std::vector<int>& partial, double score,
                            ViterbiOracleResult* best) {
  const int n = static_cast<int>(emission.size());
  const int k = static_cast<int>(partial.size());
  if (k == n) {
    if (std::abs(partial.back() - partial.front()) <= delta &&
        score > best->score) {
      best->score = score;
      best->path = partial;
    }
    return;
  }
  const int n_radii = static_cast<int>(emission[0].size());
  const int lo = k == 0 ? 0 : std::max(0, partial.back() - delta);
  const int hi = k == 0 ? n_radii - 1 : std::min(n_radii - 1, partial.back() + delta);
  for (int r = lo; r <= hi; ++r) {
    partial.push_back(r);
    enumerate_paths(emission, delta, partial, score + emission[k][r], best);
    partial.pop_back();
  }
}

inline ViterbiOracleResult exhaustive_viterbi(
    const GrayImage& boundary, const BoundaryRange& range, int n_angles,
    int delta) {
  const int r_lo = static_cast<int>(std::ceil(range.r_min));
  const int r_hi = static_cast<int>(std::floor(range.r_max));
  std::vector<std::vector<double>> emission(
      n_angles, std::vector<double>(r_hi - r_lo + 1));
  for (int k = 0; k < n_angles; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n_angles;
    for (int i = 0; i <= r_hi - r_lo; ++i) {
      const double r = r_lo + i;
      emission[k][i] = std::log(
          bilinear_at(boundary, range.center.x + r * std::cos(theta),
                      range.center.y + r * std::sin(theta)) +
          1e-6);
    }
  }
  ViterbiOracleResult best;
  std::vector<int> partial;
  enumerate_paths(emission, delta, partial, 0.0, &best);
  // The DP seeds with emission[0] rather than adding it along the way; redo
  // the winning score in that exact order for bitwise comparability.
  if (!best.path.empty()) {
    double s = 0.0;
    for (int k = 0; k < n_angles; ++k) s += emission[k][best.path[k]];
    best.score = s;
  }
  return best;
}

// Circumcircle of three points (assumed non-collinear).
inline Circle circumcircle(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const double ux = (cy * b2 - by * c2) / d;
  const double uy = (bx * c2 - cx * b2) / d;
  return {a.x + ux, a.y + uy, std::hypot(ux, uy)};
}

// Direct nested-loop dilated same-padding cross-correlation (no BN/ReLU).
inline Tensor conv_oracle(const Tensor& x, const ConvParams& p) {
  const int k = p.kernel;
  const int pad = (k - 1) * p.dilation / 2;
  Tensor out(p.out_channels, x.height(), x.width());
  for (int oc = 0; oc < p.out_channels; ++oc)
    for (int y = 0; y < x.height(); ++y)
      for (int xx = 0; xx < x.width(); ++xx) {
        double acc = p.bias[oc];
        for (int ic = 0; ic < p.in_channels; ++ic)
          for (int ky = 0; ky < k; ++ky)
            for (int kx = 0; kx < k; ++kx) {
              const int iy = y + ky * p.dilation - pad;
              const int ix = xx + kx * p.dilation - pad;
              if (iy < 0 || iy >= x.height() || ix < 0 || ix >= x.width())
                continue;
              acc += p.weights[((static_cast<std::size_t>(oc) * p.in_channels +
                                 ic) * k + ky) * k + kx] *
                     x.at(ic, iy, ix);
            }
        out.at(oc, y, xx) = acc;
      }
  return out;
}

// EER by a naive scan over all distinct thresholds with recounting, using the
// same FAR/FRR interpolation convention as the library.
inline double eer_oracle(std::vector<double> genuine,
                         std::vector<double> impostor) {
  std::vector<double> thresholds = genuine;
  thresholds.insert(thresholds.end(), impostor.begin(), impostor.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  auto rate_far = [&](double t) {
    std::size_t n = 0;
    for (double s : impostor) n += s <= t;
    return static_cast<double>(n) / impostor.size();
  };
  auto rate_frr = [&](double t) {
    std::size_t n = 0;
    for (double s : genuine) n += s > t;
    return static_cast<double>(n) / genuine.size();
  };
  double prev_far = 0.0, prev_frr = 1.0;
  for (double t : thresholds) {
    const double far = rate_far(t), frr = rate_frr(t);
    const double d = far - frr;
    if (d >= 0.0) {
      if (d == 0.0) return far;
      const double prev_d = prev_far - prev_frr;
      const double u = -prev_d / (d - prev_d);
      return prev_far + u * (far - prev_far);
    }
    prev_far = far;
    prev_frr = frr;
  }
  return 0.5;
}

// Unique scratch directory under the system temp root.
inline std::string make_temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("iriskit_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter.fetch_add(1)));
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace iris::oracle

#endif  // IRIS_TESTS_ORACLES_HPP_
