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

#include "iris/localize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace iris {

Vec2 PolarContour::point(int k) const {
  const double theta = 2.0 * std::numbers::pi * k / n_angles;
  return {center.x + radii[k] * std::cos(theta),
          center.y + radii[k] * std::sin(theta)};
}

namespace {

Circle mask_circumcircle(const ProbMapSet& maps, const LocalizeParams& params,
                         const Region** out_region,
                         std::vector<Region>* storage) {
  const BinaryMask mask_bin =
      threshold_window(maps.mask, params.mask_lo, params.mask_hi);
  *storage = connected_components(mask_bin);
  if (storage->empty())
    throw NoIrisError("no mask region above the confidence threshold");
  const Region& biggest = max_area_region(*storage);
  if (out_region) *out_region = &biggest;
  std::vector<Vec2> pts;
  pts.reserve(biggest.pixels.size());
  for (const PixelCoord& p : biggest.pixels)
    pts.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
  return min_enclosing_circle(pts);
}

}  // namespace

Vec2 locate_pupil_center(const ProbMapSet& maps, const LocalizeParams& params) {
  maps.validate();
  std::vector<Region> mask_regions;
  const Circle circum = mask_circumcircle(maps, params, nullptr, &mask_regions);

  const BinaryMask center_bin =
      threshold_window(maps.pupil_center, params.center_lo, params.center_hi);
  const std::vector<Region> candidates = connected_components(center_bin);
  if (candidates.empty()) {
    // No center evidence; the mask circumcircle center is the best guess.
    return circum.center();
  }
  const Region* best = nullptr;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const Region& r : candidates) {
    const double d = distance(r.centroid, circum.center());
    if (d < best_dist) {
      best_dist = d;
      best = &r;
    }
  }
  return best->centroid;
}

namespace {

struct RadialSpan {
  double min_d = std::numeric_limits<double>::infinity();
  double max_d = 0.0;
};

RadialSpan region_span(const Region& region, const Vec2& center) {
  RadialSpan span;
  for (const PixelCoord& p : region.pixels) {
    const double d = std::hypot(p.x - center.x, p.y - center.y);
    span.min_d = std::min(span.min_d, d);
    span.max_d = std::max(span.max_d, d);
  }
  return span;
}

// Keeps a component iff `keep` approves its radial span; surviving pixels
// retain their original probabilities.
GrayImage filter_components(const GrayImage& map, const BinaryMask& bin,
                            const Vec2& center,
                            const std::function<bool(const RadialSpan&)>& keep,
                            RadialSpan* surviving) {
  GrayImage out(map.width(), map.height(), 0.0);
  for (const Region& region : connected_components(bin)) {
    const RadialSpan span = region_span(region, center);
    if (!keep(span)) continue;
    surviving->min_d = std::min(surviving->min_d, span.min_d);
    surviving->max_d = std::max(surviving->max_d, span.max_d);
    for (const PixelCoord& p : region.pixels)
      out.at(p.x, p.y) = map.at(p.x, p.y);
  }
  return out;
}

}  // namespace

DenoiseResult denoise_and_range(const ProbMapSet& maps, const Vec2& pupil_center,
                                const LocalizeParams& params) {
  maps.validate();
  std::vector<Region> mask_regions;
  const Region* biggest = nullptr;
  mask_circumcircle(maps, params, &biggest, &mask_regions);
  const double enclosing_r = region_span(*biggest, pupil_center).max_d;

  DenoiseResult res;
  res.enclosing_radius = enclosing_r;

  const BinaryMask inner_bin = threshold_window(maps.inner_boundary,
                                                params.boundary_lo,
                                                params.boundary_hi);
  const BinaryMask outer_bin = threshold_window(maps.outer_boundary,
                                                params.boundary_lo,
                                                params.boundary_hi);

  RadialSpan inner_span, outer_span;
  res.denoised_inner = filter_components(
      maps.inner_boundary, inner_bin, pupil_center,
      [&](const RadialSpan& s) { return s.min_d <= enclosing_r; },
      &inner_span);
  res.denoised_outer = filter_components(
      maps.outer_boundary, outer_bin, pupil_center,
      [&](const RadialSpan& s) {
        return s.min_d <= enclosing_r && s.max_d >= enclosing_r;
      },
      &outer_span);

  auto make_range = [&](const RadialSpan& span, double fallback_lo,
                        double fallback_hi) {
    BoundaryRange range;
    range.center = pupil_center;
    if (span.max_d >= span.min_d && span.max_d > 0.0) {
      range.r_min = std::max(1.0, span.min_d);
      range.r_max = std::max(range.r_min, span.max_d);
    } else {
      range.r_min = std::max(1.0, fallback_lo);
      range.r_max = std::max(range.r_min, fallback_hi);
    }
    return range;
  };
  res.inner_range = make_range(inner_span, 2.0, 0.8 * enclosing_r);
  res.outer_range = make_range(outer_span, 0.5 * enclosing_r, 1.2 * enclosing_r);
  return res;
}

PolarContour viterbi_contour(const GrayImage& boundary,
                             const BoundaryRange& range, int n_angles,
                             double delta) {
  if (n_angles < 8) throw ConfigError("viterbi_contour: n_angles < 8");
  if (delta < 1.0) throw ConfigError("viterbi_contour: delta < 1");
  if (!(range.r_min > 0.0) || range.r_min > range.r_max)
    throw ConfigError("viterbi_contour: invalid radial range");

  PolarContour contour;
  contour.center = range.center;
  contour.n_angles = n_angles;

  const int r_lo = static_cast<int>(std::ceil(range.r_min));
  const int r_hi = static_cast<int>(std::floor(range.r_max));
  if (r_lo > r_hi) {
    contour.radii.assign(n_angles, 0.5 * (range.r_min + range.r_max));
    return contour;
  }
  const int n_radii = r_hi - r_lo + 1;
  if (n_radii == 1) {
    contour.radii.assign(n_angles, static_cast<double>(r_lo));
    return contour;
  }
  const int step = static_cast<int>(std::floor(delta));

  // Emission table: log probability of the boundary map along each ray.
  std::vector<double> emission(static_cast<std::size_t>(n_angles) * n_radii);
  for (int k = 0; k < n_angles; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n_angles;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (int i = 0; i < n_radii; ++i) {
      const double r = r_lo + i;
      const double v = bilinear_at(boundary, range.center.x + r * c,
                                   range.center.y + r * s);
      emission[static_cast<std::size_t>(k) * n_radii + i] = std::log(v + 1e-6);
    }
  }
  auto em = [&](int k, int i) {
    return emission[static_cast<std::size_t>(k) * n_radii + i];
  };

  const double neg_inf = -std::numeric_limits<double>::infinity();
  double best_total = neg_inf;
  std::vector<double> dp(n_radii), ndp(n_radii);
  std::vector<int> back(static_cast<std::size_t>(n_angles) * n_radii);
  std::vector<int> best_path(n_angles), path(n_angles);

  // One pass per start radius with the last step constrained back to the
  // start; the union over starts covers every closed path exactly.
  for (int start = 0; start < n_radii; ++start) {
    std::fill(dp.begin(), dp.end(), neg_inf);
    dp[start] = em(0, start);
    for (int k = 1; k < n_angles; ++k) {
      for (int i = 0; i < n_radii; ++i) {
        double best_prev = neg_inf;
        int best_j = -1;
        const int j_lo = std::max(0, i - step);
        const int j_hi = std::min(n_radii - 1, i + step);
        for (int j = j_lo; j <= j_hi; ++j) {
          if (dp[j] > best_prev) {
            best_prev = dp[j];
            best_j = j;
          }
        }
        ndp[i] = best_prev == neg_inf ? neg_inf : best_prev + em(k, i);
        back[static_cast<std::size_t>(k) * n_radii + i] = best_j;
      }
      dp.swap(ndp);
    }
    // Close the loop: the final radius must sit within delta of the start.
    double total = neg_inf;
    int end = -1;
    const int e_lo = std::max(0, start - step);
    const int e_hi = std::min(n_radii - 1, start + step);
    for (int i = e_lo; i <= e_hi; ++i) {
      if (dp[i] > total) {
        total = dp[i];
        end = i;
      }
    }
    if (end < 0 || total <= best_total) continue;
    best_total = total;
    int node = end;
    for (int k = n_angles - 1; k >= 0; --k) {
      path[k] = node;
      if (k > 0) node = back[static_cast<std::size_t>(k) * n_radii + node];
    }
    best_path = path;
  }

  contour.radii.resize(n_angles);
  for (int k = 0; k < n_angles; ++k)
    contour.radii[k] = static_cast<double>(r_lo + best_path[k]);
  return contour;
}

Circle fit_circle(const std::vector<Vec2>& points) {
  if (points.size() < 3)
    throw GeometryError("fit_circle: need at least 3 points");
  const double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const Vec2& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;

  // Centered Kasa reduction: with sum(u) = sum(v) = 0 the 3x3 normal
  // equations for (A, B, C) collapse to this 2x2 system for the center.
  double suu = 0.0, svv = 0.0, suv = 0.0, suuu = 0.0, svvv = 0.0;
  double suvv = 0.0, svuu = 0.0;
  for (const Vec2& p : points) {
    const double u = p.x - mx;
    const double v = p.y - my;
    suu += u * u;
    svv += v * v;
    suv += u * v;
    suuu += u * u * u;
    svvv += v * v * v;
    suvv += u * v * v;
    svuu += v * u * u;
  }
  const double det = suu * svv - suv * suv;
  const double trace = suu + svv;
  // Symmetric PSD 2x2: eigenvalues from the characteristic polynomial give a
  // direct condition estimate.
  const double mid = 0.5 * trace;
  const double disc = std::sqrt(std::max(0.0, mid * mid - det));
  const double eig_max = mid + disc;
  const double eig_min = mid - disc;
  if (!(eig_min > 0.0) || eig_max / eig_min > 1e12)
    throw GeometryError("fit_circle: degenerate (collinear) geometry");

  const double rhs_u = 0.5 * (suuu + suvv);
  const double rhs_v = 0.5 * (svvv + svuu);
  const double uc = (rhs_u * svv - rhs_v * suv) / det;
  const double vc = (rhs_v * suu - rhs_u * suv) / det;

  Circle c;
  c.cx = mx + uc;
  c.cy = my + vc;
  c.r = std::sqrt(uc * uc + vc * vc + trace / n);
  return c;
}

Circle fit_circle(const PolarContour& contour) {
  std::vector<Vec2> pts;
  pts.reserve(contour.n_angles);
  for (int k = 0; k < contour.n_angles; ++k) pts.push_back(contour.point(k));
  return fit_circle(pts);
}

LocalizationResult localize(const ProbMapSet& maps,
                            const LocalizeParams& params) {
  maps.validate();
  LocalizationResult res;
  res.pupil_center = locate_pupil_center(maps, params);
  DenoiseResult den = denoise_and_range(maps, res.pupil_center, params);
  res.denoised_inner = std::move(den.denoised_inner);
  res.denoised_outer = std::move(den.denoised_outer);
  res.inner_contour = viterbi_contour(res.denoised_inner, den.inner_range,
                                      params.n_angles, params.delta);
  res.outer_contour = viterbi_contour(res.denoised_outer, den.outer_range,
                                      params.n_angles, params.delta);
  res.inner = fit_circle(res.inner_contour);
  res.outer = fit_circle(res.outer_contour);
  if (res.inner.r >= res.outer.r)
    throw GeometryError("localize: inner radius >= outer radius");
  for (const Circle& c : {res.inner, res.outer}) {
    if (c.cx < 0.0 || c.cx >= maps.width() || c.cy < 0.0 ||
        c.cy >= maps.height())
      throw GeometryError("localize: fitted center outside the image");
  }
  return res;
}

}  // namespace iris
