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

#include "iris/image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "iris/rng.hpp"

namespace iris {

GrayImage::GrayImage(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) throw ShapeError("negative image dimensions");
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage GrayImage::from_data(int width, int height,
                               std::vector<double> data) {
  if (width < 0 || height < 0) throw ShapeError("negative image dimensions");
  if (data.size() != static_cast<std::size_t>(width) * height)
    throw ShapeError("pixel buffer does not match width*height");
  for (double v : data) {
    if (!(v >= 0.0 && v <= 1.0))
      throw ShapeError("gray value outside [0,1]");
  }
  GrayImage img;
  img.width_ = width;
  img.height_ = height;
  img.data_ = std::move(data);
  return img;
}

double bilinear_at(const GrayImage& img, double x, double y) {
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;
  auto sample = [&](int xi, int yi) -> double {
    return img.in_bounds(xi, yi) ? img.at(xi, yi) : 0.0;
  };
  const double top = (1.0 - fx) * sample(x0, y0) + fx * sample(x0 + 1, y0);
  const double bot = (1.0 - fx) * sample(x0, y0 + 1) + fx * sample(x0 + 1, y0 + 1);
  return (1.0 - fy) * top + fy * bot;
}

BinaryMask::BinaryMask(int width, int height, bool fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) throw ShapeError("negative mask dimensions");
  bits_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

std::size_t BinaryMask::count() const {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

BinaryMask threshold_window(const GrayImage& img, int lo, int hi) {
  if (lo > hi) throw ConfigError("threshold window lo > hi");
  if (lo < 0 || hi > 255) throw ConfigError("threshold window outside [0,255]");
  BinaryMask out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const int b = img.byte_at(x, y);
      out.set(x, y, b >= lo && b <= hi);
    }
  }
  return out;
}

std::vector<Region> connected_components(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<Region> regions;
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(w) * h, 0);
  std::vector<PixelCoord> stack;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (!mask.get(x, y) || visited[i]) continue;

      Region region;
      stack.clear();
      stack.push_back({x, y});
      visited[i] = 1;
      double sx = 0.0, sy = 0.0;
      while (!stack.empty()) {
        const PixelCoord p = stack.back();
        stack.pop_back();
        region.pixels.push_back(p);
        sx += p.x;
        sy += p.y;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const int nx = p.x + dx;
            const int ny = p.y + dy;
            if (!mask.in_bounds(nx, ny) || !mask.get(nx, ny)) continue;
            const std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
            if (visited[ni]) continue;
            visited[ni] = 1;
            stack.push_back({nx, ny});
          }
        }
      }
      region.area = region.pixels.size();
      region.centroid = {sx / region.area, sy / region.area};
      regions.push_back(std::move(region));
    }
  }

  // Scan order already fixes the first pixel of each region to its top-left.
  std::stable_sort(regions.begin(), regions.end(),
                   [](const Region& a, const Region& b) {
                     if (a.area != b.area) return a.area > b.area;
                     const PixelCoord& pa = a.pixels.front();
                     const PixelCoord& pb = b.pixels.front();
                     if (pa.y != pb.y) return pa.y < pb.y;
                     return pa.x < pb.x;
                   });
  for (std::size_t i = 0; i < regions.size(); ++i)
    regions[i].label = static_cast<int>(i);
  return regions;
}

const Region& max_area_region(const std::vector<Region>& regions) {
  if (regions.empty()) throw NoIrisError("no foreground regions");
  const Region* best = &regions.front();
  for (const Region& r : regions) {
    if (r.area > best->area) best = &r;
  }
  return *best;
}

namespace {

Circle circle_from_two(const Vec2& a, const Vec2& b) {
  Circle c;
  c.cx = 0.5 * (a.x + b.x);
  c.cy = 0.5 * (a.y + b.y);
  c.r = 0.5 * std::hypot(a.x - b.x, a.y - b.y);
  return c;
}

// Circumcircle; falls back to the widest two-point circle when nearly
// collinear.
Circle circle_from_three(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  const double scale = std::max({std::abs(bx), std::abs(by), std::abs(cx),
                                 std::abs(cy), 1.0});
  if (std::abs(d) < 1e-12 * scale * scale) {
    Circle best = circle_from_two(a, b);
    for (const Circle& cand : {circle_from_two(a, c), circle_from_two(b, c)}) {
      if (cand.r > best.r) best = cand;
    }
    return best;
  }
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const double ux = (cy * b2 - by * c2) / d;
  const double uy = (bx * c2 - cx * b2) / d;
  Circle out;
  out.cx = a.x + ux;
  out.cy = a.y + uy;
  out.r = std::hypot(ux, uy);
  return out;
}

bool inside(const Circle& c, const Vec2& p) {
  const double tol = 1e-10 * (1.0 + c.r);
  return std::hypot(p.x - c.cx, p.y - c.cy) <= c.r + tol;
}

}  // namespace

Circle min_enclosing_circle(const std::vector<Vec2>& points) {
  if (points.empty()) throw GeometryError("min_enclosing_circle: no points");
  if (points.size() == 1) return {points[0].x, points[0].y, 1e-9};

  // Welzl's incremental scheme on a deterministically shuffled copy.
  std::vector<Vec2> pts = points;
  Rng rng(0x9e3779b97f4a7c15ull);
  rng.shuffle(pts);

  Circle c = circle_from_two(pts[0], pts[1]);
  for (std::size_t i = 2; i < pts.size(); ++i) {
    if (inside(c, pts[i])) continue;
    c = {pts[i].x, pts[i].y, 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (inside(c, pts[j])) continue;
      c = circle_from_two(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (inside(c, pts[k])) continue;
        c = circle_from_three(pts[i], pts[j], pts[k]);
      }
    }
  }
  c.r = std::max(c.r, 1e-9);
  return c;
}

BinaryMask dilate_disk(const BinaryMask& mask, int radius) {
  if (radius < 0) throw ConfigError("dilate_disk: negative radius");
  if (radius == 0) return mask;

  std::vector<PixelCoord> offsets;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dx * dx + dy * dy <= radius * radius) offsets.push_back({dx, dy});
    }
  }

  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.get(x, y)) continue;
      for (const PixelCoord& o : offsets) {
        const int nx = x + o.x;
        const int ny = y + o.y;
        if (out.in_bounds(nx, ny)) out.set(nx, ny, true);
      }
    }
  }
  return out;
}

}  // namespace iris
