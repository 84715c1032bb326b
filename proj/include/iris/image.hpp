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

#ifndef IRIS_IMAGE_HPP_
#define IRIS_IMAGE_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

#include "iris/error.hpp"

namespace iris {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct Circle {
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;  // must stay > 0

  Vec2 center() const { return {cx, cy}; }
};

// Single-channel probability image. Values live in [0,1]; an 8-bit view
// (round(255 * v)) is exposed for threshold windows stated in 0-255 units.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, double fill = 0.0);
  static GrayImage from_data(int width, int height, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }

  double at(int x, int y) const { return data_[idx(x, y)]; }
  double& at(int x, int y) { return data_[idx(x, y)]; }
  std::uint8_t byte_at(int x, int y) const {
    return static_cast<std::uint8_t>(std::lround(255.0 * data_[idx(x, y)]));
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// Bilinear sample with zero outside the image.
double bilinear_at(const GrayImage& img, double x, double y);

class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, bool fill = false);

  int width() const { return width_; }
  int height() const { return height_; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }

  bool get(int x, int y) const { return bits_[idx(x, y)] != 0; }
  void set(int x, int y, bool v) { bits_[idx(x, y)] = v ? 1 : 0; }

  std::size_t count() const;
  bool same_shape(const BinaryMask& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

 private:
  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct PixelCoord {
  int x = 0;
  int y = 0;
};

// One 8-connected foreground component.
struct Region {
  int label = 0;
  std::vector<PixelCoord> pixels;
  std::size_t area = 0;
  Vec2 centroid;
};

// Bits set where lo <= round(255*v) <= hi. Throws ConfigError when lo > hi.
BinaryMask threshold_window(const GrayImage& img, int lo, int hi);

// 8-connected components, ordered by decreasing area; ties broken by the
// smaller (y, x) of the first pixel in scan order. Labels follow that order.
std::vector<Region> connected_components(const BinaryMask& mask);

// Largest-area region; ties resolve to the earliest label. Throws NoIrisError
// on an empty list.
const Region& max_area_region(const std::vector<Region>& regions);

// Smallest circle containing every point, exact to ~1e-6 px. A single point
// yields its location with radius clamped to 1e-9 so the r > 0 invariant holds.
Circle min_enclosing_circle(const std::vector<Vec2>& points);

// Morphological dilation with the disk {(dx,dy) : dx^2+dy^2 <= radius^2}.
// radius 0 is the identity.
BinaryMask dilate_disk(const BinaryMask& mask, int radius);

}  // namespace iris

#endif  // IRIS_IMAGE_HPP_
