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

#include "iris/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace iris {

void CorruptionSpec::validate() const {
  if (edge_width < 0) throw ConfigError("synth: edge_width < 0");
  if (blob_count < 0) throw ConfigError("synth: blob_count < 0");
  if (blob_intensity < 0.0 || blob_intensity > 1.0)
    throw ConfigError("synth: blob_intensity outside [0,1]");
  if (map_noise_sigma < 0.0) throw ConfigError("synth: negative noise sigma");
  if (occlusion_fraction < 0.0 || occlusion_fraction > 1.0)
    throw ConfigError("synth: occlusion_fraction outside [0,1]");
}

void SynthSpec::validate() const {
  corruption.validate();
  if (width < 16 || height < 16) throw ConfigError("synth: image too small");
  if (!(inner_r > 0.0) || inner_r >= outer_r)
    throw ConfigError("synth: need 0 < inner_r < outer_r");
  const double margin = 2.0;
  if (pupil_center.x - outer_r < margin ||
      pupil_center.x + outer_r > width - 1 - margin ||
      pupil_center.y - outer_r < margin ||
      pupil_center.y + outer_r > height - 1 - margin)
    throw ConfigError("synth: outer circle too close to the image border");
}

namespace {

struct TextureParams {
  double radial_freq, radial_phase, a1;
  double angular_k2, phase2, a2;
  double angular_k3, phase3, radial_slope3, a3;
};

TextureParams draw_texture_params(Rng& rng) {
  TextureParams t;
  t.radial_freq = rng.uniform(0.15, 0.5);
  t.radial_phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  t.a1 = rng.uniform(0.08, 0.14);
  t.angular_k2 = rng.uniform_int(12, 44);
  t.phase2 = rng.uniform(0.0, 2.0 * std::numbers::pi);
  t.a2 = rng.uniform(0.10, 0.16);
  t.angular_k3 = rng.uniform_int(12, 44);
  t.phase3 = rng.uniform(0.0, 2.0 * std::numbers::pi);
  t.radial_slope3 = rng.uniform(0.05, 0.25);
  t.a3 = rng.uniform(0.10, 0.16);
  return t;
}

double texture_value(const TextureParams& t, double r, double theta) {
  return 0.5 + t.a1 * std::sin(t.radial_freq * r + t.radial_phase) +
         t.a2 * std::sin(t.angular_k2 * theta + t.phase2) +
         t.a3 * std::sin(t.angular_k3 * theta + t.radial_slope3 * r + t.phase3);
}

// Boundary band of half-width 0.5 + edge_width, valued 1.0 on the circle
// itself and sloping to 0.75 at the band edge. The crest mimics a detector
// peaking at the true boundary, and the whole band clears the denoising
// threshold window.
GrayImage boundary_band(int w, int h, const Circle& c, int edge_width) {
  GrayImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double off = std::abs(std::hypot(x - c.cx, y - c.cy) - c.r);
      if (off <= 0.5) {
        img.at(x, y) = 1.0;
      } else if (off <= 0.5 + edge_width) {
        img.at(x, y) = 0.95 - 0.2 * (off - 0.5) / edge_width;
      }
    }
  }
  return img;
}

GrayImage mask_to_map(const BinaryMask& m) {
  GrayImage img(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) img.at(x, y) = m.get(x, y) ? 1.0 : 0.0;
  return img;
}

void stamp_blob(GrayImage& map, double bx, double by, int radius,
                double intensity) {
  for (int y = std::max(0, static_cast<int>(by) - radius);
       y <= std::min(map.height() - 1, static_cast<int>(by) + radius); ++y) {
    for (int x = std::max(0, static_cast<int>(bx) - radius);
         x <= std::min(map.width() - 1, static_cast<int>(bx) + radius); ++x) {
      if (std::hypot(x - bx, y - by) <= radius)
        map.at(x, y) = std::max(map.at(x, y), intensity);
    }
  }
}

void add_noise(GrayImage& map, Rng& rng, double sigma) {
  for (double& v : map.data())
    v = std::clamp(v + rng.normal(0.0, sigma), 0.0, 1.0);
}

SynthCase generate_with_rotation(const SynthSpec& spec, double angle_offset) {
  spec.validate();
  const int w = spec.width;
  const int h = spec.height;
  const Vec2 c = spec.pupil_center;
  Rng rng(spec.texture_seed);

  const TextureParams tex = draw_texture_params(rng);

  // Sensor-style pixel noise, fixed in image coordinates.
  std::vector<double> pixel_noise(static_cast<std::size_t>(w) * h);
  for (double& v : pixel_noise) v = rng.normal(0.0, 0.03);

  GrayImage image(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double r = std::hypot(x - c.x, y - c.y);
      const double theta = std::atan2(y - c.y, x - c.x) - angle_offset;
      const double v = texture_value(tex, r, theta) +
                       pixel_noise[static_cast<std::size_t>(y) * w + x];
      image.at(x, y) = std::clamp(v, 0.0, 1.0);
    }
  }

  // Ground truth: annulus mask with an optional upper-lid chord cut.
  GroundTruth gt;
  gt.inner = {c.x, c.y, spec.inner_r};
  gt.outer = {c.x, c.y, spec.outer_r};
  gt.pupil_center = c;
  gt.mask = BinaryMask(w, h);
  const double chord_y =
      c.y - (1.0 - 2.0 * spec.corruption.occlusion_fraction) * spec.outer_r;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double d = std::hypot(x - c.x, y - c.y);
      const bool in_annulus = d > spec.inner_r && d < spec.outer_r;
      const bool occluded = y < chord_y;
      gt.mask.set(x, y, in_annulus && !occluded);
    }
  }

  // Idealized maps, then corruption.
  ProbMapSet maps;
  maps.mask = mask_to_map(gt.mask);
  maps.inner_boundary = boundary_band(w, h, gt.inner, spec.corruption.edge_width);
  maps.outer_boundary = boundary_band(w, h, gt.outer, spec.corruption.edge_width);
  BinaryMask center_px(w, h);
  const int cxi = static_cast<int>(std::lround(c.x));
  const int cyi = static_cast<int>(std::lround(c.y));
  if (center_px.in_bounds(cxi, cyi)) center_px.set(cxi, cyi, true);
  maps.pupil_center = mask_to_map(dilate_disk(center_px, 3));

  // Spurious blobs on the point/edge maps. A keep-out zone around the pupil
  // center stops blobs from merging with the true center disk.
  for (GrayImage* target :
       {&maps.pupil_center, &maps.inner_boundary, &maps.outer_boundary}) {
    for (int b = 0; b < spec.corruption.blob_count; ++b) {
      double bx = 0.0, by = 0.0;
      const int radius = rng.uniform_int(2, 4);
      do {
        bx = rng.uniform(2.0, w - 3.0);
        by = rng.uniform(2.0, h - 3.0);
      } while (std::hypot(bx - c.x, by - c.y) < spec.inner_r + radius + 2.0);
      stamp_blob(*target, bx, by, radius, spec.corruption.blob_intensity);
    }
  }
  if (spec.corruption.map_noise_sigma > 0.0) {
    add_noise(maps.pupil_center, rng, spec.corruption.map_noise_sigma);
    add_noise(maps.mask, rng, spec.corruption.map_noise_sigma);
    add_noise(maps.inner_boundary, rng, spec.corruption.map_noise_sigma);
    add_noise(maps.outer_boundary, rng, spec.corruption.map_noise_sigma);
  }

  SynthCase out;
  out.image = std::move(image);
  out.gt = std::move(gt);
  out.maps = std::move(maps);
  return out;
}

}  // namespace

SynthCase generate(const SynthSpec& spec) {
  return generate_with_rotation(spec, 0.0);
}

std::pair<SynthCase, SynthCase> make_rotated_pair(const SynthSpec& spec,
                                                  double degrees) {
  if (std::abs(degrees) > 20.0)
    throw ConfigError("make_rotated_pair: |degrees| > 20");
  const double rad = degrees * std::numbers::pi / 180.0;
  return {generate_with_rotation(spec, 0.0),
          generate_with_rotation(spec, rad)};
}

SynthSpec random_spec(Rng& rng, int width, int height) {
  SynthSpec spec;
  spec.width = width;
  spec.height = height;
  const double max_outer = 0.5 * std::min(width, height) - 6.0;
  spec.outer_r = rng.uniform(0.7 * max_outer, max_outer);
  spec.inner_r = rng.uniform(0.3 * spec.outer_r, 0.5 * spec.outer_r);
  const double slack_x = 0.5 * width - spec.outer_r - 4.0;
  const double slack_y = 0.5 * height - spec.outer_r - 4.0;
  spec.pupil_center = {0.5 * width + rng.uniform(-slack_x, slack_x),
                       0.5 * height + rng.uniform(-slack_y, slack_y)};
  spec.texture_seed = rng.next_u64();
  return spec;
}

}  // namespace iris
