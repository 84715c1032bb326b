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

#ifndef IRIS_SYNTH_HPP_
#define IRIS_SYNTH_HPP_

#include <cstdint>
#include <utility>

#include "iris/image.hpp"
#include "iris/probmap.hpp"
#include "iris/rng.hpp"

namespace iris {

struct CorruptionSpec {
  int edge_width = 3;              // dilation radius for the boundary rings
  int blob_count = 5;              // spurious blobs per point/edge map
  double blob_intensity = 0.9;
  double map_noise_sigma = 0.05;   // additive Gaussian, clamped to [0,1]
  double occlusion_fraction = 0.0; // upper-lid chord cut of the mask

  void validate() const;
};

struct SynthSpec {
  int width = 200;
  int height = 160;
  Vec2 pupil_center = {100.0, 80.0};
  double inner_r = 18.0;
  double outer_r = 45.0;
  std::uint64_t texture_seed = 1;
  CorruptionSpec corruption;

  void validate() const;
};

struct GroundTruth {
  BinaryMask mask;   // annulus minus the occlusion chord
  Circle inner;
  Circle outer;
  Vec2 pupil_center;
};

struct SynthCase {
  GrayImage image;
  GroundTruth gt;
  ProbMapSet maps;
};

// Deterministic synthetic eye: a banded radial/angular texture, exact
// ground-truth geometry, and idealized probability maps degraded per the
// corruption spec. Identical specs produce bit-identical results.
//
// Map construction: mask = annulus (minus occlusion); boundaries = bands of
// half-width 0.5 + edge_width around each circle, valued 1.0 on the circle
// and sloping to 0.75 at the band edge; pupil center = disk of radius 3.
// Corruption adds blob_count spurious disks to each point/edge map (never
// overlapping the true pupil-center disk) and Gaussian noise to all four maps.
SynthCase generate(const SynthSpec& spec);

// Same geometry and maps; the second image's texture is rotated about the
// pupil center by `degrees`. The pixel-noise field stays in image coordinates,
// mimicking sensor noise. |degrees| must be <= 20.
std::pair<SynthCase, SynthCase> make_rotated_pair(const SynthSpec& spec,
                                                  double degrees);

// Randomized geometry within safe margins for batch generation.
SynthSpec random_spec(Rng& rng, int width = 200, int height = 160);

}  // namespace iris

#endif  // IRIS_SYNTH_HPP_
