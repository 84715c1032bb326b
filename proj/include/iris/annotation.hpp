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

#ifndef IRIS_ANNOTATION_HPP_
#define IRIS_ANNOTATION_HPP_

#include <optional>
#include <string>

#include "iris/image.hpp"

namespace iris {

// Ellipse form used by externally produced annotations.
struct Ellipse {
  double cx = 0.0, cy = 0.0;
  double a = 0.0, b = 0.0;  // semi-axes
  double phi = 0.0;         // rotation, radians
};

// Per-image ground-truth/result record: pupil center, the two circles, and a
// relative path to the mask image. Numeric fields round-trip exactly.
struct Annotation {
  std::string id;
  Vec2 pupil_center;
  Circle inner;
  Circle outer;
  std::string mask_path;
  std::optional<Ellipse> inner_ellipse;
  std::optional<Ellipse> outer_ellipse;
};

void write_annotation(const std::string& path, const Annotation& ann);
Annotation read_annotation(const std::string& path);

}  // namespace iris

#endif  // IRIS_ANNOTATION_HPP_
