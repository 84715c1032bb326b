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

#ifndef IRIS_PROBMAP_HPP_
#define IRIS_PROBMAP_HPP_

#include "iris/image.hpp"
#include "iris/tensor.hpp"

namespace iris {

// The four aligned per-pixel probability maps the prediction head emits, in
// channel order: pupil center, segmentation mask, inner boundary, outer
// boundary.
struct ProbMapSet {
  GrayImage pupil_center;
  GrayImage mask;
  GrayImage inner_boundary;
  GrayImage outer_boundary;

  int width() const { return mask.width(); }
  int height() const { return mask.height(); }

  // Throws ShapeError unless all four maps share one size.
  void validate() const;

  // 4 x H x W tensor conversion; from_tensor clamps values into [0,1].
  Tensor to_tensor() const;
  static ProbMapSet from_tensor(const Tensor& t);
};

}  // namespace iris

#endif  // IRIS_PROBMAP_HPP_
