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

#include "iris/probmap.hpp"

#include <algorithm>

namespace iris {

void ProbMapSet::validate() const {
  const int w = mask.width();
  const int h = mask.height();
  for (const GrayImage* m :
       {&pupil_center, &inner_boundary, &outer_boundary}) {
    if (m->width() != w || m->height() != h)
      throw ShapeError("ProbMapSet: maps have differing sizes");
  }
}

Tensor ProbMapSet::to_tensor() const {
  validate();
  Tensor t(4, height(), width());
  const GrayImage* maps[4] = {&pupil_center, &mask, &inner_boundary,
                              &outer_boundary};
  for (int c = 0; c < 4; ++c)
    for (int y = 0; y < height(); ++y)
      for (int x = 0; x < width(); ++x) t.at(c, y, x) = maps[c]->at(x, y);
  return t;
}

ProbMapSet ProbMapSet::from_tensor(const Tensor& t) {
  if (t.channels() != 4)
    throw ShapeError("ProbMapSet::from_tensor: expected 4 channels");
  ProbMapSet set;
  GrayImage* maps[4] = {&set.pupil_center, &set.mask, &set.inner_boundary,
                        &set.outer_boundary};
  for (int c = 0; c < 4; ++c) {
    GrayImage img(t.width(), t.height());
    for (int y = 0; y < t.height(); ++y)
      for (int x = 0; x < t.width(); ++x)
        img.at(x, y) = std::clamp(t.at(c, y, x), 0.0, 1.0);
    *maps[c] = std::move(img);
  }
  return set;
}

}  // namespace iris
