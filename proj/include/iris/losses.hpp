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

#ifndef IRIS_LOSSES_HPP_
#define IRIS_LOSSES_HPP_

#include <string>
#include <vector>

#include "iris/image.hpp"
#include "iris/probmap.hpp"

namespace iris {

struct LossConfig {
  double alpha = 0.95;    // focal weight, applied to every pixel
  double gamma = 2.0;     // focal exponent
  double lambda1 = 10.0;  // pupil-center task weight
  double lambda2 = 1.0;   // segmentation task weight
  double lambda3 = 1.0;   // boundary task weight
  double eps = 1e-7;      // probability clamp before logarithms

  void validate() const;
};

// Unconstrained per-pixel field used for gradients (GrayImage values are
// restricted to [0,1], derivatives are not).
struct GradImage {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  double at(int x, int y) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }
};

// Scalar loss plus dL/dp for each input probability map, in argument order.
struct LossResult {
  double value = 0.0;
  std::vector<GradImage> grads;
};

struct LossGroundTruth {
  BinaryMask pupil;
  BinaryMask mask;
  BinaryMask inner;
  BinaryMask outer;
};

// Focal loss sum_j -alpha*(1-q_j)^gamma*log(q_j), q_j = p_j where gt_j = 1 and
// 1-p_j elsewhere. Probabilities are clamped to [eps, 1-eps] first; gradients
// vanish on clamped pixels.
LossResult focal_loss(const GrayImage& p, const BinaryMask& gt,
                      const LossConfig& cfg);

// Plain per-pixel binary cross entropy over the segmentation map.
LossResult seg_bce_loss(const GrayImage& s, const BinaryMask& gt,
                        const LossConfig& cfg);

// Class-balanced cross entropy over the two boundary maps. beta_k is the
// fraction of non-edge pixels in ground-truth map k, computed per map so each
// boundary task is balanced independently.
LossResult edge_balanced_loss(const GrayImage& e1, const GrayImage& e2,
                              const BinaryMask& gt1, const BinaryMask& gt2,
                              const LossConfig& cfg);

// lambda1*focal(pupil) + lambda2*bce(mask) + lambda3*edge(inner, outer).
// Gradients come back in map order: pupil, mask, inner, outer.
LossResult joint_loss(const ProbMapSet& maps, const LossGroundTruth& gts,
                      const LossConfig& cfg);

// Finite-difference verification of all four analytic gradients on seeded
// random instances. rel_error = |analytic - numeric| / max(1, |numeric|),
// maximized over pixels; central differences with the given step. A nonzero
// `sabotage` offsets every analytic gradient and must trip the check.
struct GradCheckEntry {
  std::string loss;
  double max_rel_error = 0.0;
};
std::vector<GradCheckEntry> check_loss_gradients(std::uint64_t seed,
                                                 double step = 1e-4,
                                                 int instances = 20,
                                                 double sabotage = 0.0);

}  // namespace iris

#endif  // IRIS_LOSSES_HPP_
