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

#ifndef IRIS_LOCALIZE_HPP_
#define IRIS_LOCALIZE_HPP_

#include <vector>

#include "iris/image.hpp"
#include "iris/probmap.hpp"

namespace iris {

// Radial search band around a center.
struct BoundaryRange {
  Vec2 center;
  double r_min = 0.0;
  double r_max = 0.0;
};

// Per-angle radius contour; angle k sits at 2*pi*k/n_angles. Neighbouring
// radii (including the wrap-around step) differ by at most the smoothness
// bound used to extract the contour.
struct PolarContour {
  Vec2 center;
  int n_angles = 0;
  std::vector<double> radii;

  Vec2 point(int k) const;
};

struct LocalizationResult {
  Vec2 pupil_center;
  Circle inner;
  Circle outer;
  PolarContour inner_contour;
  PolarContour outer_contour;
  GrayImage denoised_inner;
  GrayImage denoised_outer;
};

struct LocalizeParams {
  int mask_lo = 200;       // high-confidence window for the segmentation map
  int mask_hi = 255;
  int center_lo = 150;     // looser window keeps more center candidates
  int center_hi = 255;
  int boundary_lo = 150;   // predicted edges are thick and blurred
  int boundary_hi = 255;
  int n_angles = 360;
  double delta = 2.0;      // max |r_{k+1} - r_k| per angular step, pixels
};

// Pupil center estimate: the centroid of the thresholded pupil-center
// component whose centroid lies nearest the circumcircle center of the
// largest thresholded mask component. With no center candidate the
// circumcircle center itself is returned; with no mask evidence this throws
// NoIrisError.
Vec2 locate_pupil_center(const ProbMapSet& maps, const LocalizeParams& params);

struct DenoiseResult {
  GrayImage denoised_inner;
  GrayImage denoised_outer;
  BoundaryRange inner_range;
  BoundaryRange outer_range;
  double enclosing_radius = 0.0;
};

// Removes impossible edge components using the enclosing circle centered at
// the pupil center with radius equal to the farthest max-area mask pixel:
// outer-boundary components entirely inside or entirely outside it are
// dropped, inner-boundary components entirely outside it are dropped.
// Surviving pixels keep their probabilities; everything else becomes 0. The
// radial ranges span the surviving pixels; when a map loses every component
// the range falls back to mask geometry (inner [2, 0.8R], outer [0.5R, 1.2R]).
DenoiseResult denoise_and_range(const ProbMapSet& maps, const Vec2& pupil_center,
                                const LocalizeParams& params);

// Maximum-score closed contour through the polar emission grid.
//
// Emission at (angle k, integer radius r) is log(bilinear(boundary) + 1e-6);
// paths must satisfy |r_{k+1} - r_k| <= delta including the wrap-around step.
// Closure is exact: the DP runs once per feasible start radius with the final
// transition constrained back to that start, and the best total wins. A range
// holding no integer radius degenerates to a single-radius contour.
PolarContour viterbi_contour(const GrayImage& boundary,
                             const BoundaryRange& range, int n_angles,
                             double delta);

// Algebraic least-squares circle fit (Kasa). The data is centered first, which
// reduces the 3x3 normal equations to a well-conditioned 2x2 solve and makes
// the fit translation-equivariant; exact on noise-free circles. Throws
// GeometryError when the system is near-singular (condition > 1e12).
Circle fit_circle(const std::vector<Vec2>& points);
Circle fit_circle(const PolarContour& contour);

// Full chain: pupil center, denoising + ranges, two Viterbi contours, two
// circle fits. Throws GeometryError if the fitted inner radius does not stay
// below the outer radius or a center leaves the image.
LocalizationResult localize(const ProbMapSet& maps, const LocalizeParams& params);

}  // namespace iris

#endif  // IRIS_LOCALIZE_HPP_
