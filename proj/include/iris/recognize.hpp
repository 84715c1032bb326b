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

#ifndef IRIS_RECOGNIZE_HPP_
#define IRIS_RECOGNIZE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "iris/image.hpp"

namespace iris {

// Rubber-sheet unwrapped iris: rows run from the inner boundary outwards,
// columns sweep the angle 2*pi*j/cols.
struct NormalizedIris {
  int rows = 0;
  int cols = 0;
  std::vector<double> pixels;        // rows*cols, values in [0,1]
  std::vector<std::uint8_t> valid;   // rows*cols, 0/1 from the segmentation mask

  double pixel(int i, int j) const {
    return pixels[static_cast<std::size_t>(i) * cols + j];
  }
  bool is_valid(int i, int j) const {
    return valid[static_cast<std::size_t>(i) * cols + j] != 0;
  }
};

// Phase-quantized iris code. Bit (i,j,c) lives at index (i*cols + j)*2 + c
// with c = 0 for the real sign and c = 1 for the imaginary sign. A cleared
// mask bit excludes the code bit from matching.
struct IrisTemplate {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> code;  // 2*rows*cols entries of 0/1
  std::vector<std::uint8_t> mask;

  std::size_t bit_count() const { return code.size(); }
};

struct MatchScore {
  double hd = 0.0;  // fractional Hamming distance over valid bits
  int shift = 0;    // best alignment compares a(i, j) against b(i, j - shift)
  std::uint64_t valid_bits = 0;
};

struct VerificationStats {
  double eer = 0.0;
  double di = 0.0;
  std::vector<double> genuine_scores;
  std::vector<double> impostor_scores;
};

// Daugman rubber-sheet mapping between two (possibly non-concentric) circles.
// Row i samples the ray at radial fraction (i+0.5)/rows between the per-angle
// inner and outer boundary points; pixels are bilinear, validity is the mask
// at the nearest pixel (false outside the image).
NormalizedIris normalize(const GrayImage& img, const BinaryMask& mask,
                         const Circle& inner, const Circle& outer, int rows,
                         int cols);

// Row-wise 1-D log-Gabor phase code. The transfer function
// G(f) = exp(-(log(f/f0))^2 / (2 (log sigma_ratio)^2)), f0 = 1/wavelength, is
// applied one-sided in the frequency domain (G(0) = 0, negative frequencies
// dropped), giving a complex response whose real/imaginary signs become the
// two bits per sample. Mask bits clear where the sample is invalid or the
// response magnitude falls below 1e-9.
IrisTemplate encode(const NormalizedIris& norm, double wavelength,
                    double sigma_ratio);

// Minimum fractional Hamming distance over circular column shifts in
// [-max_shift, max_shift]; shifts are tried outward from 0 so ties resolve to
// the smallest |shift|. Throws NoOverlapError when no shift has any mutually
// valid bits.
MatchScore match(const IrisTemplate& a, const IrisTemplate& b, int max_shift);

// EER by linear interpolation of FAR/FRR between adjacent observed
// thresholds (scores are distances: genuine low), and decidability
// |mu_g - mu_i| / sqrt((var_g + var_i)/2) with unbiased variances.
VerificationStats verification_stats(const std::vector<double>& genuine,
                                     const std::vector<double>& impostor);

// "ITPL" container: magic, u32 rows/cols, packed code bits, packed mask bits,
// little-endian, LSB-first within each byte.
void write_template(const std::string& path, const IrisTemplate& tpl);
IrisTemplate read_template(const std::string& path);

}  // namespace iris

#endif  // IRIS_RECOGNIZE_HPP_
