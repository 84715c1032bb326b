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

#ifndef IRIS_TENSOR_HPP_
#define IRIS_TENSOR_HPP_

#include <cstdint>
#include <vector>

#include "iris/error.hpp"
#include "iris/rng.hpp"

namespace iris {

// Dense C x H x W grid, channel-major then row-major.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int channels, int height, int width, double fill = 0.0);
  static Tensor from_data(int channels, int height, int width,
                          std::vector<double> data);

  int channels() const { return channels_; }
  int height() const { return height_; }
  int width() const { return width_; }

  double at(int c, int y, int x) const { return data_[idx(c, y, x)]; }
  double& at(int c, int y, int x) { return data_[idx(c, y, x)]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool same_shape(const Tensor& other) const {
    return channels_ == other.channels_ && height_ == other.height_ &&
           width_ == other.width_;
  }

 private:
  std::size_t idx(int c, int y, int x) const {
    return (static_cast<std::size_t>(c) * height_ + y) * width_ + x;
  }

  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

// Convolution layer parameters, with optional inference-form batch norm and
// ReLU folded in behind `followed_by_bn_relu`. Weights are laid out
// [out][in][ky][kx]; normalization is y = scale*(x-mean)/sqrt(var+eps)+shift
// with eps = 1e-5.
struct ConvParams {
  int out_channels = 0;
  int in_channels = 0;
  int kernel = 1;
  int dilation = 1;
  int stride = 1;
  std::vector<double> weights;
  std::vector<double> bias;
  bool followed_by_bn_relu = false;
  std::vector<double> bn_mean;
  std::vector<double> bn_var;
  std::vector<double> bn_scale;
  std::vector<double> bn_shift;

  static constexpr double kBnEps = 1e-5;

  void validate() const;
};

// Same-padding dilated convolution (cross-correlation); stride subsamples the
// stride-1 output grid. Taps outside the input read zero.
Tensor conv2d(const Tensor& x, const ConvParams& p);

// Spatial mean per channel -> 1x1, then 1x1 conv (+BN/ReLU per p), then
// replication back to the input's H x W.
Tensor global_avg_pool_branch(const Tensor& x, const ConvParams& p);

// k x k stride-1 average pool, averaging over in-bounds taps only so constant
// inputs stay constant at the borders.
Tensor avg_pool_same(const Tensor& x, int kernel);

// Adaptive average pool to bins x bins using the floor/ceil partition
// start_i = floor(i*H/b), end_i = ceil((i+1)*H/b).
Tensor adaptive_avg_pool(const Tensor& x, int bins);

// Bilinear resize with the pixel-center (align_corners=false) convention.
Tensor upsample_bilinear(const Tensor& x, int out_height, int out_width);

Tensor concat_channels(const std::vector<Tensor>& parts);
Tensor sigmoid(const Tensor& x);
Tensor multiply(const Tensor& a, const Tensor& b);

// Test/demo helpers: seeded random contents.
Tensor random_tensor(Rng& rng, int channels, int height, int width,
                     double lo = -1.0, double hi = 1.0);
ConvParams random_conv(Rng& rng, int out_channels, int in_channels, int kernel,
                       int dilation, bool bn_relu);

// A 1x1 convolution that passes its input through unchanged.
ConvParams identity_conv(int channels);

}  // namespace iris

#endif  // IRIS_TENSOR_HPP_
