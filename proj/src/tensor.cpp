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

#include "iris/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace iris {

Tensor::Tensor(int channels, int height, int width, double fill)
    : channels_(channels), height_(height), width_(width) {
  if (channels < 0 || height < 0 || width < 0)
    throw ShapeError("negative tensor dimensions");
  data_.assign(static_cast<std::size_t>(channels) * height * width, fill);
}

Tensor Tensor::from_data(int channels, int height, int width,
                         std::vector<double> data) {
  if (data.size() != static_cast<std::size_t>(channels) * height * width)
    throw ShapeError("tensor buffer does not match C*H*W");
  for (double v : data) {
    if (!std::isfinite(v)) throw ShapeError("non-finite tensor value");
  }
  Tensor t(channels, height, width);
  t.data_ = std::move(data);
  return t;
}

void ConvParams::validate() const {
  if (out_channels < 1 || in_channels < 1 || kernel < 1)
    throw ConfigError("conv: non-positive dimensions");
  if (dilation < 1 || stride < 1)
    throw ConfigError("conv: dilation and stride must be >= 1");
  const std::size_t expect = static_cast<std::size_t>(out_channels) *
                             in_channels * kernel * kernel;
  if (weights.size() != expect)
    throw ShapeError("conv: weight count != out*in*k*k");
  if (bias.size() != static_cast<std::size_t>(out_channels))
    throw ShapeError("conv: bias count != out_channels");
  if (followed_by_bn_relu) {
    const auto n = static_cast<std::size_t>(out_channels);
    if (bn_mean.size() != n || bn_var.size() != n || bn_scale.size() != n ||
        bn_shift.size() != n)
      throw ShapeError("conv: batch-norm parameter count != out_channels");
  }
}

Tensor conv2d(const Tensor& x, const ConvParams& p) {
  p.validate();
  if (x.channels() != p.in_channels)
    throw ShapeError("conv2d: input channels != in_channels");

  const int k = p.kernel;
  const int pad = (k - 1) * p.dilation / 2;
  const int out_h = (x.height() + p.stride - 1) / p.stride;
  const int out_w = (x.width() + p.stride - 1) / p.stride;
  Tensor out(p.out_channels, out_h, out_w);

  for (int oc = 0; oc < p.out_channels; ++oc) {
    for (int oy = 0; oy < out_h; ++oy) {
      for (int ox = 0; ox < out_w; ++ox) {
        const int cy = oy * p.stride;
        const int cx = ox * p.stride;
        double acc = p.bias[oc];
        for (int ic = 0; ic < p.in_channels; ++ic) {
          for (int ky = 0; ky < k; ++ky) {
            const int iy = cy + ky * p.dilation - pad;
            if (iy < 0 || iy >= x.height()) continue;
            for (int kx = 0; kx < k; ++kx) {
              const int ix = cx + kx * p.dilation - pad;
              if (ix < 0 || ix >= x.width()) continue;
              const double w =
                  p.weights[((static_cast<std::size_t>(oc) * p.in_channels +
                              ic) * k + ky) * k + kx];
              acc += w * x.at(ic, iy, ix);
            }
          }
        }
        out.at(oc, oy, ox) = acc;
      }
    }
  }

  if (p.followed_by_bn_relu) {
    for (int oc = 0; oc < p.out_channels; ++oc) {
      const double inv = 1.0 / std::sqrt(p.bn_var[oc] + ConvParams::kBnEps);
      for (int y = 0; y < out_h; ++y) {
        for (int xx = 0; xx < out_w; ++xx) {
          const double v =
              p.bn_scale[oc] * (out.at(oc, y, xx) - p.bn_mean[oc]) * inv +
              p.bn_shift[oc];
          out.at(oc, y, xx) = std::max(0.0, v);
        }
      }
    }
  }
  return out;
}

Tensor global_avg_pool_branch(const Tensor& x, const ConvParams& p) {
  if (x.channels() != p.in_channels)
    throw ShapeError("global_avg_pool_branch: channel mismatch");
  Tensor pooled(x.channels(), 1, 1);
  const double n = static_cast<double>(x.height()) * x.width();
  for (int c = 0; c < x.channels(); ++c) {
    double s = 0.0;
    for (int y = 0; y < x.height(); ++y)
      for (int xx = 0; xx < x.width(); ++xx) s += x.at(c, y, xx);
    pooled.at(c, 0, 0) = s / n;
  }
  const Tensor mixed = conv2d(pooled, p);
  Tensor out(mixed.channels(), x.height(), x.width());
  for (int c = 0; c < mixed.channels(); ++c) {
    const double v = mixed.at(c, 0, 0);
    for (int y = 0; y < x.height(); ++y)
      for (int xx = 0; xx < x.width(); ++xx) out.at(c, y, xx) = v;
  }
  return out;
}

Tensor avg_pool_same(const Tensor& x, int kernel) {
  if (kernel < 1 || kernel % 2 == 0)
    throw ConfigError("avg_pool_same: kernel must be odd and positive");
  const int half = kernel / 2;
  Tensor out(x.channels(), x.height(), x.width());
  for (int c = 0; c < x.channels(); ++c) {
    for (int y = 0; y < x.height(); ++y) {
      for (int xx = 0; xx < x.width(); ++xx) {
        double s = 0.0;
        int n = 0;
        for (int dy = -half; dy <= half; ++dy) {
          const int iy = y + dy;
          if (iy < 0 || iy >= x.height()) continue;
          for (int dx = -half; dx <= half; ++dx) {
            const int ix = xx + dx;
            if (ix < 0 || ix >= x.width()) continue;
            s += x.at(c, iy, ix);
            ++n;
          }
        }
        out.at(c, y, xx) = s / n;
      }
    }
  }
  return out;
}

Tensor adaptive_avg_pool(const Tensor& x, int bins) {
  if (bins < 1) throw ConfigError("adaptive_avg_pool: bins must be >= 1");
  if (bins > x.height() || bins > x.width())
    throw ConfigError("adaptive_avg_pool: more bins than pixels");
  Tensor out(x.channels(), bins, bins);
  for (int c = 0; c < x.channels(); ++c) {
    for (int by = 0; by < bins; ++by) {
      const int y0 = by * x.height() / bins;
      const int y1 = ((by + 1) * x.height() + bins - 1) / bins;
      for (int bx = 0; bx < bins; ++bx) {
        const int x0 = bx * x.width() / bins;
        const int x1 = ((bx + 1) * x.width() + bins - 1) / bins;
        double s = 0.0;
        for (int y = y0; y < y1; ++y)
          for (int xx = x0; xx < x1; ++xx) s += x.at(c, y, xx);
        out.at(c, by, bx) = s / ((y1 - y0) * (x1 - x0));
      }
    }
  }
  return out;
}

Tensor upsample_bilinear(const Tensor& x, int out_height, int out_width) {
  if (out_height < 1 || out_width < 1)
    throw ConfigError("upsample_bilinear: non-positive output size");
  Tensor out(x.channels(), out_height, out_width);
  const double sy = static_cast<double>(x.height()) / out_height;
  const double sx = static_cast<double>(x.width()) / out_width;
  for (int c = 0; c < x.channels(); ++c) {
    for (int y = 0; y < out_height; ++y) {
      const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0,
                                   static_cast<double>(x.height() - 1));
      const int y0 = static_cast<int>(std::floor(fy));
      const int y1 = std::min(y0 + 1, x.height() - 1);
      const double wy = fy - y0;
      for (int xx = 0; xx < out_width; ++xx) {
        const double fx = std::clamp((xx + 0.5) * sx - 0.5, 0.0,
                                     static_cast<double>(x.width() - 1));
        const int x0 = static_cast<int>(std::floor(fx));
        const int x1 = std::min(x0 + 1, x.width() - 1);
        const double wx = fx - x0;
        const double top =
            (1.0 - wx) * x.at(c, y0, x0) + wx * x.at(c, y0, x1);
        const double bot =
            (1.0 - wx) * x.at(c, y1, x0) + wx * x.at(c, y1, x1);
        out.at(c, y, xx) = (1.0 - wy) * top + wy * bot;
      }
    }
  }
  return out;
}

Tensor concat_channels(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw ShapeError("concat_channels: nothing to concatenate");
  int channels = 0;
  for (const Tensor& t : parts) {
    if (t.height() != parts[0].height() || t.width() != parts[0].width())
      throw ShapeError("concat_channels: spatial dims differ");
    channels += t.channels();
  }
  Tensor out(channels, parts[0].height(), parts[0].width());
  int base = 0;
  for (const Tensor& t : parts) {
    for (int c = 0; c < t.channels(); ++c)
      for (int y = 0; y < t.height(); ++y)
        for (int xx = 0; xx < t.width(); ++xx)
          out.at(base + c, y, xx) = t.at(c, y, xx);
    base += t.channels();
  }
  return out;
}

Tensor sigmoid(const Tensor& x) {
  Tensor out = x;
  for (double& v : out.data()) v = 1.0 / (1.0 + std::exp(-v));
  return out;
}

Tensor multiply(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) throw ShapeError("multiply: shape mismatch");
  Tensor out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i)
    out.data()[i] *= b.data()[i];
  return out;
}

Tensor random_tensor(Rng& rng, int channels, int height, int width, double lo,
                     double hi) {
  Tensor t(channels, height, width);
  for (double& v : t.data()) v = rng.uniform(lo, hi);
  return t;
}

ConvParams random_conv(Rng& rng, int out_channels, int in_channels, int kernel,
                       int dilation, bool bn_relu) {
  ConvParams p;
  p.out_channels = out_channels;
  p.in_channels = in_channels;
  p.kernel = kernel;
  p.dilation = dilation;
  const double sigma =
      1.0 / std::sqrt(static_cast<double>(in_channels) * kernel * kernel);
  p.weights.resize(static_cast<std::size_t>(out_channels) * in_channels *
                   kernel * kernel);
  for (double& w : p.weights) w = rng.normal(0.0, sigma);
  p.bias.resize(out_channels);
  for (double& b : p.bias) b = rng.normal(0.0, 0.1);
  p.followed_by_bn_relu = bn_relu;
  if (bn_relu) {
    p.bn_mean.resize(out_channels);
    p.bn_var.resize(out_channels);
    p.bn_scale.resize(out_channels);
    p.bn_shift.resize(out_channels);
    for (int c = 0; c < out_channels; ++c) {
      p.bn_mean[c] = rng.normal(0.0, 0.1);
      p.bn_var[c] = rng.uniform(0.5, 1.5);
      p.bn_scale[c] = rng.uniform(0.5, 1.5);
      p.bn_shift[c] = rng.normal(0.0, 0.1);
    }
  }
  return p;
}

ConvParams identity_conv(int channels) {
  ConvParams p;
  p.out_channels = channels;
  p.in_channels = channels;
  p.kernel = 1;
  p.weights.assign(static_cast<std::size_t>(channels) * channels, 0.0);
  for (int c = 0; c < channels; ++c)
    p.weights[static_cast<std::size_t>(c) * channels + c] = 1.0;
  p.bias.assign(channels, 0.0);
  return p;
}

}  // namespace iris
