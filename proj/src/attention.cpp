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

#include "iris/attention.hpp"

#include <string>

#include "iris/fmap.hpp"

namespace iris {

void AttentionConfig::validate() const {
  if (input_channels < 1) throw ConfigError("attention: input_channels < 1");
  if (variant == AttentionVariant::kAspp) {
    if (branch_channels < 1) throw ConfigError("attention: branch_channels < 1");
  } else {
    if (input_channels % 4 != 0)
      throw ConfigError("psp attention: input_channels must be divisible by 4");
    if (psp_bins.empty()) throw ConfigError("psp attention: no bins");
    int prev = 0;
    for (int b : psp_bins) {
      if (b < 1 || b <= prev)
        throw ConfigError("psp attention: bins must be strictly increasing, >= 1");
      prev = b;
    }
  }
}

namespace {

// Shared tail: M = sigmoid(conv3x3(context)), output = concat(P, P*M).
Tensor attention_tail(const Tensor& pooled, const Tensor& context,
                      const ConvParams& attention_conv) {
  if (attention_conv.out_channels != pooled.channels())
    throw ShapeError("attention conv must emit one channel per input channel");
  const Tensor m = sigmoid(conv2d(context, attention_conv));
  return concat_channels({pooled, multiply(pooled, m)});
}

}  // namespace

Tensor aspp_attention(const Tensor& x, const AttentionConfig& cfg,
                      const AttentionWeights& w) {
  cfg.validate();
  if (cfg.variant != AttentionVariant::kAspp)
    throw ConfigError("aspp_attention: config variant is not ASPP");
  if (x.channels() != cfg.input_channels)
    throw ShapeError("aspp_attention: input channel mismatch");
  if (w.branches.size() != 5)
    throw ShapeError("aspp_attention: expected 5 branches");

  const Tensor pooled = avg_pool_same(x, 3);
  std::vector<Tensor> context;
  context.reserve(5);
  for (int i = 0; i < 4; ++i) context.push_back(conv2d(pooled, w.branches[i]));
  context.push_back(global_avg_pool_branch(pooled, w.branches[4]));
  const Tensor fused = concat_channels(context);
  return attention_tail(pooled, fused, w.attention);
}

Tensor psp_attention(const Tensor& x, const AttentionConfig& cfg,
                     const AttentionWeights& w) {
  cfg.validate();
  if (cfg.variant != AttentionVariant::kPsp)
    throw ConfigError("psp_attention: config variant is not PSP");
  if (x.channels() != cfg.input_channels)
    throw ShapeError("psp_attention: input channel mismatch");
  if (w.branches.size() != cfg.psp_bins.size())
    throw ShapeError("psp_attention: one branch per bin required");

  std::vector<Tensor> context;
  context.reserve(cfg.psp_bins.size() + 1);
  context.push_back(x);
  for (std::size_t i = 0; i < cfg.psp_bins.size(); ++i) {
    const Tensor binned = adaptive_avg_pool(x, cfg.psp_bins[i]);
    const Tensor mixed = conv2d(binned, w.branches[i]);
    context.push_back(upsample_bilinear(mixed, x.height(), x.width()));
  }
  const Tensor fused = concat_channels(context);
  const Tensor pooled = avg_pool_same(x, 3);
  return attention_tail(pooled, fused, w.attention);
}

Tensor decoder_fuse(const Tensor& decoder_prev, const Tensor& encoder_same,
                    const DecoderFuseWeights& w) {
  if (encoder_same.channels() % 2 != 0)
    throw ShapeError("decoder_fuse: encoder channels must be even");
  if (w.refine2.out_channels * 2 != encoder_same.channels())
    throw ShapeError("decoder_fuse: refined channels must be encoder/2");
  const Tensor refined = conv2d(conv2d(decoder_prev, w.refine1), w.refine2);
  const Tensor up =
      upsample_bilinear(refined, encoder_same.height(), encoder_same.width());
  if (decoder_prev.height() * 2 != encoder_same.height() ||
      decoder_prev.width() * 2 != encoder_same.width())
    throw ShapeError("decoder_fuse: encoder must be exactly 2x decoder size");
  return concat_channels({up, encoder_same});
}

ProbMapSet head_forward(const Tensor& fused, const HeadWeights& w) {
  if (w.final_conv.out_channels != 4)
    throw ShapeError("head_forward: final conv must emit 4 channels");
  Tensor t = fused;
  for (const ConvParams& p : w.refine) t = conv2d(t, p);
  t = sigmoid(conv2d(t, w.final_conv));
  return ProbMapSet::from_tensor(t);
}

AttentionWeights make_attention_weights(const AttentionConfig& cfg, Rng& rng) {
  cfg.validate();
  AttentionWeights w;
  int context_channels = 0;
  if (cfg.variant == AttentionVariant::kAspp) {
    const int dilations[5] = {1, 6, 12, 18, 1};
    const int kernels[5] = {1, 3, 3, 3, 1};
    for (int i = 0; i < 5; ++i) {
      w.branches.push_back(random_conv(rng, cfg.branch_channels,
                                       cfg.input_channels, kernels[i],
                                       dilations[i], true));
    }
    context_channels = 5 * cfg.branch_channels;
  } else {
    const int per_bin = cfg.input_channels / 4;
    for (std::size_t i = 0; i < cfg.psp_bins.size(); ++i) {
      w.branches.push_back(
          random_conv(rng, per_bin, cfg.input_channels, 1, 1, true));
    }
    context_channels =
        cfg.input_channels + per_bin * static_cast<int>(cfg.psp_bins.size());
  }
  w.attention =
      random_conv(rng, cfg.input_channels, context_channels, 3, 1, false);
  return w;
}

DecoderFuseWeights make_decoder_fuse_weights(int decoder_channels,
                                             int encoder_channels, Rng& rng) {
  if (encoder_channels % 2 != 0)
    throw ConfigError("decoder fuse weights: encoder channels must be even");
  DecoderFuseWeights w;
  w.refine1 = random_conv(rng, decoder_channels, decoder_channels, 3, 1, true);
  w.refine2 =
      random_conv(rng, encoder_channels / 2, decoder_channels, 3, 1, true);
  return w;
}

HeadWeights make_head_weights(int fused_channels, int refine_layers, Rng& rng) {
  HeadWeights w;
  int c = fused_channels;
  for (int i = 0; i < refine_layers; ++i) {
    w.refine.push_back(random_conv(rng, c, c, 3, 1, true));
  }
  w.final_conv = random_conv(rng, 4, c, 1, 1, false);
  return w;
}

namespace {

Tensor vec_tensor(const std::vector<double>& v) {
  return Tensor::from_data(static_cast<int>(v.size()), 1, 1,
                           std::vector<double>(v));
}

std::vector<double> tensor_vec(const Tensor& t) { return t.data(); }

std::string part_path(const std::string& dir, const std::string& layer,
                      const std::string& part) {
  return dir + "/" + layer + "." + part + ".fmap";
}

}  // namespace

void save_conv_params(const std::string& dir, const std::string& layer,
                      const ConvParams& p) {
  p.validate();
  write_fmap(part_path(dir, layer, "weight"),
             Tensor::from_data(p.out_channels, p.in_channels,
                               p.kernel * p.kernel,
                               std::vector<double>(p.weights)));
  write_fmap(part_path(dir, layer, "bias"), vec_tensor(p.bias));
  std::vector<double> meta = {static_cast<double>(p.kernel),
                              static_cast<double>(p.dilation),
                              static_cast<double>(p.stride),
                              p.followed_by_bn_relu ? 1.0 : 0.0};
  write_fmap(part_path(dir, layer, "meta"), vec_tensor(meta));
  if (p.followed_by_bn_relu) {
    write_fmap(part_path(dir, layer, "bn_mean"), vec_tensor(p.bn_mean));
    write_fmap(part_path(dir, layer, "bn_var"), vec_tensor(p.bn_var));
    write_fmap(part_path(dir, layer, "bn_scale"), vec_tensor(p.bn_scale));
    write_fmap(part_path(dir, layer, "bn_shift"), vec_tensor(p.bn_shift));
  }
}

ConvParams load_conv_params(const std::string& dir, const std::string& layer) {
  const Tensor wt = read_fmap(part_path(dir, layer, "weight"));
  const Tensor meta = read_fmap(part_path(dir, layer, "meta"));
  if (meta.data().size() != 4) throw IoError("conv meta: expected 4 values");
  ConvParams p;
  p.out_channels = wt.channels();
  p.in_channels = wt.height();
  p.kernel = static_cast<int>(meta.data()[0]);
  p.dilation = static_cast<int>(meta.data()[1]);
  p.stride = static_cast<int>(meta.data()[2]);
  p.followed_by_bn_relu = meta.data()[3] != 0.0;
  if (wt.width() != p.kernel * p.kernel)
    throw IoError("conv weight tensor width != k*k");
  p.weights = wt.data();
  p.bias = tensor_vec(read_fmap(part_path(dir, layer, "bias")));
  if (p.followed_by_bn_relu) {
    p.bn_mean = tensor_vec(read_fmap(part_path(dir, layer, "bn_mean")));
    p.bn_var = tensor_vec(read_fmap(part_path(dir, layer, "bn_var")));
    p.bn_scale = tensor_vec(read_fmap(part_path(dir, layer, "bn_scale")));
    p.bn_shift = tensor_vec(read_fmap(part_path(dir, layer, "bn_shift")));
  }
  p.validate();
  return p;
}

void save_attention_weights(const std::string& dir,
                            const AttentionWeights& w) {
  for (std::size_t i = 0; i < w.branches.size(); ++i)
    save_conv_params(dir, "branch" + std::to_string(i), w.branches[i]);
  save_conv_params(dir, "attention", w.attention);
}

AttentionWeights load_attention_weights(const std::string& dir,
                                        int branch_count) {
  AttentionWeights w;
  for (int i = 0; i < branch_count; ++i)
    w.branches.push_back(load_conv_params(dir, "branch" + std::to_string(i)));
  w.attention = load_conv_params(dir, "attention");
  return w;
}

}  // namespace iris
