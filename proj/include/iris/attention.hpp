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

#ifndef IRIS_ATTENTION_HPP_
#define IRIS_ATTENTION_HPP_

#include <string>
#include <vector>

#include "iris/probmap.hpp"
#include "iris/tensor.hpp"

namespace iris {

enum class AttentionVariant { kAspp, kPsp };

struct AttentionConfig {
  AttentionVariant variant = AttentionVariant::kAspp;
  int input_channels = 512;
  int branch_channels = 256;          // ASPP branch width
  std::vector<int> psp_bins = {1, 2, 3, 6};

  void validate() const;
};

// Parameters of one attention block: the parallel context branches plus the
// conv that produces the pre-sigmoid attention logits.
//
// ASPP branches (all on the pooled map P, each branch_channels wide):
//   [0] 1x1 conv, [1..3] 3x3 conv at dilations 6/12/18, [4] global-average
//   branch (1x1 conv applied to the pooled scalar, replicated back).
// PSP branches: one 1x1 conv per pyramid bin, each input_channels/4 wide,
//   applied after adaptive pooling and bilinearly upsampled back.
struct AttentionWeights {
  std::vector<ConvParams> branches;
  ConvParams attention;  // 3x3, -> input_channels, no BN/ReLU (sigmoid after)
};

struct DecoderFuseWeights {
  ConvParams refine1;
  ConvParams refine2;  // out_channels must equal encoder channels / 2
};

struct HeadWeights {
  std::vector<ConvParams> refine;  // 3x3 conv+BN+ReLU stack
  ConvParams final_conv;           // 1x1 -> 4 channels, sigmoid applied after
};

// Both attention blocks share the same envelope: pool the input F to P with a
// 3x3 stride-1 average pool, build multi-scale context H, turn H into an
// attention map M = sigmoid(conv3x3(H)) with one value per input channel, and
// return concat(P, P*M) — spatial size preserved, channels doubled.
Tensor aspp_attention(const Tensor& x, const AttentionConfig& cfg,
                      const AttentionWeights& w);
Tensor psp_attention(const Tensor& x, const AttentionConfig& cfg,
                     const AttentionWeights& w);

// Refines the previous decoder stage with two 3x3 conv+BN+ReLU layers (the
// second halving the encoder's channel count), upsamples 2x bilinearly, and
// concatenates [refined, encoder]: channels become 1.5x the encoder's.
Tensor decoder_fuse(const Tensor& decoder_prev, const Tensor& encoder_same,
                    const DecoderFuseWeights& w);

// Refinement stack, then a 1x1 conv down to 4 channels and a per-pixel
// sigmoid; channels map in order to pupil center / mask / inner / outer.
ProbMapSet head_forward(const Tensor& fused, const HeadWeights& w);

// Seeded random weight construction for desk-scale runs.
AttentionWeights make_attention_weights(const AttentionConfig& cfg, Rng& rng);
DecoderFuseWeights make_decoder_fuse_weights(int decoder_channels,
                                             int encoder_channels, Rng& rng);
HeadWeights make_head_weights(int fused_channels, int refine_layers, Rng& rng);

// Weight bundle on disk: one directory holding <layer>.<part>.fmap files,
// keyed by layer name. Conv weights are stored out x in x (k*k).
void save_conv_params(const std::string& dir, const std::string& layer,
                      const ConvParams& p);
ConvParams load_conv_params(const std::string& dir, const std::string& layer);
void save_attention_weights(const std::string& dir, const AttentionWeights& w);
AttentionWeights load_attention_weights(const std::string& dir,
                                        int branch_count);

}  // namespace iris

#endif  // IRIS_ATTENTION_HPP_
