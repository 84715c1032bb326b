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

#ifndef IRIS_FMAP_HPP_
#define IRIS_FMAP_HPP_

#include <string>

#include "iris/tensor.hpp"

namespace iris {

// FMAP container: "FMAP" magic, u32 version (=1), u32 channels/height/width,
// then C*H*W little-endian 32-bit floats, channel-major row-major. Values are
// stored as float; the in-memory Tensor holds their exact double extensions,
// so write -> read -> write is byte-identical.
inline constexpr std::uint32_t kFmapVersion = 1;

void write_fmap(const std::string& path, const Tensor& t);
Tensor read_fmap(const std::string& path);

}  // namespace iris

#endif  // IRIS_FMAP_HPP_
