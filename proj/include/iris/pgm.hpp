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

#ifndef IRIS_PGM_HPP_
#define IRIS_PGM_HPP_

#include <string>

#include "iris/image.hpp"

namespace iris {

// Binary (P5) 8-bit PGM. Gray pixels map through the 8-bit view; masks are
// written as 0 (background) / 255 (foreground) and read back as byte >= 128.
void write_pgm(const std::string& path, const GrayImage& img);
void write_pgm(const std::string& path, const BinaryMask& mask);
GrayImage read_pgm(const std::string& path);
BinaryMask read_pgm_mask(const std::string& path);

}  // namespace iris

#endif  // IRIS_PGM_HPP_
