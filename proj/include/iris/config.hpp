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

#ifndef IRIS_CONFIG_HPP_
#define IRIS_CONFIG_HPP_

#include <map>
#include <string>

#include "iris/localize.hpp"

namespace iris {

// Every tunable of the processing chain, with its default. Values load from a
// plain-text key=value file ('#' starts a comment); unknown keys are errors.
struct PipelineConfig {
  LocalizeParams localize;
  double mask_binarize = 0.5;  // decision threshold for the output mask
  int norm_rows = 64;
  int norm_cols = 512;
  double gabor_wavelength = 18.0;
  double gabor_sigma_ratio = 0.5;
  int match_max_shift = 16;

  static PipelineConfig from_file(const std::string& path);
  void apply(const std::string& key, const std::string& value);
  void validate() const;
};

// Bare key=value parsing, exposed for reuse.
std::map<std::string, std::string> parse_key_values(const std::string& path);

}  // namespace iris

#endif  // IRIS_CONFIG_HPP_
