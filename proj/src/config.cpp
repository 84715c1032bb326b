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

#include "iris/config.hpp"

#include <fstream>
#include <stdexcept>

namespace iris {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

int to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: " + key + " expects an integer, got '" + value + "'");
  }
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: " + key + " expects a number, got '" + value + "'");
  }
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: missing '=' at " + path + ":" +
                        std::to_string(lineno));
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void PipelineConfig::apply(const std::string& key, const std::string& value) {
  if (key == "mask_threshold_lo") localize.mask_lo = to_int(key, value);
  else if (key == "mask_threshold_hi") localize.mask_hi = to_int(key, value);
  else if (key == "center_threshold_lo") localize.center_lo = to_int(key, value);
  else if (key == "center_threshold_hi") localize.center_hi = to_int(key, value);
  else if (key == "boundary_threshold_lo") localize.boundary_lo = to_int(key, value);
  else if (key == "boundary_threshold_hi") localize.boundary_hi = to_int(key, value);
  else if (key == "viterbi_angles") localize.n_angles = to_int(key, value);
  else if (key == "viterbi_delta") localize.delta = to_double(key, value);
  else if (key == "mask_binarize") mask_binarize = to_double(key, value);
  else if (key == "norm_rows") norm_rows = to_int(key, value);
  else if (key == "norm_cols") norm_cols = to_int(key, value);
  else if (key == "gabor_wavelength") gabor_wavelength = to_double(key, value);
  else if (key == "gabor_sigma_ratio") gabor_sigma_ratio = to_double(key, value);
  else if (key == "match_max_shift") match_max_shift = to_int(key, value);
  else throw ConfigError("config: unknown key '" + key + "'");
}

void PipelineConfig::validate() const {
  auto window = [](const char* name, int lo, int hi) {
    if (lo > hi || lo < 0 || hi > 255)
      throw ConfigError(std::string("config: bad threshold window for ") + name);
  };
  window("mask", localize.mask_lo, localize.mask_hi);
  window("center", localize.center_lo, localize.center_hi);
  window("boundary", localize.boundary_lo, localize.boundary_hi);
  if (localize.n_angles < 8) throw ConfigError("config: viterbi_angles < 8");
  if (localize.delta < 1.0) throw ConfigError("config: viterbi_delta < 1");
  if (mask_binarize < 0.0 || mask_binarize > 1.0)
    throw ConfigError("config: mask_binarize outside [0,1]");
  if (norm_rows < 1 || norm_cols < 1)
    throw ConfigError("config: normalized grid must be positive");
  if (gabor_wavelength < 2.0) throw ConfigError("config: gabor_wavelength < 2");
  if (!(gabor_sigma_ratio > 0.0 && gabor_sigma_ratio < 1.0))
    throw ConfigError("config: gabor_sigma_ratio must be in (0,1)");
  if (match_max_shift < 0) throw ConfigError("config: match_max_shift < 0");
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
  PipelineConfig cfg;
  for (const auto& [key, value] : parse_key_values(path)) cfg.apply(key, value);
  cfg.validate();
  return cfg;
}

}  // namespace iris
