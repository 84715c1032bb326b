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

#ifndef IRIS_ERROR_HPP_
#define IRIS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace iris {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Dimension or layout disagreement between operands.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& msg) : Error(msg) {}
};

// Bad parameter value (thresholds, channel counts, wavelengths, ...).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Degenerate or inconsistent geometry (collinear fit points, inner >= outer, ...).
class GeometryError : public Error {
 public:
  explicit GeometryError(const std::string& msg) : Error(msg) {}
};

// No usable iris evidence in the probability maps.
class NoIrisError : public Error {
 public:
  explicit NoIrisError(const std::string& msg) : Error(msg) {}
};

// Two templates share no mutually valid bits at any shift.
class NoOverlapError : public Error {
 public:
  explicit NoOverlapError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace iris

#endif  // IRIS_ERROR_HPP_
