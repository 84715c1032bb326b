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

#include "iris/annotation.hpp"

#include <fstream>

#include "json.hpp"

namespace iris {

namespace {

using nlohmann::json;

json circle_to_json(const Circle& c) {
  return json{{"cx", c.cx}, {"cy", c.cy}, {"r", c.r}};
}

Circle circle_from_json(const json& j, const std::string& path) {
  Circle c;
  c.cx = j.at("cx").get<double>();
  c.cy = j.at("cy").get<double>();
  c.r = j.at("r").get<double>();
  if (!(c.r > 0.0)) throw IoError("annotation radius must be > 0: " + path);
  return c;
}

json ellipse_to_json(const Ellipse& e) {
  return json{{"cx", e.cx}, {"cy", e.cy}, {"a", e.a}, {"b", e.b}, {"phi", e.phi}};
}

Ellipse ellipse_from_json(const json& j) {
  Ellipse e;
  e.cx = j.at("cx").get<double>();
  e.cy = j.at("cy").get<double>();
  e.a = j.at("a").get<double>();
  e.b = j.at("b").get<double>();
  e.phi = j.at("phi").get<double>();
  return e;
}

}  // namespace

void write_annotation(const std::string& path, const Annotation& ann) {
  json j;
  j["id"] = ann.id;
  j["pupil_center"] = {ann.pupil_center.x, ann.pupil_center.y};
  j["inner"] = circle_to_json(ann.inner);
  j["outer"] = circle_to_json(ann.outer);
  j["mask_path"] = ann.mask_path;
  if (ann.inner_ellipse) j["inner_ellipse"] = ellipse_to_json(*ann.inner_ellipse);
  if (ann.outer_ellipse) j["outer_ellipse"] = ellipse_to_json(*ann.outer_ellipse);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("short write: " + path);
}

Annotation read_annotation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("bad annotation JSON (" + path + "): " + e.what());
  }
  try {
    Annotation ann;
    ann.id = j.at("id").get<std::string>();
    const auto& pc = j.at("pupil_center");
    if (!pc.is_array() || pc.size() != 2)
      throw IoError("annotation pupil_center must be [x, y]: " + path);
    ann.pupil_center = {pc[0].get<double>(), pc[1].get<double>()};
    ann.inner = circle_from_json(j.at("inner"), path);
    ann.outer = circle_from_json(j.at("outer"), path);
    ann.mask_path = j.at("mask_path").get<std::string>();
    if (j.contains("inner_ellipse"))
      ann.inner_ellipse = ellipse_from_json(j.at("inner_ellipse"));
    if (j.contains("outer_ellipse"))
      ann.outer_ellipse = ellipse_from_json(j.at("outer_ellipse"));
    return ann;
  } catch (const json::exception& e) {
    throw IoError("annotation schema violation (" + path + "): " + e.what());
  }
}

}  // namespace iris
