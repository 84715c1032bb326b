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

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "iris/annotation.hpp"
#include "iris/config.hpp"
#include "iris/fmap.hpp"
#include "iris/rng.hpp"
#include "oracles.hpp"

using namespace iris;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("fmap round-trip is byte-identical") {
  const std::string dir = oracle::make_temp_dir("fmap");
  Rng rng(7);
  const Tensor t = random_tensor(rng, 3, 5, 7);
  const std::string p1 = dir + "/a.fmap";
  const std::string p2 = dir + "/b.fmap";
  write_fmap(p1, t);
  const Tensor back = read_fmap(p1);
  REQUIRE(back.channels() == 3);
  REQUIRE(back.height() == 5);
  REQUIRE(back.width() == 7);
  write_fmap(p2, back);
  CHECK(slurp(p1) == slurp(p2));
  // float32 storage: values survive exactly once narrowed.
  for (std::size_t i = 0; i < t.data().size(); ++i)
    CHECK(back.data()[i] == static_cast<double>(static_cast<float>(t.data()[i])));
  std::filesystem::remove_all(dir);
}

TEST_CASE("fmap rejects corrupt headers") {
  const std::string dir = oracle::make_temp_dir("fmapbad");
  const std::string path = dir + "/bad.fmap";
  {
    std::ofstream out(path, std::ios::binary);
    out << "JUNKJUNKJUNKJUNKJUNK";
  }
  CHECK_THROWS_AS(read_fmap(path), IoError);
  CHECK_THROWS_AS(read_fmap(dir + "/missing.fmap"), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("annotation round-trip preserves every numeric field") {
  const std::string dir = oracle::make_temp_dir("ann");
  Annotation ann;
  ann.id = "case0042";
  ann.pupil_center = {101.25, 79.7578125};
  ann.inner = {101.25, 79.7578125, 17.333984375};
  ann.outer = {101.5, 80.0, 44.9990234375};
  ann.mask_path = "case0042_mask.pgm";
  ann.inner_ellipse = Ellipse{101.25, 79.75, 17.5, 16.25, 0.125};
  const std::string path = dir + "/a.json";
  write_annotation(path, ann);
  const Annotation back = read_annotation(path);
  CHECK(back.id == ann.id);
  CHECK(back.pupil_center.x == ann.pupil_center.x);
  CHECK(back.pupil_center.y == ann.pupil_center.y);
  CHECK(back.inner.cx == ann.inner.cx);
  CHECK(back.inner.r == ann.inner.r);
  CHECK(back.outer.r == ann.outer.r);
  CHECK(back.mask_path == ann.mask_path);
  REQUIRE(back.inner_ellipse.has_value());
  CHECK(back.inner_ellipse->a == 17.5);
  CHECK_FALSE(back.outer_ellipse.has_value());

  // Arbitrary doubles survive the JSON round trip bit for bit.
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Annotation r;
    r.id = "x";
    r.pupil_center = {rng.uniform(0.0, 500.0), rng.uniform(0.0, 500.0)};
    r.inner = {rng.uniform(0.0, 500.0), rng.uniform(0.0, 500.0),
               rng.uniform(1e-6, 300.0)};
    r.outer = {rng.uniform(0.0, 500.0), rng.uniform(0.0, 500.0),
               rng.uniform(1e-6, 300.0)};
    r.mask_path = "m.pgm";
    write_annotation(path, r);
    const Annotation rb = read_annotation(path);
    CHECK(rb.pupil_center.x == r.pupil_center.x);
    CHECK(rb.inner.cx == r.inner.cx);
    CHECK(rb.inner.r == r.inner.r);
    CHECK(rb.outer.cy == r.outer.cy);
    CHECK(rb.outer.r == r.outer.r);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("annotation schema validation") {
  const std::string dir = oracle::make_temp_dir("annbad");
  const std::string path = dir + "/bad.json";
  {
    std::ofstream out(path);
    out << R"({"id":"x","pupil_center":[1,2],"inner":{"cx":1,"cy":2,"r":-3},)"
        << R"("outer":{"cx":1,"cy":2,"r":4},"mask_path":"m.pgm"})";
  }
  CHECK_THROWS_AS(read_annotation(path), IoError);  // radius <= 0
  {
    std::ofstream out(path);
    out << R"({"id":"x"})";
  }
  CHECK_THROWS_AS(read_annotation(path), IoError);  // missing fields
  {
    std::ofstream out(path);
    out << "not json";
  }
  CHECK_THROWS_AS(read_annotation(path), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("config parsing") {
  const std::string dir = oracle::make_temp_dir("cfg");
  const std::string path = dir + "/pipeline.cfg";
  {
    std::ofstream out(path);
    out << "# comment line\n"
        << "mask_threshold_lo = 190\n"
        << "viterbi_delta=3.5\n"
        << "norm_cols=256   # trailing comment\n"
        << "\n";
  }
  const PipelineConfig cfg = PipelineConfig::from_file(path);
  CHECK(cfg.localize.mask_lo == 190);
  CHECK(cfg.localize.delta == doctest::Approx(3.5));
  CHECK(cfg.norm_cols == 256);
  // Untouched keys keep their defaults.
  CHECK(cfg.localize.center_lo == 150);
  CHECK(cfg.localize.n_angles == 360);
  CHECK(cfg.gabor_wavelength == doctest::Approx(18.0));
  CHECK(cfg.match_max_shift == 16);

  SUBCASE("unknown keys are rejected") {
    std::ofstream out(path);
    out << "mystery_knob=1\n";
    out.close();
    CHECK_THROWS_AS(PipelineConfig::from_file(path), ConfigError);
  }
  SUBCASE("bad values are rejected") {
    std::ofstream out(path);
    out << "norm_rows=sixty-four\n";
    out.close();
    CHECK_THROWS_AS(PipelineConfig::from_file(path), ConfigError);
  }
  SUBCASE("invalid windows are rejected") {
    std::ofstream out(path);
    out << "mask_threshold_lo=250\nmask_threshold_hi=200\n";
    out.close();
    CHECK_THROWS_AS(PipelineConfig::from_file(path), ConfigError);
  }
  std::filesystem::remove_all(dir);
}
