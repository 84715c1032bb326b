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

#include <cmath>
#include <filesystem>
#include <numbers>

#include "doctest.h"
#include "iris/recognize.hpp"
#include "iris/rng.hpp"
#include "iris/synth.hpp"
#include "oracles.hpp"

using namespace iris;

namespace {

IrisTemplate random_template(Rng& rng, int rows = 16, int cols = 128) {
  IrisTemplate tpl;
  tpl.rows = rows;
  tpl.cols = cols;
  tpl.code.resize(2 * static_cast<std::size_t>(rows) * cols);
  tpl.mask.assign(tpl.code.size(), 1);
  for (auto& b : tpl.code) b = rng.uniform() < 0.5 ? 1 : 0;
  return tpl;
}

}  // namespace

TEST_CASE("normalize geometry") {
  SUBCASE("concentric circles sample at the expected radii") {
    GrayImage img(64, 64);
    for (int y = 0; y < 64; ++y)
      for (int x = 0; x < 64; ++x)
        img.at(x, y) = std::min(1.0, std::hypot(x - 32.0, y - 32.0) / 32.0);
    const BinaryMask mask(64, 64, true);
    const Circle inner{32.0, 32.0, 5.0};
    const Circle outer{32.0, 32.0, 15.0};
    const NormalizedIris norm = normalize(img, mask, inner, outer, 4, 32);
    // Rows sample radii 6.25, 8.75, 11.25, 13.75; the image is radius/32.
    const double expected[4] = {6.25, 8.75, 11.25, 13.75};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 32; ++j)
        CHECK(norm.pixel(i, j) ==
              doctest::Approx(expected[i] / 32.0).epsilon(0.03));
  }
  SUBCASE("constant image normalizes to a constant") {
    const GrayImage img(48, 48, 0.37);
    const BinaryMask mask(48, 48, true);
    const NormalizedIris norm =
        normalize(img, mask, {24.0, 24.0, 6.0}, {24.0, 24.0, 20.0}, 8, 64);
    for (double v : norm.pixels) CHECK(v == doctest::Approx(0.37));
  }
  SUBCASE("radial gradient gives constant rows, increasing across rows") {
    GrayImage img(80, 80);
    for (int y = 0; y < 80; ++y)
      for (int x = 0; x < 80; ++x)
        img.at(x, y) = std::min(1.0, std::hypot(x - 40.0, y - 40.0) / 40.0);
    const BinaryMask mask(80, 80, true);
    const NormalizedIris norm =
        normalize(img, mask, {40.0, 40.0, 8.0}, {40.0, 40.0, 30.0}, 6, 48);
    for (int i = 0; i < 6; ++i) {
      for (int j = 1; j < 48; ++j)
        CHECK(norm.pixel(i, j) == doctest::Approx(norm.pixel(i, 0)).epsilon(0.05));
      if (i > 0) CHECK(norm.pixel(i, 0) > norm.pixel(i - 1, 0));
    }
  }
  SUBCASE("inverted circles are a geometry error") {
    const GrayImage img(32, 32, 0.5);
    const BinaryMask mask(32, 32, true);
    CHECK_THROWS_AS(
        normalize(img, mask, {16.0, 16.0, 10.0}, {16.0, 16.0, 5.0}, 4, 32),
        GeometryError);
  }
}

TEST_CASE("log-Gabor encoding") {
  SUBCASE("constant rows carry no code (DC removed)") {
    NormalizedIris norm;
    norm.rows = 4;
    norm.cols = 64;
    norm.pixels.assign(4 * 64, 0.8);
    norm.valid.assign(4 * 64, 1);
    const IrisTemplate tpl = encode(norm, 16.0, 0.5);
    CHECK(tpl.bit_count() == 2u * 4 * 64);
    for (auto b : tpl.mask) CHECK(b == 0);
  }
  SUBCASE("cosine at the center frequency alternates real bits") {
    NormalizedIris norm;
    norm.rows = 1;
    norm.cols = 128;
    norm.pixels.resize(128);
    norm.valid.assign(128, 1);
    const double wavelength = 16.0;
    for (int j = 0; j < 128; ++j)
      norm.pixels[j] =
          0.5 + 0.4 * std::cos(2.0 * std::numbers::pi * j / wavelength);
    const IrisTemplate tpl = encode(norm, wavelength, 0.5);
    // The analytic response of a pure cosine keeps its phase: the real bit
    // flips every half wavelength.
    for (int j = 0; j < 128; ++j) {
      const double phase = std::cos(2.0 * std::numbers::pi * j / wavelength);
      if (std::abs(phase) < 0.2) continue;  // skip zero crossings
      CHECK(tpl.code[2 * j] == (phase > 0.0 ? 1 : 0));
      CHECK(tpl.mask[2 * j] == 1);
    }
  }
  SUBCASE("cosine encoding also holds on the non-power-of-two path") {
    NormalizedIris norm;
    norm.rows = 1;
    norm.cols = 96;
    norm.pixels.resize(96);
    norm.valid.assign(96, 1);
    const double wavelength = 16.0;  // 6 full cycles across 96 samples
    for (int j = 0; j < 96; ++j)
      norm.pixels[j] =
          0.5 + 0.4 * std::cos(2.0 * std::numbers::pi * j / wavelength);
    const IrisTemplate tpl = encode(norm, wavelength, 0.5);
    for (int j = 0; j < 96; ++j) {
      const double phase = std::cos(2.0 * std::numbers::pi * j / wavelength);
      if (std::abs(phase) < 0.2) continue;
      CHECK(tpl.code[2 * j] == (phase > 0.0 ? 1 : 0));
    }
  }
  SUBCASE("template length is always 2*rows*cols") {
    Rng rng(71);
    NormalizedIris norm;
    norm.rows = 3;
    norm.cols = 100;  // exercises the non-power-of-two path
    norm.pixels.resize(300);
    norm.valid.assign(300, 1);
    for (double& v : norm.pixels) v = rng.uniform();
    const IrisTemplate tpl = encode(norm, 12.0, 0.5);
    CHECK(tpl.code.size() == 600);
    CHECK(tpl.mask.size() == 600);
  }
  SUBCASE("invalid pixels clear their mask bits") {
    Rng rng(72);
    NormalizedIris norm;
    norm.rows = 2;
    norm.cols = 64;
    norm.pixels.resize(128);
    norm.valid.assign(128, 1);
    for (double& v : norm.pixels) v = rng.uniform();
    norm.valid[10] = 0;
    const IrisTemplate tpl = encode(norm, 8.0, 0.5);
    CHECK(tpl.mask[20] == 0);
    CHECK(tpl.mask[21] == 0);
  }
  SUBCASE("oversized wavelength is a config error") {
    NormalizedIris norm;
    norm.rows = 1;
    norm.cols = 32;
    norm.pixels.assign(32, 0.5);
    norm.valid.assign(32, 1);
    CHECK_THROWS_AS(encode(norm, 20.0, 0.5), ConfigError);
  }
}

TEST_CASE("template matching") {
  Rng rng(73);
  SUBCASE("identity matches at zero") {
    const IrisTemplate tpl = random_template(rng);
    const MatchScore score = match(tpl, tpl, 8);
    CHECK(score.hd == 0.0);
    CHECK(score.shift == 0);
    CHECK(score.valid_bits == tpl.bit_count());
  }
  SUBCASE("complement matches at one") {
    const IrisTemplate tpl = random_template(rng);
    IrisTemplate flipped = tpl;
    for (auto& b : flipped.code) b ^= 1;
    CHECK(match(tpl, flipped, 0).hd == 1.0);
  }
  SUBCASE("independent random templates sit near 0.5") {
    const IrisTemplate a = random_template(rng, 16, 128);  // 4096 bits
    const IrisTemplate b = random_template(rng, 16, 128);
    const MatchScore score = match(a, b, 0);
    CHECK(score.hd > 0.45);
    CHECK(score.hd < 0.55);
  }
  SUBCASE("hd is symmetric for full masks") {
    const IrisTemplate a = random_template(rng);
    const IrisTemplate b = random_template(rng);
    CHECK(match(a, b, 6).hd == doctest::Approx(match(b, a, 6).hd));
  }
  SUBCASE("applying one circular shift to both leaves hd unchanged") {
    const IrisTemplate a = random_template(rng);
    const IrisTemplate b = random_template(rng);
    auto rotate = [](const IrisTemplate& t, int s) {
      IrisTemplate out = t;
      for (int i = 0; i < t.rows; ++i)
        for (int j = 0; j < t.cols; ++j)
          for (int c = 0; c < 2; ++c) {
            const int src = (i * t.cols + (j - s + t.cols) % t.cols) * 2 + c;
            out.code[(i * t.cols + j) * 2 + c] = t.code[src];
            out.mask[(i * t.cols + j) * 2 + c] = t.mask[src];
          }
      return out;
    };
    const double base = match(a, b, 4).hd;
    CHECK(match(rotate(a, 3), rotate(b, 3), 4).hd == doctest::Approx(base));
  }
  SUBCASE("shifted copy is recovered at the right shift") {
    const IrisTemplate a = random_template(rng);
    IrisTemplate b = a;
    const int s = 5;
    // b's columns hold a advanced by s: b(j) = a(j+s).
    for (int i = 0; i < a.rows; ++i)
      for (int j = 0; j < a.cols; ++j)
        for (int c = 0; c < 2; ++c)
          b.code[(i * a.cols + j) * 2 + c] =
              a.code[(i * a.cols + (j + s) % a.cols) * 2 + c];
    const MatchScore score = match(a, b, 8);
    CHECK(score.hd == 0.0);
    CHECK(score.shift == s);
  }
  SUBCASE("all-masked templates raise no-overlap") {
    IrisTemplate a = random_template(rng);
    IrisTemplate b = random_template(rng);
    std::fill(a.mask.begin(), a.mask.end(), 0);
    CHECK_THROWS_AS(match(a, b, 4), NoOverlapError);
  }
}

TEST_CASE("verification statistics") {
  SUBCASE("perfect separation has zero EER") {
    const VerificationStats stats = verification_stats(
        {0.1, 0.1, 0.1}, {0.9, 0.9, 0.9, 0.9});
    CHECK(stats.eer == doctest::Approx(0.0));
  }
  SUBCASE("identical distributions sit at chance") {
    const VerificationStats stats =
        verification_stats({0.2, 0.4, 0.6}, {0.2, 0.4, 0.6});
    CHECK(stats.eer == doctest::Approx(0.5));
  }
  SUBCASE("textbook DI") {
    // means 0.3 / 0.5, common sigma 0.1 -> DI = 2. Build score lists whose
    // sample stats hit those values exactly.
    const std::vector<double> genuine = {0.2, 0.3, 0.4};   // mean .3, var .01
    const std::vector<double> impostor = {0.4, 0.5, 0.6};  // mean .5, var .01
    const VerificationStats stats = verification_stats(genuine, impostor);
    CHECK(stats.di == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("matches the brute-force EER oracle") {
    Rng rng(74);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<double> genuine, impostor;
      const int ng = rng.uniform_int(2, 100);
      const int ni = rng.uniform_int(2, 100);
      for (int i = 0; i < ng; ++i) genuine.push_back(rng.uniform(0.0, 0.6));
      for (int i = 0; i < ni; ++i) impostor.push_back(rng.uniform(0.3, 1.0));
      const double got = verification_stats(genuine, impostor).eer;
      const double want = oracle::eer_oracle(genuine, impostor);
      CHECK(std::abs(got - want) < 1e-9);
    }
  }
  SUBCASE("empty lists throw") {
    CHECK_THROWS_AS(verification_stats({}, {0.5}), ConfigError);
  }
}

TEST_CASE("template serialization round-trips") {
  Rng rng(75);
  const IrisTemplate tpl = random_template(rng, 8, 96);
  const std::string dir = oracle::make_temp_dir("itpl");
  const std::string path = dir + "/t.itpl";
  write_template(path, tpl);
  const IrisTemplate back = read_template(path);
  CHECK(back.rows == tpl.rows);
  CHECK(back.cols == tpl.cols);
  CHECK(back.code == tpl.code);
  CHECK(back.mask == tpl.mask);
  CHECK_THROWS_AS(read_template(dir + "/nope.itpl"), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("rotated synthetic iris matches its source") {
  Rng rng(76);
  int tried = 0;
  for (int trial = 0; trial < 50; ++trial) {
    SynthSpec spec = random_spec(rng);
    spec.corruption.blob_count = 0;
    spec.corruption.map_noise_sigma = 0.0;
    const double degrees = rng.uniform(-8.0, 8.0);
    const auto [base, rotated] = make_rotated_pair(spec, degrees);
    const int rows = 32, cols = 256;
    const NormalizedIris na = normalize(base.image, base.gt.mask, base.gt.inner,
                                        base.gt.outer, rows, cols);
    const NormalizedIris nb =
        normalize(rotated.image, rotated.gt.mask, rotated.gt.inner,
                  rotated.gt.outer, rows, cols);
    const IrisTemplate ta = encode(na, 12.0, 0.5);
    const IrisTemplate tb = encode(nb, 12.0, 0.5);
    CHECK(match(ta, tb, 16).hd < 0.3);
    ++tried;
  }
  CHECK(tried == 50);
}

TEST_CASE("rotation shows up as a circular column shift of the normalized plane") {
  // 5 degrees at 432 columns is exactly 6 columns, so the two normalized
  // images line up sample-for-sample after the shift; only sensor noise and
  // resampling differ.
  Rng rng(77);
  const int rows = 16, cols = 432;
  for (int trial = 0; trial < 10; ++trial) {
    SynthSpec spec = random_spec(rng);
    const auto [base, rotated] = make_rotated_pair(spec, 5.0);
    const NormalizedIris na = normalize(base.image, base.gt.mask, base.gt.inner,
                                        base.gt.outer, rows, cols);
    const NormalizedIris nb =
        normalize(rotated.image, rotated.gt.mask, rotated.gt.inner,
                  rotated.gt.outer, rows, cols);
    const int shift = 6;  // 5/360 * 432
    double aligned = 0.0, unshifted = 0.0;
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        // Rotating the texture delays the angular signal: nb(j) = na(j - 6).
        const double da = na.pixel(i, (j - shift + cols) % cols) - nb.pixel(i, j);
        const double d0 = na.pixel(i, j) - nb.pixel(i, j);
        aligned += da * da;
        unshifted += d0 * d0;
      }
    }
    aligned = std::sqrt(aligned / (rows * cols));
    unshifted = std::sqrt(unshifted / (rows * cols));
    CHECK(aligned < 0.08);
    CHECK(aligned < 0.5 * unshifted);
  }
}
