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

#include "iris/pgm.hpp"

#include <cctype>
#include <fstream>
#include <vector>

namespace iris {

namespace {

void write_p5(const std::string& path, int w, int h,
              const std::vector<std::uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "P5\n" << w << " " << h << "\n255\n";
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("short write: " + path);
}

int next_header_int(std::istream& in, const std::string& path) {
  // Whitespace and '#' comments are allowed between header tokens.
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  if (c == EOF || !std::isdigit(c)) throw IoError("bad PGM header: " + path);
  int value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > 100000000) throw IoError("implausible PGM header: " + path);
    c = in.get();
  }
  return value;
}

std::vector<std::uint8_t> read_p5(const std::string& path, int* w, int* h) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  char m0 = 0, m1 = 0;
  f.get(m0);
  f.get(m1);
  if (m0 != 'P' || m1 != '5') throw IoError("not a P5 PGM: " + path);
  *w = next_header_int(f, path);
  *h = next_header_int(f, path);
  const int maxval = next_header_int(f, path);
  if (maxval != 255) throw IoError("unsupported PGM maxval: " + path);
  // next_header_int already consumed the single separator after maxval, so
  // the stream now sits on the first raster byte.
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(*w) * *h);
  f.read(reinterpret_cast<char*>(bytes.data()),
         static_cast<std::streamsize>(bytes.size()));
  if (f.gcount() != static_cast<std::streamsize>(bytes.size()))
    throw IoError("truncated PGM raster: " + path);
  return bytes;
}

}  // namespace

void write_pgm(const std::string& path, const GrayImage& img) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(static_cast<std::size_t>(img.width()) * img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) bytes.push_back(img.byte_at(x, y));
  write_p5(path, img.width(), img.height(), bytes);
}

void write_pgm(const std::string& path, const BinaryMask& mask) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(static_cast<std::size_t>(mask.width()) * mask.height());
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x)
      bytes.push_back(mask.get(x, y) ? 255 : 0);
  write_p5(path, mask.width(), mask.height(), bytes);
}

GrayImage read_pgm(const std::string& path) {
  int w = 0, h = 0;
  const auto bytes = read_p5(path, &w, &h);
  GrayImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      img.at(x, y) = bytes[static_cast<std::size_t>(y) * w + x] / 255.0;
  return img;
}

BinaryMask read_pgm_mask(const std::string& path) {
  int w = 0, h = 0;
  const auto bytes = read_p5(path, &w, &h);
  BinaryMask mask(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      mask.set(x, y, bytes[static_cast<std::size_t>(y) * w + x] >= 128);
  return mask;
}

}  // namespace iris
