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

#include "iris/fmap.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

#include "iris/error.hpp"

namespace iris {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

void write_fmap(const std::string& path, const Tensor& t) {
  std::vector<std::uint8_t> buf;
  buf.reserve(20 + 4 * t.data().size());
  buf.insert(buf.end(), {'F', 'M', 'A', 'P'});
  put_u32(buf, kFmapVersion);
  put_u32(buf, static_cast<std::uint32_t>(t.channels()));
  put_u32(buf, static_cast<std::uint32_t>(t.height()));
  put_u32(buf, static_cast<std::uint32_t>(t.width()));
  for (double d : t.data()) {
    const float f = static_cast<float>(d);
    if (!std::isfinite(f)) throw IoError("fmap: non-finite value on write");
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    put_u32(buf, bits);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("short write: " + path);
}

Tensor read_fmap(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::uint8_t header[20];
  in.read(reinterpret_cast<char*>(header), 20);
  if (in.gcount() != 20) throw IoError("truncated fmap header: " + path);
  if (std::memcmp(header, "FMAP", 4) != 0)
    throw IoError("bad fmap magic: " + path);
  if (get_u32(header + 4) != kFmapVersion)
    throw IoError("unsupported fmap version: " + path);
  const std::uint32_t c = get_u32(header + 8);
  const std::uint32_t h = get_u32(header + 12);
  const std::uint32_t w = get_u32(header + 16);
  const std::size_t n = static_cast<std::size_t>(c) * h * w;
  if (n > (1u << 28)) throw IoError("fmap too large: " + path);

  std::vector<std::uint8_t> raw(n * 4);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size()))
    throw IoError("truncated fmap payload: " + path);

  std::vector<double> data(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t bits = get_u32(raw.data() + 4 * i);
    float f;
    std::memcpy(&f, &bits, 4);
    if (!std::isfinite(f)) throw IoError("fmap: non-finite value: " + path);
    data[i] = static_cast<double>(f);
  }
  return Tensor::from_data(static_cast<int>(c), static_cast<int>(h),
                           static_cast<int>(w), std::move(data));
}

}  // namespace iris
