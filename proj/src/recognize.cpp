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

#include "iris/recognize.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>

namespace iris {

namespace {

using Cplx = std::complex<double>;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 FFT; sign = -1 forward, +1 inverse (unscaled).
void fft_pow2(std::vector<Cplx>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const Cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Cplx u = a[i + k];
        const Cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// O(n^2) fallback so arbitrary row lengths keep working at desk scale.
std::vector<Cplx> dft(const std::vector<Cplx>& a, int sign) {
  const std::size_t n = a.size();
  std::vector<Cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sign * 2.0 * std::numbers::pi *
                         static_cast<double>(k) * static_cast<double>(j) /
                         static_cast<double>(n);
      acc += a[j] * Cplx(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

std::vector<Cplx> transform(std::vector<Cplx> a, int sign) {
  if (is_power_of_two(a.size())) {
    fft_pow2(a, sign);
    return a;
  }
  return dft(a, sign);
}

}  // namespace

NormalizedIris normalize(const GrayImage& img, const BinaryMask& mask,
                         const Circle& inner, const Circle& outer, int rows,
                         int cols) {
  if (rows < 1 || cols < 1) throw ConfigError("normalize: bad grid size");
  if (!(inner.r > 0.0) || inner.r >= outer.r)
    throw GeometryError("normalize: need 0 < inner.r < outer.r");
  if (img.width() != mask.width() || img.height() != mask.height())
    throw ShapeError("normalize: image/mask size mismatch");
  for (const Circle& c : {inner, outer}) {
    if (c.cx < 0.0 || c.cx >= img.width() || c.cy < 0.0 || c.cy >= img.height())
      throw GeometryError("normalize: circle center outside the image");
  }

  NormalizedIris out;
  out.rows = rows;
  out.cols = cols;
  out.pixels.resize(static_cast<std::size_t>(rows) * cols);
  out.valid.resize(out.pixels.size());
  for (int j = 0; j < cols; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / cols;
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const double ix = inner.cx + inner.r * ct;
    const double iy = inner.cy + inner.r * st;
    const double ox = outer.cx + outer.r * ct;
    const double oy = outer.cy + outer.r * st;
    for (int i = 0; i < rows; ++i) {
      const double t = (i + 0.5) / rows;
      const double px = ix + t * (ox - ix);
      const double py = iy + t * (oy - iy);
      const std::size_t idx = static_cast<std::size_t>(i) * cols + j;
      out.pixels[idx] = bilinear_at(img, px, py);
      const int nx = static_cast<int>(std::lround(px));
      const int ny = static_cast<int>(std::lround(py));
      out.valid[idx] = (mask.in_bounds(nx, ny) && mask.get(nx, ny)) ? 1 : 0;
    }
  }
  return out;
}

IrisTemplate encode(const NormalizedIris& norm, double wavelength,
                    double sigma_ratio) {
  if (wavelength < 2.0) throw ConfigError("encode: wavelength < 2 samples");
  if (norm.cols < 2.0 * wavelength)
    throw ConfigError("encode: need cols >= 2*wavelength");
  if (!(sigma_ratio > 0.0 && sigma_ratio < 1.0))
    throw ConfigError("encode: sigma_ratio must be in (0,1)");

  const int n = norm.cols;
  const double f0 = 1.0 / wavelength;
  const double denom = 2.0 * std::log(sigma_ratio) * std::log(sigma_ratio);
  std::vector<double> filter(static_cast<std::size_t>(n), 0.0);
  for (int u = 1; u <= n / 2; ++u) {
    const double f = static_cast<double>(u) / n;
    const double lr = std::log(f / f0);
    filter[u] = std::exp(-(lr * lr) / denom);
  }

  IrisTemplate tpl;
  tpl.rows = norm.rows;
  tpl.cols = norm.cols;
  tpl.code.assign(2 * static_cast<std::size_t>(norm.rows) * norm.cols, 0);
  tpl.mask.assign(tpl.code.size(), 0);

  std::vector<Cplx> row(static_cast<std::size_t>(n));
  for (int i = 0; i < norm.rows; ++i) {
    for (int j = 0; j < n; ++j) row[j] = Cplx(norm.pixel(i, j), 0.0);
    std::vector<Cplx> spec = transform(row, -1);
    for (int u = 0; u < n; ++u) spec[u] *= filter[u];
    std::vector<Cplx> resp = transform(std::move(spec), +1);
    const double scale = 1.0 / n;
    for (int j = 0; j < n; ++j) {
      const Cplx v = resp[j] * scale;
      const std::size_t base = (static_cast<std::size_t>(i) * n + j) * 2;
      tpl.code[base] = v.real() > 0.0 ? 1 : 0;
      tpl.code[base + 1] = v.imag() > 0.0 ? 1 : 0;
      const bool usable = norm.is_valid(i, j) && std::abs(v) >= 1e-9;
      tpl.mask[base] = usable ? 1 : 0;
      tpl.mask[base + 1] = usable ? 1 : 0;
    }
  }
  return tpl;
}

namespace {

// Disagreement and coverage for one circular column shift of b, accumulated
// over the two contiguous column spans so the inner loops stay linear.
void shift_counts(const IrisTemplate& a, const IrisTemplate& b, int shift,
                  std::uint64_t* diff, std::uint64_t* valid) {
  const int cols = a.cols;
  const int s = ((shift % cols) + cols) % cols;
  *diff = 0;
  *valid = 0;
  for (int i = 0; i < a.rows; ++i) {
    const std::size_t row_a = static_cast<std::size_t>(i) * cols * 2;
    // Columns j in [s, cols) line up with b columns j-s; [0, s) wrap around.
    const struct {
      std::size_t a_off, b_off, len;
    } spans[2] = {
        {row_a + 2 * static_cast<std::size_t>(s), row_a,
         2 * static_cast<std::size_t>(cols - s)},
        {row_a, row_a + 2 * static_cast<std::size_t>(cols - s),
         2 * static_cast<std::size_t>(s)}};
    for (const auto& span : spans) {
      const std::uint8_t* ca = a.code.data() + span.a_off;
      const std::uint8_t* cb = b.code.data() + span.b_off;
      const std::uint8_t* ma = a.mask.data() + span.a_off;
      const std::uint8_t* mb = b.mask.data() + span.b_off;
      std::uint64_t d = 0, v = 0;
      for (std::size_t k = 0; k < span.len; ++k) {
        const std::uint8_t use = ma[k] & mb[k];
        v += use;
        d += use & (ca[k] ^ cb[k]);
      }
      *diff += d;
      *valid += v;
    }
  }
}

}  // namespace

MatchScore match(const IrisTemplate& a, const IrisTemplate& b, int max_shift) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw ShapeError("match: template shapes differ");
  if (max_shift < 0 || max_shift >= a.cols)
    throw ConfigError("match: max_shift out of range");

  MatchScore best;
  best.hd = std::numeric_limits<double>::infinity();
  bool any = false;
  auto try_shift = [&](int s) {
    std::uint64_t diff = 0, valid = 0;
    shift_counts(a, b, s, &diff, &valid);
    if (valid == 0) return;
    any = true;
    const double hd = static_cast<double>(diff) / static_cast<double>(valid);
    if (hd < best.hd) {
      best.hd = hd;
      best.shift = s;
      best.valid_bits = valid;
    }
  };
  try_shift(0);
  for (int s = 1; s <= max_shift; ++s) {
    try_shift(s);
    try_shift(-s);
  }
  if (!any) throw NoOverlapError("match: no mutually valid bits at any shift");
  return best;
}

VerificationStats verification_stats(const std::vector<double>& genuine,
                                     const std::vector<double>& impostor) {
  if (genuine.empty() || impostor.empty())
    throw ConfigError("verification_stats: empty score list");

  VerificationStats stats;
  stats.genuine_scores = genuine;
  stats.impostor_scores = impostor;

  std::vector<double> gen = genuine, imp = impostor;
  std::sort(gen.begin(), gen.end());
  std::sort(imp.begin(), imp.end());

  std::vector<double> thresholds = gen;
  thresholds.insert(thresholds.end(), imp.begin(), imp.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  auto far_at = [&](double t) {
    const auto n = std::upper_bound(imp.begin(), imp.end(), t) - imp.begin();
    return static_cast<double>(n) / imp.size();
  };
  auto frr_at = [&](double t) {
    const auto n = gen.end() - std::upper_bound(gen.begin(), gen.end(), t);
    return static_cast<double>(n) / gen.size();
  };

  // far - frr is non-decreasing in t; below the smallest score it is -1.
  double prev_far = 0.0, prev_frr = 1.0;
  stats.eer = 0.5;
  for (double t : thresholds) {
    const double far = far_at(t);
    const double frr = frr_at(t);
    const double d = far - frr;
    if (d >= 0.0) {
      if (d == 0.0) {
        stats.eer = far;
      } else {
        const double prev_d = prev_far - prev_frr;
        const double u = -prev_d / (d - prev_d);  // prev_d < 0 <= d
        stats.eer = prev_far + u * (far - prev_far);
      }
      break;
    }
    prev_far = far;
    prev_frr = frr;
  }

  auto mean = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  };
  auto variance = [&](const std::vector<double>& v, double m) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / (v.size() - 1);
  };
  const double mg = mean(gen), mi = mean(imp);
  const double vg = variance(gen, mg), vi = variance(imp, mi);
  const double denom = std::sqrt(0.5 * (vg + vi));
  if (denom > 0.0) {
    stats.di = std::abs(mg - mi) / denom;
  } else {
    stats.di = mg == mi ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return stats;
}

namespace {

std::vector<std::uint8_t> pack_bits(const std::vector<std::uint8_t>& bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) bytes[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  }
  return bytes;
}

std::vector<std::uint8_t> unpack_bits(const std::vector<std::uint8_t>& bytes,
                                      std::size_t nbits) {
  std::vector<std::uint8_t> bits(nbits, 0);
  for (std::size_t i = 0; i < nbits; ++i)
    bits[i] = (bytes[i / 8] >> (i % 8)) & 1u;
  return bits;
}

void put_u32_le(std::ofstream& out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v & 0xff),
                     static_cast<char>((v >> 8) & 0xff),
                     static_cast<char>((v >> 16) & 0xff),
                     static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

std::uint32_t get_u32_le(std::ifstream& in, const std::string& path) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (in.gcount() != 4) throw IoError("truncated template: " + path);
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_template(const std::string& path, const IrisTemplate& tpl) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write("ITPL", 4);
  put_u32_le(out, static_cast<std::uint32_t>(tpl.rows));
  put_u32_le(out, static_cast<std::uint32_t>(tpl.cols));
  const auto code = pack_bits(tpl.code);
  const auto mask = pack_bits(tpl.mask);
  out.write(reinterpret_cast<const char*>(code.data()),
            static_cast<std::streamsize>(code.size()));
  out.write(reinterpret_cast<const char*>(mask.data()),
            static_cast<std::streamsize>(mask.size()));
  if (!out) throw IoError("short write: " + path);
}

IrisTemplate read_template(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || std::string(magic, 4) != "ITPL")
    throw IoError("bad template magic: " + path);
  IrisTemplate tpl;
  tpl.rows = static_cast<int>(get_u32_le(in, path));
  tpl.cols = static_cast<int>(get_u32_le(in, path));
  if (tpl.rows < 1 || tpl.cols < 1 ||
      static_cast<std::size_t>(tpl.rows) * tpl.cols > (1u << 26))
    throw IoError("implausible template size: " + path);
  const std::size_t nbits = 2 * static_cast<std::size_t>(tpl.rows) * tpl.cols;
  const std::size_t nbytes = (nbits + 7) / 8;
  std::vector<std::uint8_t> code(nbytes), mask(nbytes);
  in.read(reinterpret_cast<char*>(code.data()),
          static_cast<std::streamsize>(nbytes));
  in.read(reinterpret_cast<char*>(mask.data()),
          static_cast<std::streamsize>(nbytes));
  if (!in || in.gcount() != static_cast<std::streamsize>(nbytes))
    throw IoError("truncated template: " + path);
  tpl.code = unpack_bits(code, nbits);
  tpl.mask = unpack_bits(mask, nbits);
  return tpl;
}

}  // namespace iris
