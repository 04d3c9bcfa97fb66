//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrkit/phash.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "ocsrkit/errors.h"

namespace ocsrkit {
namespace {

constexpr int kSize = 32;

void skip_space_and_comments(std::istream &in) {
  for (;;) {
    int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      in.get();
    } else {
      return;
    }
  }
}

int read_header_int(std::istream &in) {
  skip_space_and_comments(in);
  int v = -1;
  if (!(in >> v) || v < 0)
    throw Error("PGM: malformed header");
  return v;
}

std::array<double, kSize * kSize> resize32(const GrayImage &img) {
  std::array<double, kSize * kSize> out{};
  const double sx = static_cast<double>(img.width) / kSize;
  const double sy = static_cast<double>(img.height) / kSize;
  for (int y = 0; y < kSize; ++y) {
    double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, img.height - 1.0);
    int y0 = static_cast<int>(fy);
    int y1 = std::min(y0 + 1, img.height - 1);
    double wy = fy - y0;
    for (int x = 0; x < kSize; ++x) {
      double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, img.width - 1.0);
      int x0 = static_cast<int>(fx);
      int x1 = std::min(x0 + 1, img.width - 1);
      double wx = fx - x0;
      double top = img.at(x0, y0) * (1 - wx) + img.at(x1, y0) * wx;
      double bot = img.at(x0, y1) * (1 - wx) + img.at(x1, y1) * wx;
      out[y * kSize + x] = top * (1 - wy) + bot * wy;
    }
  }
  return out;
}

}  // namespace

GrayImage read_pgm(std::istream &in) {
  char magic[2] = {};
  if (!in.read(magic, 2) || magic[0] != 'P' || magic[1] != '5')
    throw Error("PGM: expected P5 magic");
  int w = read_header_int(in);
  int h = read_header_int(in);
  int maxval = read_header_int(in);
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255)
    throw Error("PGM: unsupported dimensions or maxval");
  in.get();  // single whitespace before raster
  GrayImage img(w, h);
  if (!in.read(reinterpret_cast<char *>(img.pixels.data()),
               static_cast<std::streamsize>(img.pixels.size())))
    throw Error("PGM: truncated raster");
  if (maxval != 255)
    for (auto &p: img.pixels)
      p = static_cast<std::uint8_t>(std::min(255, (p * 255 + maxval / 2) / maxval));
  return img;
}

GrayImage read_pgm_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open " + path);
  return read_pgm(in);
}

void write_pgm(std::ostream &out, const GrayImage &img) {
  out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char *>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
}

PHash phash64(const GrayImage &img) {
  if (img.width < 8 || img.height < 8)
    throw ImageTooSmall("p-hash needs at least 8x8 pixels");
  const auto px = resize32(img);

  // cos_table[k][n] = cos((2n+1) k pi / 64) for k < 9.
  std::array<std::array<double, kSize>, 9> cos_table{};
  for (int k = 0; k < 9; ++k)
    for (int n = 0; n < kSize; ++n)
      cos_table[k][n] = std::cos((2 * n + 1) * k * std::numbers::pi / (2 * kSize));

  // Row pass: rows[y][v] for v < 9.
  std::array<std::array<double, 9>, kSize> rows{};
  for (int y = 0; y < kSize; ++y)
    for (int v = 0; v < 9; ++v) {
      double s = 0;
      for (int x = 0; x < kSize; ++x)
        s += px[y * kSize + x] * cos_table[v][x];
      rows[y][v] = s;
    }
  auto coeff = [&](int u, int v) {
    double s = 0;
    for (int y = 0; y < kSize; ++y)
      s += rows[y][v] * cos_table[u][y];
    return s;
  };

  std::array<double, 64> c{};
  int i = 0;
  for (int u = 0; u < 8; ++u)
    for (int v = 0; v < 8; ++v)
      if (u != 0 || v != 0)
        c[i++] = coeff(u, v);
  c[i] = coeff(0, 8);

  auto sorted = c;
  std::sort(sorted.begin(), sorted.end());
  const double median = (sorted[31] + sorted[32]) / 2;
  PHash h;
  for (int k = 0; k < 64; ++k)
    if (c[k] > median)
      h.bits |= std::uint64_t{ 1 } << k;
  return h;
}

std::string to_hex(PHash h) {
  static const char *digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 0; i < 16; ++i)
    s[15 - i] = digits[(h.bits >> (4 * i)) & 0xf];
  return s;
}

std::vector<std::size_t> dedup(std::span<const HashedItem> items,
                               int threshold) {
  if (threshold < 0 || threshold > 64)
    throw std::invalid_argument("dedup threshold must be in [0, 64]");
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < items.size(); ++i) {
    bool fresh = std::all_of(kept.begin(), kept.end(), [&](std::size_t k) {
      return hamming(items[i].hash, items[k].hash) > threshold;
    });
    if (fresh)
      kept.push_back(i);
  }
  return kept;
}

}  // namespace ocsrkit
