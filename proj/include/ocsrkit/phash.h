//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_PHASH_H_
#define OCSRKIT_PHASH_H_

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ocsrkit {

// 8-bit grayscale raster, row-major.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) { }

  std::uint8_t at(int x, int y) const { return pixels[y * width + x]; }
  std::uint8_t &at(int x, int y) { return pixels[y * width + x]; }
};

// Binary PGM (P5), maxval <= 255. Throws std::runtime_error on bad input.
GrayImage read_pgm(std::istream &in);
GrayImage read_pgm_file(const std::string &path);
void write_pgm(std::ostream &out, const GrayImage &img);

struct PHash {
  std::uint64_t bits = 0;

  friend bool operator==(PHash, PHash) = default;
};

// Bilinear resize to 32x32 (pixel-centre sampling), 2D DCT-II, then the
// coefficients (u, v) with u, v < 8 except (0, 0), followed by (0, 8); u is
// the vertical frequency. Bit i is set when coefficient i exceeds the median
// of the 64. Throws ImageTooSmall below 8x8.
PHash phash64(const GrayImage &img);

inline int hamming(PHash a, PHash b) { return std::popcount(a.bits ^ b.bits); }

std::string to_hex(PHash h);

struct HashedItem {
  std::string id;
  PHash hash;
};

// Greedy first-wins scan: an item is kept when its distance to every kept
// item exceeds `threshold`. Returns indices into `items`.
std::vector<std::size_t> dedup(std::span<const HashedItem> items,
                               int threshold = 10);

}  // namespace ocsrkit

#endif  // OCSRKIT_PHASH_H_
