#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "crystalmask/error.hpp"

namespace crystalmask {

// Alternating run counts over the row-major pixel sequence. The first
// count is the number of leading background pixels and may be zero; the
// counts always total width*height.
using RunList = std::vector<std::int64_t>;

// Per-instance pixel membership raster, row-major, one byte per pixel
// holding exactly 0 or 1.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  bool at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x] != 0;
  }
  void set(int x, int y, bool value) {
    pixels[static_cast<std::size_t>(y) * width + x] = value ? 1 : 0;
  }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  std::int64_t area() const;

  bool operator==(const BinaryMask&) const = default;
};

BinaryMask make_mask(int width, int height);

inline bool dims_match(const BinaryMask& a, const BinaryMask& b) {
  return a.width == b.width && a.height == b.height;
}

RunList encode_rle(const BinaryMask& mask);

// Throws SumMismatch when the counts do not total width*height.
BinaryMask decode_rle(const RunList& runs, int width, int height);

std::int64_t intersection_area(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b);
void mask_union_into(BinaryMask& acc, const BinaryMask& m);

}  // namespace crystalmask
