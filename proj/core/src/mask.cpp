#include "crystalmask/mask.hpp"

#include <algorithm>
#include <string>

namespace crystalmask {

BinaryMask make_mask(int width, int height) {
  if (width < 1 || height < 1)
    fail(ErrorCode::InvalidArgument, "mask dimensions must be at least 1x1");
  BinaryMask m;
  m.width = width;
  m.height = height;
  m.pixels.assign(static_cast<std::size_t>(width) * height, 0);
  return m;
}

std::int64_t BinaryMask::area() const {
  return std::count(pixels.begin(), pixels.end(), std::uint8_t{1});
}

RunList encode_rle(const BinaryMask& mask) {
  RunList runs;
  std::uint8_t current = 0;  // runs start with background
  std::int64_t count = 0;
  for (std::uint8_t p : mask.pixels) {
    if (p == current) {
      ++count;
      continue;
    }
    runs.push_back(count);
    current = p;
    count = 1;
  }
  runs.push_back(count);
  return runs;
}

BinaryMask decode_rle(const RunList& runs, int width, int height) {
  BinaryMask mask = make_mask(width, height);
  std::int64_t total = 0;
  for (std::int64_t r : runs) {
    if (r < 0) fail(ErrorCode::SumMismatch, "negative run count");
    total += r;
  }
  const std::int64_t expected = static_cast<std::int64_t>(width) * height;
  if (total != expected)
    fail(ErrorCode::SumMismatch, "run counts total " + std::to_string(total) +
                                     ", expected " + std::to_string(expected));
  std::size_t pos = 0;
  std::uint8_t value = 0;
  for (std::int64_t r : runs) {
    std::fill_n(mask.pixels.begin() + pos, static_cast<std::size_t>(r), value);
    pos += static_cast<std::size_t>(r);
    value ^= 1;
  }
  return mask;
}

std::int64_t intersection_area(const BinaryMask& a, const BinaryMask& b) {
  if (!dims_match(a, b))
    fail(ErrorCode::DimensionMismatch, "mask dimensions differ");
  std::int64_t n = 0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i)
    n += a.pixels[i] & b.pixels[i];
  return n;
}

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b) {
  if (!dims_match(a, b))
    fail(ErrorCode::DimensionMismatch, "mask dimensions differ");
  BinaryMask out = a;
  for (std::size_t i = 0; i < out.pixels.size(); ++i)
    out.pixels[i] |= b.pixels[i];
  return out;
}

void mask_union_into(BinaryMask& acc, const BinaryMask&olhs) {
  if (!dims_match(acc, olhs))
    fail(ErrorCode::DimensionMismatch, "mask dimensions differ");
  for (std::size_t i = 0; i < acc.pixels.size(); ++i)
    acc.pixels[i] |= olhs.pixels[i];
}

}  // namespace crystalmask
