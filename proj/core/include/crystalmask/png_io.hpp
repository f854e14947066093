#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crystalmask/image.hpp"

namespace crystalmask {

// Minimal PNG support for the one pixel format the pipeline uses: 8-bit
// grayscale, non-interlaced. The encoder emits stored (uncompressed)
// deflate blocks so output bytes do not depend on any zlib version; the
// decoder inflates through zlib and handles all five row filters.

std::vector<std::uint8_t> encode_png_gray8(const GrayImage& image);
GrayImage decode_png_gray8(const std::vector<std::uint8_t>& bytes);

void write_png_gray8(const GrayImage& image, const std::string& path);
GrayImage read_png_gray8(const std::string& path);

}  // namespace crystalmask
