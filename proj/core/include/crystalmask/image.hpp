#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "crystalmask/error.hpp"

namespace crystalmask {

// 8-bit single-channel raster, row-major. 0 is dark, 255 is bright.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  std::uint8_t at(int x, int y) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  std::uint8_t& at(int x, int y) {
    return data[static_cast<std::size_t>(y) * width + x];
  }

  bool operator==(const GrayImage&) const = default;
};

inline GrayImage make_gray_image(int width, int height, std::uint8_t fill = 0) {
  if (width < 1 || height < 1)
    fail(ErrorCode::InvalidArgument, "image dimensions must be at least 1x1");
  GrayImage img;
  img.width = width;
  img.height = height;
  img.data.assign(static_cast<std::size_t>(width) * height, fill);
  return img;
}

inline void validate(const GrayImage& img) {
  if (img.width < 1 || img.height < 1)
    fail(ErrorCode::InvalidArgument, "image dimensions must be at least 1x1");
  if (img.data.size() != static_cast<std::size_t>(img.width) * img.height)
    fail(ErrorCode::InvalidArgument, "image data length does not match dimensions");
}

}  // namespace crystalmask
