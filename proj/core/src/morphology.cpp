#include "crystalmask/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "crystalmask/polygon.hpp"

namespace crystalmask {

namespace {

constexpr int kOffsets8[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                 {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};

void check_connectivity(int connectivity) {
  if (connectivity != 4 && connectivity != 8)
    fail(ErrorCode::InvalidArgument,
         "connectivity must be 4 or 8, got " + std::to_string(connectivity));
}

// Flood fill over pixels with the given value, marking visited.
void flood(const BinaryMask& mask, std::vector<std::uint8_t>& visited,
           std::vector<std::size_t>& stack, std::size_t start, std::uint8_t value,
           int connectivity) {
  const int w = mask.width, h = mask.height;
  const int neighbors = connectivity == 8 ? 8 : 4;
  stack.clear();
  stack.push_back(start);
  visited[start] = 1;
  while (!stack.empty()) {
    const std::size_t idx = stack.back();
    stack.pop_back();
    const int x = static_cast<int>(idx % w);
    const int y = static_cast<int>(idx / w);
    for (int n = 0; n < neighbors; ++n) {
      const int nx = x + kOffsets8[n][0];
      const int ny = y + kOffsets8[n][1];
      if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
      const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
      if (visited[nidx] || mask.pixels[nidx] != value) continue;
      visited[nidx] = 1;
      stack.push_back(nidx);
    }
  }
}

}  // namespace

BinaryMask fill_holes(const BinaryMask& mask, int hole_connectivity) {
  check_connectivity(hole_connectivity);
  const int w = mask.width, h = mask.height;
  std::vector<std::uint8_t> border_bg(mask.pixels.size(), 0);
  std::vector<std::size_t> stack;
  for (int x = 0; x < w; ++x) {
    for (int y : {0, h - 1}) {
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (!mask.pixels[idx] && !border_bg[idx])
        flood(mask, border_bg, stack, idx, 0, hole_connectivity);
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x : {0, w - 1}) {
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (!mask.pixels[idx] && !border_bg[idx])
        flood(mask, border_bg, stack, idx, 0, hole_connectivity);
    }
  }
  BinaryMask out = mask;
  for (std::size_t i = 0; i < out.pixels.size(); ++i)
    if (!out.pixels[i] && !border_bg[i]) out.pixels[i] = 1;
  return out;
}

BinaryMask largest_component(const BinaryMask& mask, int connectivity) {
  check_connectivity(connectivity);
  const int w = mask.width, h = mask.height;
  const int neighbors = connectivity == 8 ? 8 : 4;
  std::vector<std::uint8_t> visited(mask.pixels.size(), 0);
  std::vector<std::size_t> stack, pixels, best_pixels;

  for (std::size_t i = 0; i < mask.pixels.size(); ++i) {
    if (!mask.pixels[i] || visited[i]) continue;
    pixels.clear();
    stack.clear();
    stack.push_back(i);
    visited[i] = 1;
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      pixels.push_back(idx);
      const int x = static_cast<int>(idx % w);
      const int y = static_cast<int>(idx / w);
      for (int n = 0; n < neighbors; ++n) {
        const int nx = x + kOffsets8[n][0];
        const int ny = y + kOffsets8[n][1];
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
        if (visited[nidx] || !mask.pixels[nidx]) continue;
        visited[nidx] = 1;
        stack.push_back(nidx);
      }
    }
    // Components are discovered in order of their smallest row-major
    // pixel index, so keeping strictly larger ones resolves area ties
    // toward the component containing the smallest index.
    if (pixels.size() > best_pixels.size()) best_pixels = pixels;
  }

  BinaryMask out = make_mask(mask.width, mask.height);
  for (std::size_t idx : best_pixels) out.pixels[idx] = 1;
  return out;
}

BinaryMask convex_hull_mask(const BinaryMask& mask) {
  if (mask.area() == 0) fail(ErrorCode::EmptyMask, "convex hull of an empty mask");
  const int w = mask.width, h = mask.height;
  BinaryMask current = mask;
  for (;;) {
    // Hull vertices can only be corners of each row's extreme pixels.
    std::vector<Vec2> corners;
    for (int y = 0; y < h; ++y) {
      int minx = -1, maxx = -1;
      for (int x = 0; x < w; ++x) {
        if (current.at(x, y)) {
          if (minx < 0) minx = x;
          maxx = x;
        }
      }
      if (minx < 0) continue;
      corners.push_back({static_cast<double>(minx), static_cast<double>(y)});
      corners.push_back({static_cast<double>(minx), static_cast<double>(y + 1)});
      corners.push_back({static_cast<double>(maxx + 1), static_cast<double>(y)});
      corners.push_back({static_cast<double>(maxx + 1), static_cast<double>(y + 1)});
    }
    std::vector<Vec2> hull = convex_hull(corners);
    BinaryMask next = rasterize_polygon(hull, w, h);
    if (next == current) return next;
    current = std::move(next);
  }
}

int brightness_threshold(const GrayImage& image, const PostprocessConfig& cfg) {
  if (cfg.brightness_cut) return *cfg.brightness_cut;
  if (!(cfg.brightness_percentile > 0.0 && cfg.brightness_percentile < 1.0))
    fail(ErrorCode::InvalidArgument, "brightness percentile must be in (0,1)");
  std::int64_t hist[256] = {0};
  for (std::uint8_t v : image.data) ++hist[v];
  const std::int64_t total = static_cast<std::int64_t>(image.data.size());
  std::int64_t need =
      total - static_cast<std::int64_t>(std::floor(cfg.brightness_percentile * total + 1e-9));
  if (need < 1) need = 1;
  // Largest t whose suffix count still reaches the required fraction.
  std::int64_t suffix = 0;
  for (int t = 255; t >= 0; --t) {
    suffix += hist[t];
    if (suffix >= need) return t;
  }
  return 0;
}

BinaryMask remove_bright_boundary(const BinaryMask& mask, const GrayImage& image,
                                  const PostprocessConfig& cfg) {
  if (mask.width != image.width || mask.height != image.height)
    fail(ErrorCode::DimensionMismatch, "mask and image dimensions differ");
  const int threshold = brightness_threshold(image, cfg);
  BinaryMask out = mask;
  for (std::size_t i = 0; i < out.pixels.size(); ++i)
    if (out.pixels[i] && image.data[i] >= threshold) out.pixels[i] = 0;
  return out;
}

BinaryMask postprocess_instance(const BinaryMask& mask, const GrayImage& image,
                                const PostprocessConfig& cfg) {
  if (mask.width != image.width || mask.height != image.height)
    fail(ErrorCode::DimensionMismatch, "mask and image dimensions differ");
  if (mask.area() == 0) fail(ErrorCode::EmptyMask, "post-processing an empty mask");

  BinaryMask filled = fill_holes(mask, cfg.hole_connectivity);
  BinaryMask component = largest_component(filled, cfg.foreground_connectivity);
  BinaryMask hull = convex_hull_mask(component);
  BinaryMask trimmed = remove_bright_boundary(hull, image, cfg);
  if (trimmed.area() == 0) return mask;  // never emit an empty instance
  return largest_component(trimmed, cfg.foreground_connectivity);
}

InstanceSet postprocess_set(const InstanceSet& set, const GrayImage& image,
                            const PostprocessConfig& cfg) {
  if (set.width != image.width || set.height != image.height)
    fail(ErrorCode::DimensionMismatch, "instance set and image dimensions differ");
  InstanceSet out = set;
  for (Instance& inst : out.instances)
    inst.mask = postprocess_instance(inst.mask, image, cfg);
  return out;
}

GrayImage box_blur_unlabeled(const GrayImage& image, const InstanceSet& labeled,
                             int window) {
  if (window < 1 || window % 2 == 0)
    fail(ErrorCode::EvenWindow, "blur window must be odd and at least 1");
  if (labeled.width != image.width || labeled.height != image.height)
    fail(ErrorCode::DimensionMismatch, "instance set and image dimensions differ");
  const int w = image.width, h = image.height;

  BinaryMask keep = instances_union(labeled);

  // Summed-area table; (w+1) x (h+1) with a zero first row/column.
  std::vector<std::uint64_t> sat(static_cast<std::size_t>(w + 1) * (h + 1), 0);
  for (int y = 0; y < h; ++y) {
    std::uint64_t row = 0;
    for (int x = 0; x < w; ++x) {
      row += image.at(x, y);
      sat[static_cast<std::size_t>(y + 1) * (w + 1) + (x + 1)] =
          sat[static_cast<std::size_t>(y) * (w + 1) + (x + 1)] + row;
    }
  }
  auto rect_sum = [&](int x0, int y0, int x1, int y1) {  // inclusive corners
    const std::size_t stride = static_cast<std::size_t>(w + 1);
    return sat[(y1 + 1) * stride + (x1 + 1)] - sat[(y0) * stride + (x1 + 1)] -
           sat[(y1 + 1) * stride + (x0)] + sat[(y0) * stride + (x0)];
  };

  const int r = window / 2;
  GrayImage out = image;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (keep.at(x, y)) continue;
      const int x0 = std::max(0, x - r), x1 = std::min(w - 1, x + r);
      const int y0 = std::max(0, y - r), y1 = std::min(h - 1, y + r);
      const std::uint64_t sum = rect_sum(x0, y0, x1, y1);
      const std::uint64_t count =
          static_cast<std::uint64_t>(x1 - x0 + 1) * static_cast<std::uint64_t>(y1 - y0 + 1);
      out.at(x, y) = static_cast<std::uint8_t>((2 * sum + count) / (2 * count));
    }
  }
  return out;
}

}  // namespace crystalmask
