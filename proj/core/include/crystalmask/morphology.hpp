#pragma once

#include <cstdint>
#include <optional>

#include "crystalmask/image.hpp"
#include "crystalmask/instance.hpp"

namespace crystalmask {

struct PostprocessConfig {
  // Keep-fraction of the intensity distribution; pixels in the top
  // (1 - percentile) of the whole image are treated as bright background.
  double brightness_percentile = 0.85;
  int foreground_connectivity = 8;  // 4 or 8
  int hole_connectivity = 4;        // 4 or 8
  // Fixed intensity cut overriding the per-image percentile when set.
  std::optional<std::uint8_t> brightness_cut;
};

// Adds every background component not connected to the image border.
// Result is a superset of the input; idempotent.
BinaryMask fill_holes(const BinaryMask& mask, int hole_connectivity = 4);

// Keeps the single largest connected component; ties go to the component
// containing the smallest row-major pixel index. Empty in, empty out.
BinaryMask largest_component(const BinaryMask& mask, int connectivity = 8);

// Rasterized convex hull of the unit pixel squares of the input, iterated
// until stable (a single pass can under-fill along shallow edges).
// Superset of the input; one contiguous run per row. Throws EmptyMask.
BinaryMask convex_hull_mask(const BinaryMask& mask);

// Intensity T such that removing pixels >= T removes the brightest
// (1 - percentile) fraction of the whole image (nearest rank), or the
// configured fixed cut.
int brightness_threshold(const GrayImage& image, const PostprocessConfig& cfg = {});

// Drops mask pixels whose image intensity is >= brightness_threshold.
BinaryMask remove_bright_boundary(const BinaryMask& mask, const GrayImage& image,
                                  const PostprocessConfig& cfg = {});

// The five-step pipeline: fill holes, keep largest component, convex
// hull, remove bright boundary, keep largest component again. If any
// intermediate result is empty the original mask is returned unchanged.
BinaryMask postprocess_instance(const BinaryMask& mask, const GrayImage& image,
                                const PostprocessConfig& cfg = {});

// postprocess_instance applied to every instance; ids, classes and scores
// are preserved.
InstanceSet postprocess_set(const InstanceSet& set, const GrayImage& image,
                            const PostprocessConfig& cfg = {});

// Pixels covered by any labeled instance keep their value; everywhere
// else the clipped window mean of the original image, rounded half-up.
GrayImage box_blur_unlabeled(const GrayImage& image, const InstanceSet& labeled,
                             int window = 33);

}  // namespace crystalmask
