#pragma once

#include <cstdint>
#include <vector>

#include "crystalmask/image.hpp"
#include "crystalmask/instance.hpp"
#include "crystalmask/polygon.hpp"

namespace crystalmask {

// Parameters of a synthetic microscopy-like scene: bright background,
// convex crystals with dark edges and mid-gray interiors.
struct SceneParams {
  int width = 512;
  int height = 512;
  int n_crystals = 20;
  std::int64_t area_min = 80;
  std::int64_t area_max = 600;
  double agglomeration_rate = 0.0;
  double low_conf_rate = 0.0;
  std::uint8_t background_intensity = 230;
  std::uint8_t edge_intensity = 60;
  std::uint8_t interior_intensity = 150;
  std::uint64_t seed = 0;
};

struct Scene {
  GrayImage image;
  InstanceSet ground_truth;
  std::vector<CoarseRegion> regions;
};

// Deterministic scene generation: convex integer-coordinate crystals, an
// agglomeration_rate fraction of them in touching pairs each enclosed by
// an emitted coarse region, confidence levels drawn per low_conf_rate.
// Throws Infeasible when placement fails within 10*n attempts.
Scene generate_scene(const SceneParams& params);

// Controls for simulating imperfect model output.
struct DegradeParams {
  int erode_px = 0;
  int dilate_px = 0;
  double drop_rate = 0;
  double split_rate = 0;  // probability of a concavity bite per instance
  double hole_rate = 0;   // probability of a punched interior hole
  double score_noise = 0;
  std::uint64_t seed = 0;
};

// Per-instance erosion/dilation, concavity bites, punched holes, dropped
// instances and noisy scores; class labels are stripped to unlabeled and
// confidence to none. Deterministic given the seed; masks never come out
// empty (a degradation that would erase an instance is skipped).
InstanceSet degrade(const InstanceSet& gt, const GrayImage& image,
                    const DegradeParams& params);

}  // namespace crystalmask
