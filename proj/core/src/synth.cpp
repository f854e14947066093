#include "crystalmask/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "crystalmask/rng.hpp"

namespace crystalmask {

namespace {

std::int64_t isqrt(std::int64_t v) {
  if (v < 0) return 0;
  std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

void check_params(const SceneParams& p) {
  if (p.width < 16 || p.height < 16)
    fail(ErrorCode::InvalidArgument, "scene must be at least 16x16");
  if (p.n_crystals < 0)
    fail(ErrorCode::InvalidArgument, "n_crystals must be non-negative");
  if (p.area_min < 4 || p.area_max < p.area_min)
    fail(ErrorCode::InvalidArgument, "need 4 <= area_min <= area_max");
  if (p.agglomeration_rate < 0 || p.agglomeration_rate > 1 || p.low_conf_rate < 0 ||
      p.low_conf_rate > 1)
    fail(ErrorCode::InvalidArgument, "rates must be in [0,1]");
  if (!(p.edge_intensity < p.interior_intensity &&
        p.interior_intensity < p.background_intensity))
    fail(ErrorCode::InvalidArgument, "intensities must satisfy edge < interior < background");
}

void check_params(const DegradeParams& p) {
  if (p.erode_px < 0 || p.dilate_px < 0)
    fail(ErrorCode::InvalidArgument, "erode/dilate must be non-negative");
  for (double rate : {p.drop_rate, p.split_rate, p.hole_rate})
    if (rate < 0 || rate > 1) fail(ErrorCode::InvalidArgument, "rates must be in [0,1]");
  if (p.score_noise < 0)
    fail(ErrorCode::InvalidArgument, "score_noise must be non-negative");
}

// Convex polygon with integer vertices near the origin, covering roughly
// target_area pixels. Scaling by sqrt keeps the draw count fixed.
std::vector<Vec2> random_convex_polygon(Rng& rng, std::int64_t target_area) {
  for (;;) {
    const int k = 6 + static_cast<int>(rng.below(5));  // 6..10 points
    const std::int64_t half = std::max<std::int64_t>(2, isqrt(target_area));
    std::vector<Vec2> points(k);
    for (int i = 0; i < k; ++i) {
      points[i].x = static_cast<double>(rng.range(static_cast<int>(-half), static_cast<int>(half)));
      points[i].y = static_cast<double>(rng.range(static_cast<int>(-half), static_cast<int>(half)));
    }
    std::vector<Vec2> hull = convex_hull(points);
    if (hull.size() < 3) continue;
    const double area = std::abs(polygon_area2(hull)) / 2.0;
    if (area < 2.0) continue;
    const double scale = std::sqrt(static_cast<double>(target_area) / area);
    std::vector<Vec2> scaled(hull.size());
    for (std::size_t i = 0; i < hull.size(); ++i) {
      scaled[i].x = static_cast<double>(std::llround(hull[i].x * scale));
      scaled[i].y = static_cast<double>(std::llround(hull[i].y * scale));
    }
    // Rounding can break convexity; re-hull the scaled vertices.
    std::vector<Vec2> rehulled = convex_hull(scaled);
    if (rehulled.size() < 3) continue;
    return rehulled;
  }
}

std::vector<Vec2> translated(const std::vector<Vec2>& poly, int dx, int dy) {
  std::vector<Vec2> out(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i)
    out[i] = {poly[i].x + dx, poly[i].y + dy};
  return out;
}

bool polygon_in_bounds(const std::vector<Vec2>& poly, int width, int height) {
  for (const Vec2& v : poly)
    if (v.x < 1 || v.x > width - 2 || v.y < 1 || v.y > height - 2) return false;
  return true;
}

// Coarse region around an agglomerated pair: hull of both masks' row
// extreme corners, pushed ~2px outward from the centroid.
CoarseRegion pair_region(const BinaryMask& a, const BinaryMask& b) {
  std::vector<Vec2> corners;
  const int w = a.width, h = a.height;
  for (int y = 0; y < h; ++y) {
    int minx = -1, maxx = -1;
    for (int x = 0; x < w; ++x) {
      if (a.at(x, y) || b.at(x, y)) {
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
  double cx = 0, cy = 0;
  for (const Vec2& v : hull) {
    cx += v.x;
    cy += v.y;
  }
  cx /= static_cast<double>(hull.size());
  cy /= static_cast<double>(hull.size());

  CoarseRegion region;
  for (const Vec2& v : hull) {
    const double dx = v.x - cx, dy = v.y - cy;
    const double len = std::sqrt(dx * dx + dy * dy);
    double ox = v.x, oy = v.y;
    if (len > 0) {
      ox += 2.0 * dx / len;
      oy += 2.0 * dy / len;
    }
    ox = std::clamp(ox, 0.0, static_cast<double>(w));
    oy = std::clamp(oy, 0.0, static_cast<double>(h));
    region.polygon.push_back({static_cast<double>(std::llround(ox)),
                              static_cast<double>(std::llround(oy))});
  }
  return region;
}

void paint_crystal(GrayImage& image, const BinaryMask& mask, std::uint8_t edge,
                   std::uint8_t interior) {
  const int w = mask.width, h = mask.height;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y)) continue;
      const bool boundary = x == 0 || x == w - 1 || y == 0 || y == h - 1 ||
                            !mask.at(x - 1, y) || !mask.at(x + 1, y) ||
                            !mask.at(x, y - 1) || !mask.at(x, y + 1);
      image.at(x, y) = boundary ? edge : interior;
    }
  }
}

BinaryMask erode4(const BinaryMask& mask) {
  BinaryMask out = mask;
  const int w = mask.width, h = mask.height;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (mask.at(x, y)) {
        const bool keep = x > 0 && x < w - 1 && y > 0 && y < h - 1 &&
                          mask.at(x - 1, y) && mask.at(x + 1, y) &&
                          mask.at(x, y - 1) && mask.at(x, y + 1);
        if (!keep) out.set(x, y, false);
      }
  return out;
}

BinaryMask dilate4(const BinaryMask& mask) {
  BinaryMask out = mask;
  const int w = mask.width, h = mask.height;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (!mask.at(x, y)) {
        const bool grow = (x > 0 && mask.at(x - 1, y)) || (x < w - 1 && mask.at(x + 1, y)) ||
                          (y > 0 && mask.at(x, y - 1)) || (y < h - 1 && mask.at(x, y + 1));
        if (grow) out.set(x, y, true);
      }
  return out;
}

std::vector<std::size_t> interior_pixels(const BinaryMask& mask) {
  std::vector<std::size_t> interior;
  const int w = mask.width, h = mask.height;
  for (int y = 1; y < h - 1; ++y)
    for (int x = 1; x < w - 1; ++x) {
      if (!mask.at(x, y)) continue;
      bool all = true;
      for (int dy = -1; dy <= 1 && all; ++dy)
        for (int dx = -1; dx <= 1 && all; ++dx)
          if (!mask.at(x + dx, y + dy)) all = false;
      if (all) interior.push_back(static_cast<std::size_t>(y) * w + x);
    }
  return interior;
}

std::vector<std::size_t> boundary_pixels(const BinaryMask& mask) {
  std::vector<std::size_t> boundary;
  const int w = mask.width, h = mask.height;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y)) continue;
      const bool edge = x == 0 || x == w - 1 || y == 0 || y == h - 1 ||
                        !mask.at(x - 1, y) || !mask.at(x + 1, y) ||
                        !mask.at(x, y - 1) || !mask.at(x, y + 1);
      if (edge) boundary.push_back(static_cast<std::size_t>(y) * w + x);
    }
  return boundary;
}

}  // namespace

Scene generate_scene(const SceneParams& params) {
  check_params(params);
  Rng rng(params.seed);

  Scene scene;
  scene.image = make_gray_image(params.width, params.height, params.background_intensity);
  scene.ground_truth.width = params.width;
  scene.ground_truth.height = params.height;

  const int n = params.n_crystals;
  if (n == 0) return scene;

  const int n_pairs = static_cast<int>(
      std::floor(static_cast<double>(n) * params.agglomeration_rate / 2.0 + 1e-9));

  BinaryMask occupancy = make_mask(params.width, params.height);
  std::vector<BinaryMask> masks;
  std::vector<std::pair<int, int>> centers;
  std::vector<std::int64_t> areas;

  std::int64_t attempts = static_cast<std::int64_t>(10) * n;
  for (int i = 0; i < n; ++i) {
    const bool pair_second = i < 2 * n_pairs && (i % 2) == 1;
    for (;;) {
      if (attempts-- <= 0)
        fail(ErrorCode::Infeasible,
             "could not place " + std::to_string(n) + " crystals in 10*n attempts");

      const std::int64_t target =
          params.area_min +
          static_cast<std::int64_t>(rng.below(
              static_cast<std::uint64_t>(params.area_max - params.area_min + 1)));
      const int margin = static_cast<int>(isqrt(target)) * 2 + 4;
      if (2 * margin >= params.width || 2 * margin >= params.height)
        fail(ErrorCode::Infeasible, "crystals too large for the scene");

      int cx, cy;
      if (pair_second) {
        // Aim the center at a touching distance from the partner: a bit
        // under the sum of the two effective radii, random direction.
        const double r1 = std::sqrt(static_cast<double>(areas[i - 1]));
        const double r2 = std::sqrt(static_cast<double>(target));
        const double dist = 0.55 * (r1 + r2) + static_cast<double>(rng.range(-2, 2));
        const int dx = rng.range(-1000, 1000);
        const int dy = rng.range(-1000, 1000);
        const double len = std::sqrt(static_cast<double>(dx) * dx +
                                     static_cast<double>(dy) * dy);
        if (len < 1.0) continue;
        cx = centers[i - 1].first + static_cast<int>(std::llround(dist * dx / len));
        cy = centers[i - 1].second + static_cast<int>(std::llround(dist * dy / len));
      } else {
        cx = rng.range(margin, params.width - 1 - margin);
        cy = rng.range(margin, params.height - 1 - margin);
      }

      const std::vector<Vec2> poly =
          translated(random_convex_polygon(rng, target), cx, cy);
      if (!polygon_in_bounds(poly, params.width, params.height)) continue;

      BinaryMask mask = rasterize_polygon(poly, params.width, params.height);
      const std::int64_t area = mask.area();
      if (area < std::max<std::int64_t>(4, params.area_min / 2) ||
          area > params.area_max * 2)
        continue;

      if (pair_second) {
        const BinaryMask& partner = masks[i - 1];
        const std::int64_t partner_inter = intersection_area(mask, partner);
        // Touching but under half of either crystal, so confidence
        // assignment stays unambiguous.
        const std::int64_t cap =
            std::min(area, areas[i - 1]) * 45 / 100;
        if (partner_inter < 1 || partner_inter > cap) continue;
        BinaryMask others = occupancy;
        for (std::size_t px = 0; px < others.pixels.size(); ++px)
          if (partner.pixels[px]) others.pixels[px] = 0;
        if (intersection_area(mask, others) != 0) continue;
      } else {
        if (intersection_area(mask, occupancy) != 0) continue;
      }

      mask_union_into(occupancy, mask);
      masks.push_back(std::move(mask));
      centers.emplace_back(cx, cy);
      areas.push_back(area);
      break;
    }
  }

  // Confidence draws happen after placement in crystal order so the
  // placement loop's variable draw count cannot shift them.
  std::vector<ConfidenceLevel> confidence(n);
  for (int i = 0; i < n; ++i)
    confidence[i] =
        rng.unit() < params.low_conf_rate ? ConfidenceLevel::Low : ConfidenceLevel::High;

  for (int i = 0; i < n; ++i) {
    Instance inst;
    inst.id = i + 1;
    inst.mask = masks[i];
    inst.class_label = i < 2 * n_pairs ? ClassLabel::Agglomerated : ClassLabel::Single;
    inst.confidence = confidence[i];
    scene.ground_truth.instances.push_back(std::move(inst));
  }

  for (int p = 0; p < n_pairs; ++p)
    scene.regions.push_back(pair_region(masks[2 * p], masks[2 * p + 1]));

  for (int i = 0; i < n; ++i)
    paint_crystal(scene.image, masks[i], params.edge_intensity,
                  params.interior_intensity);

  return scene;
}

InstanceSet degrade(const InstanceSet& gt, const GrayImage& image,
                    const DegradeParams& params) {
  check_params(params);
  if (gt.width != image.width || gt.height != image.height)
    fail(ErrorCode::DimensionMismatch, "instance set and image dimensions differ");
  Rng rng(params.seed);

  InstanceSet out;
  out.width = gt.width;
  out.height = gt.height;
  out.source_image = gt.source_image;

  for (const Instance& inst : gt.instances) {
    const double u_drop = rng.unit();
    const double u_bite = rng.unit();
    const double u_hole = rng.unit();
    double z = 0;  // Irwin-Hall approximate gaussian, integer-only draws
    for (int i = 0; i < 12; ++i) z += rng.unit();
    z -= 6.0;

    if (u_drop < params.drop_rate) continue;

    BinaryMask mask = inst.mask;
    for (int e = 0; e < params.erode_px; ++e) {
      BinaryMask eroded = erode4(mask);
      if (eroded.area() == 0) break;
      mask = std::move(eroded);
    }
    for (int d = 0; d < params.dilate_px; ++d) mask = dilate4(mask);

    if (u_bite < params.split_rate) {
      const std::vector<std::size_t> boundary = boundary_pixels(mask);
      if (!boundary.empty()) {
        const std::size_t at = boundary[rng.below(boundary.size())];
        const int bx = static_cast<int>(at % mask.width);
        const int by = static_cast<int>(at / mask.width);
        int minx = mask.width, maxx = -1, miny = mask.height, maxy = -1;
        for (int y = 0; y < mask.height; ++y)
          for (int x = 0; x < mask.width; ++x)
            if (mask.at(x, y)) {
              minx = std::min(minx, x);
              maxx = std::max(maxx, x);
              miny = std::min(miny, y);
              maxy = std::max(maxy, y);
            }
        const int extent = std::min(maxx - minx, maxy - miny);
        const int radius = 1 + static_cast<int>(rng.below(
                                   static_cast<std::uint64_t>(std::max(1, extent / 3))));
        BinaryMask bitten = mask;
        for (int y = std::max(0, by - radius); y <= std::min(mask.height - 1, by + radius); ++y)
          for (int x = std::max(0, bx - radius); x <= std::min(mask.width - 1, bx + radius); ++x)
            if ((x - bx) * (x - bx) + (y - by) * (y - by) <= radius * radius)
              bitten.set(x, y, false);
        if (bitten.area() > 0) mask = std::move(bitten);
      }
    }

    if (u_hole < params.hole_rate) {
      const std::vector<std::size_t> interior = interior_pixels(mask);
      if (!interior.empty()) {
        const std::size_t at = interior[rng.below(interior.size())];
        mask.pixels[at] = 0;
      }
    }

    Instance degraded;
    degraded.id = inst.id;
    degraded.mask = std::move(mask);
    degraded.class_label = ClassLabel::Unlabeled;
    degraded.confidence = ConfidenceLevel::None;
    double score = 1.0 - std::abs(z) * params.score_noise;
    score = std::clamp(score, 0.0, 1.0);
    degraded.score = static_cast<double>(std::llround(score * 1000.0)) / 1000.0;
    out.instances.push_back(std::move(degraded));
  }
  return out;
}

}  // namespace crystalmask
