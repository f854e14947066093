#pragma once

#include <vector>

#include "crystalmask/mask.hpp"

namespace crystalmask {

struct Vec2 {
  double x = 0;
  double y = 0;

  bool operator==(const Vec2&) const = default;
};

// Hand-circled annotation region; vertices in pixel coordinates,
// implicitly closed.
struct CoarseRegion {
  std::vector<Vec2> polygon;

  bool operator==(const CoarseRegion&) const = default;
};

// Even-odd membership test. Points exactly on the boundary count as
// inside. Comparisons are cross-multiplied so integer and half-integer
// inputs are decided exactly.
bool point_in_polygon(const std::vector<Vec2>& poly, double px, double py);

// Convex hull by monotone chain, counter-clockwise, collinear points
// dropped. Inputs with fewer than 3 distinct points come back as-is.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

// Twice the signed area (shoelace); positive for counter-clockwise rings.
double polygon_area2(const std::vector<Vec2>& poly);

// Pixel (x, y) is set iff its center (x+0.5, y+0.5) lies inside the
// polygon; pixels outside the image are clipped. Polygons with fewer than
// 3 vertices rasterize empty.
BinaryMask rasterize_polygon(const std::vector<Vec2>& poly, int width, int height);

// rasterize_polygon plus the region contract: throws DegeneratePolygon
// when the polygon has fewer than 3 vertices or covers no pixel center.
BinaryMask rasterize_region(const CoarseRegion& region, int width, int height);

}  // namespace crystalmask
