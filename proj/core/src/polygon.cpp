#include "crystalmask/polygon.hpp"

#include <algorithm>
#include <cmath>

namespace crystalmask {

namespace {

bool on_segment(double ax, double ay, double bx, double by, double px, double py) {
  double cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
  if (cross != 0.0) return false;
  double dot = (px - ax) * (px - bx) + (py - ay) * (py - by);
  return dot <= 0.0;
}

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

bool point_in_polygon(const std::vector<Vec2>& poly, double px, double py) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const double x1 = poly[j].x, y1 = poly[j].y;
    const double x2 = poly[i].x, y2 = poly[i].y;
    if (on_segment(x1, y1, x2, y2, px, py)) return true;
    if ((y1 > py) != (y2 > py)) {
      // px < x-intercept of the edge at height py, cross-multiplied to
      // keep integer and half-integer cases exact.
      const double lhs = (px - x1) * (y2 - y1);
      const double rhs = (py - y1) * (x2 - x1);
      if (y2 > y1 ? lhs < rhs : lhs > rhs) inside = !inside;
    }
  }
  return inside;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> points) {
  std::sort(points.begin(), points.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t n = points.size();
  if (n < 3) return points;

  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

double polygon_area2(const std::vector<Vec2>& poly) {
  double acc = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++)
    acc += poly[j].x * poly[i].y - poly[i].x * poly[j].y;
  return acc;
}

BinaryMask rasterize_polygon(const std::vector<Vec2>& poly, int width, int height) {
  BinaryMask mask = make_mask(width, height);
  if (poly.size() < 3) return mask;

  double minx = poly[0].x, maxx = poly[0].x, miny = poly[0].y, maxy = poly[0].y;
  for (const Vec2& v : poly) {
    minx = std::min(minx, v.x);
    maxx = std::max(maxx, v.x);
    miny = std::min(miny, v.y);
    maxy = std::max(maxy, v.y);
  }
  const int x0 = std::max(0, static_cast<int>(std::floor(minx - 0.5)));
  const int x1 = std::min(width - 1, static_cast<int>(std::ceil(maxx)));
  const int y0 = std::max(0, static_cast<int>(std::floor(miny - 0.5)));
  const int y1 = std::min(height - 1, static_cast<int>(std::ceil(maxy)));

  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      if (point_in_polygon(poly, x + 0.5, y + 0.5)) mask.set(x, y, true);
  return mask;
}

BinaryMask rasterize_region(const CoarseRegion& region, int width, int height) {
  if (region.polygon.size() < 3)
    fail(ErrorCode::DegeneratePolygon, "polygon needs at least 3 vertices");
  BinaryMask mask = rasterize_polygon(region.polygon, width, height);
  if (mask.area() == 0)
    fail(ErrorCode::DegeneratePolygon, "region covers no pixel center");
  return mask;
}

}  // namespace crystalmask
