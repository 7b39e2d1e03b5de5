#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "timedist/geometry.hpp"

namespace timedist::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Point2 random_point(Rng& rng, double lo, double hi) {
  return {uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

inline Velocity2 random_velocity(Rng& rng, double max_speed, double min_speed = 0.05) {
  while (true) {
    const Velocity2 v{uniform(rng, -max_speed, max_speed), uniform(rng, -max_speed, max_speed)};
    const double s = speed_of(v);
    if (s >= min_speed && s <= max_speed) return v;
  }
}

// Counter-clockwise convex hull (monotone chain), used only for generating
// test shapes.
inline std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a == b; }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Point2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

inline bool well_shaped(const std::vector<Point2>& hull, double min_edge, double min_angle_rad) {
  const std::size_t n = hull.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 prev = hull[(i + n - 1) % n];
    const Point2 cur = hull[i];
    const Point2 next = hull[(i + 1) % n];
    if (norm(next - cur) < min_edge) return false;
    const Point2 d1 = cur - prev;
    const Point2 d2 = next - cur;
    const double turn = std::atan2(cross(d1, d2), dot(d1, d2));
    const double interior = std::numbers::pi - turn;
    if (interior < min_angle_rad) return false;
  }
  return true;
}

// Random strictly convex polygon with 3..max_vertices vertices, edges no
// shorter than min_edge, interior angles no sharper than 20 degrees,
// contained in a box of the given half-extent around the center.
inline ConvexPolygonObstacle random_convex_polygon(Rng& rng, Point2 center, double half_extent,
                                                   Velocity2 velocity, int max_vertices = 6,
                                                   double min_edge = 0.0) {
  if (min_edge <= 0.0) min_edge = 0.3 * half_extent;
  while (true) {
    const int k = std::uniform_int_distribution<int>(4, std::max(4, max_vertices + 1))(rng);
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      pts.push_back(center + Point2{uniform(rng, -half_extent, half_extent),
                                    uniform(rng, -half_extent, half_extent)});
    std::vector<Point2> hull = convex_hull(pts);
    if (!well_shaped(hull, min_edge, 20.0 * std::numbers::pi / 180.0)) continue;
    return {std::move(hull), velocity};
  }
}

inline CircleObstacle random_circle(Rng& rng, Point2 center_lo_hi_box_min,
                                    Point2 center_box_max, double r_min, double r_max,
                                    Velocity2 velocity) {
  return {{uniform(rng, center_lo_hi_box_min.x, center_box_max.x),
           uniform(rng, center_lo_hi_box_min.y, center_box_max.y)},
          uniform(rng, r_min, r_max),
          velocity};
}

}  // namespace timedist::testing
