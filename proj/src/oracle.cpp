#include "timedist/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>
#include <vector>

namespace timedist::oracle {

namespace {

std::vector<Point2> shape_at(const ConvexPolygonObstacle& poly, double t) {
  std::vector<Point2> out = poly.vertices();
  const Point2 d = displacement(poly.velocity(), t);
  for (auto& v : out) v = v + d;
  return out;
}

double circle_clearance(Point2 p, const CircleObstacle& c, double t) {
  return norm(p - (c.center + displacement(c.velocity, t))) - c.radius;
}

}  // namespace

TimedHit oracle_td(Point2 p, const ConvexPolygonObstacle& poly, const OracleConfig& cfg) {
  double min_clearance = std::numeric_limits<double>::infinity();
  const long steps = static_cast<long>(std::ceil(cfg.horizon / cfg.dt));
  for (long k = 0; k <= steps; ++k) {
    const double t = k * cfg.dt;
    const std::vector<Point2> verts = shape_at(poly, t);
    const double d = distance_point_convex(p, verts);
    min_clearance = std::min(min_clearance, d);
    if (d == 0.0) return {TDValue::of(t), 0.0};
  }
  return {TDValue::infinity(), min_clearance};
}

TimedHit oracle_td(Point2 p, const CircleObstacle& circle, const OracleConfig& cfg) {
  double min_clearance = std::numeric_limits<double>::infinity();
  const long steps = static_cast<long>(std::ceil(cfg.horizon / cfg.dt));
  for (long k = 0; k <= steps; ++k) {
    const double t = k * cfg.dt;
    const double d = circle_clearance(p, circle, t);
    min_clearance = std::min(min_clearance, std::max(d, 0.0));
    if (d <= 0.0) return {TDValue::of(t), 0.0};
  }
  return {TDValue::infinity(), min_clearance};
}

TimedHit oracle_td(Point2 p, const Obstacle& obstacle, const OracleConfig& cfg) {
  return std::visit([&](const auto& shape) { return oracle_td(p, shape, cfg); }, obstacle.shape);
}

TimedHit oracle_td(Point2 p, const SegmentEdge& edge, const OracleConfig& cfg) {
  const auto dist_at = [&](double t) {
    const Point2 d = displacement(edge.velocity, t);
    return distance_point_segment(p, edge.q_r + d, edge.q_l + d);
  };
  // Coarse scan for the minimizing sample of the (convex-in-t) distance.
  double best_t = 0.0;
  double best_d = dist_at(0.0);
  const long steps = static_cast<long>(std::ceil(cfg.horizon / cfg.dt));
  for (long k = 1; k <= steps; ++k) {
    const double t = k * cfg.dt;
    const double d = dist_at(t);
    if (d < best_d) {
      best_d = d;
      best_t = t;
    }
  }
  // Ternary refinement around the coarse minimum.
  double lo = std::max(0.0, best_t - cfg.dt);
  double hi = std::min(cfg.horizon, best_t + cfg.dt);
  for (int iter = 0; iter < 200; ++iter) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (dist_at(m1) <= dist_at(m2))
      hi = m2;
    else
      lo = m1;
  }
  const double t_star = 0.5 * (lo + hi);
  const double d_star = dist_at(t_star);
  if (d_star <= 1e-7) return {TDValue::of(t_star), 0.0};
  return {TDValue::infinity(), d_star};
}

TimedHit oracle_ttc(double vehicle_length, double vehicle_width,
                    std::span<const Obstacle> relative_obstacles, const OracleConfig& cfg) {
  const double hl = 0.5 * vehicle_length;
  const double hw = 0.5 * vehicle_width;
  const std::vector<Point2> rect{{hl, -hw}, {hl, hw}, {-hl, hw}, {-hl, -hw}};
  double min_clearance = std::numeric_limits<double>::infinity();
  const long steps = static_cast<long>(std::ceil(cfg.horizon / cfg.dt));
  for (long k = 0; k <= steps; ++k) {
    const double t = k * cfg.dt;
    for (const Obstacle& o : relative_obstacles) {
      double d = 0.0;
      if (const auto* poly = std::get_if<ConvexPolygonObstacle>(&o.shape)) {
        d = convex_polygons_distance(rect, shape_at(*poly, t));
      } else {
        const auto& circle = std::get<CircleObstacle>(o.shape);
        const Point2 c = circle.center + displacement(circle.velocity, t);
        d = std::max(distance_point_convex(c, rect) - circle.radius, 0.0);
      }
      min_clearance = std::min(min_clearance, d);
      if (d == 0.0) return {TDValue::of(t), 0.0};
    }
  }
  return {TDValue::infinity(), min_clearance};
}

namespace {

bool cell_blocked(Point2 center, std::span<const Obstacle> obstacles) {
  for (const Obstacle& o : obstacles) {
    if (const auto* poly = std::get_if<ConvexPolygonObstacle>(&o.shape)) {
      if (point_in_convex_polygon(center, poly->vertices())) return true;
    } else {
      const auto& c = std::get<CircleObstacle>(o.shape);
      if (squared_norm(center - c.center) <= c.radius * c.radius) return true;
    }
  }
  return false;
}

}  // namespace

AStarResult grid_astar(Point2 start, Point2 goal, std::span<const Obstacle> obstacles,
                       double cell) {
  if (!(cell > 0.0)) throw ValidationError("grid cell must be > 0");
  double min_x = std::min(start.x, goal.x);
  double max_x = std::max(start.x, goal.x);
  double min_y = std::min(start.y, goal.y);
  double max_y = std::max(start.y, goal.y);
  for (const Obstacle& o : obstacles) {
    if (const auto* poly = std::get_if<ConvexPolygonObstacle>(&o.shape)) {
      for (const Point2 v : poly->vertices()) {
        min_x = std::min(min_x, v.x);
        max_x = std::max(max_x, v.x);
        min_y = std::min(min_y, v.y);
        max_y = std::max(max_y, v.y);
      }
    } else {
      const auto& c = std::get<CircleObstacle>(o.shape);
      min_x = std::min(min_x, c.center.x - c.radius);
      max_x = std::max(max_x, c.center.x + c.radius);
      min_y = std::min(min_y, c.center.y - c.radius);
      max_y = std::max(max_y, c.center.y + c.radius);
    }
  }
  const double margin = 2.0 * cell;
  min_x -= margin;
  min_y -= margin;
  max_x += margin;
  max_y += margin;
  const int nx = static_cast<int>(std::ceil((max_x - min_x) / cell)) + 1;
  const int ny = static_cast<int>(std::ceil((max_y - min_y) / cell)) + 1;
  const auto index = [&](int ix, int iy) { return iy * nx + ix; };
  const auto center_of = [&](int ix, int iy) {
    return Point2{min_x + ix * cell, min_y + iy * cell};
  };

  std::vector<char> blocked(static_cast<std::size_t>(nx) * ny, 0);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix)
      blocked[index(ix, iy)] = cell_blocked(center_of(ix, iy), obstacles) ? 1 : 0;

  const auto to_cell = [&](Point2 p) {
    return std::pair<int, int>{static_cast<int>(std::lround((p.x - min_x) / cell)),
                               static_cast<int>(std::lround((p.y - min_y) / cell))};
  };
  const auto [sx, sy] = to_cell(start);
  const auto [gx, gy] = to_cell(goal);
  if (sx < 0 || sx >= nx || sy < 0 || sy >= ny || gx < 0 || gx >= nx || gy < 0 || gy >= ny)
    return {AStarStatus::kInvalidEndpoint, 0.0};
  if (blocked[index(sx, sy)] || blocked[index(gx, gy)])
    return {AStarStatus::kInvalidEndpoint, 0.0};

  const double kSqrt2 = std::sqrt(2.0);
  const auto heuristic = [&](int ix, int iy) {
    const double dx = std::abs(ix - gx);
    const double dy = std::abs(iy - gy);
    return (std::max(dx, dy) + (kSqrt2 - 1.0) * std::min(dx, dy)) * cell;
  };

  constexpr double kUnvisited = std::numeric_limits<double>::infinity();
  std::vector<double> g(static_cast<std::size_t>(nx) * ny, kUnvisited);
  // (f, sequence, ix, iy); the sequence number makes the expansion order
  // deterministic for equal f.
  using Node = std::tuple<double, long, int, int>;
  std::priority_queue<Node, std::vector<Node>, std::greater<Node>> open;
  long seq = 0;
  g[index(sx, sy)] = 0.0;
  open.emplace(heuristic(sx, sy), seq++, sx, sy);
  static constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  static constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  while (!open.empty()) {
    const auto [f, s, ix, iy] = open.top();
    open.pop();
    if (ix == gx && iy == gy) return {AStarStatus::kOk, g[index(ix, iy)]};
    if (f > g[index(ix, iy)] + heuristic(ix, iy) + 1e-12) continue;
    for (int k = 0; k < 8; ++k) {
      const int jx = ix + kDx[k];
      const int jy = iy + kDy[k];
      if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) continue;
      if (blocked[index(jx, jy)]) continue;
      const double step = (k < 4 ? 1.0 : kSqrt2) * cell;
      const double cand = g[index(ix, iy)] + step;
      if (cand < g[index(jx, jy)] - 1e-15) {
        g[index(jx, jy)] = cand;
        open.emplace(cand + heuristic(jx, jy), seq++, jx, jy);
      }
    }
  }
  return {AStarStatus::kBlocked, 0.0};
}

}  // namespace timedist::oracle
