#include "timedist/collision.hpp"

#include <cmath>

#include "timedist/td_core.hpp"

namespace timedist {

std::vector<Point2> sample_border(const VehicleFootprint& footprint, double spacing) {
  if (!(spacing > 0.0)) throw ValidationError("border spacing must be > 0");
  const double hl = 0.5 * footprint.length;
  const double hw = 0.5 * footprint.width;
  const Point2 corners[4] = {{hl, -hw}, {hl, hw}, {-hl, hw}, {-hl, -hw}};
  std::vector<Point2> out;
  for (int side = 0; side < 4; ++side) {
    const Point2 a = corners[side];
    const Point2 b = corners[(side + 1) % 4];
    const double len = norm(b - a);
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    for (int k = 0; k < pieces; ++k) out.push_back(a + (b - a) * (static_cast<double>(k) / pieces));
  }
  return out;
}

double default_border_spacing(const VehicleFootprint& footprint) {
  return std::min(footprint.length, footprint.width) / 4.0;
}

RelativeScene relativize(const VehicleFootprint& footprint, std::span<const Obstacle> obstacles,
                         double border_spacing) {
  RelativeScene scene;
  scene.border_points = sample_border(footprint, border_spacing);
  const Frame frame(footprint.pose);
  const Velocity2 vehicle_v = footprint.velocity();
  scene.obstacles.reserve(obstacles.size());
  for (const Obstacle& o : obstacles) {
    Obstacle rel = o;
    const Velocity2 rel_v = frame.to_local(o.velocity() - vehicle_v);
    rel.shape = std::visit(
        [&](const auto& shape) -> ObstacleShape {
          using T = std::decay_t<decltype(shape)>;
          if constexpr (std::is_same_v<T, ConvexPolygonObstacle>) {
            std::vector<Point2> verts;
            verts.reserve(shape.vertices().size());
            for (const Point2 v : shape.vertices()) verts.push_back(frame.to_local(v));
            return ConvexPolygonObstacle(std::move(verts), rel_v);
          } else {
            return CircleObstacle(frame.to_local(shape.center), shape.radius, rel_v);
          }
        },
        o.shape);
    scene.obstacles.push_back(std::move(rel));
  }
  return scene;
}

TTCReport predict_ttc(const RelativeScene& scene) {
  TTCReport report;
  report.ttc = TDValue::infinity();
  report.per_obstacle.reserve(scene.obstacles.size());
  for (const Obstacle& o : scene.obstacles) {
    TDValue obstacle_min = TDValue::infinity();
    Point2 obstacle_point{};
    for (const Point2 p : scene.border_points) {
      const TDValue td = td_obstacle(p, o);
      if (td < obstacle_min) {
        obstacle_min = td;
        obstacle_point = p;
      }
    }
    report.per_obstacle.emplace_back(o.id, obstacle_min);
    if (obstacle_min < report.ttc) {
      report.ttc = obstacle_min;
      report.critical_point = obstacle_point;
    }
  }
  return report;
}

}  // namespace timedist
