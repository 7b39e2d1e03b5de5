#include "timedist/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace timedist {

namespace {

struct Bounds {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  void add(Point2 p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  void pad(double m) {
    min_x -= m;
    min_y -= m;
    max_x += m;
    max_y += m;
  }
};

class SvgCanvas {
 public:
  SvgCanvas(Bounds b, double pixels_per_meter) : b_(b), scale_(pixels_per_meter) {
    width_ = (b_.max_x - b_.min_x) * scale_;
    height_ = (b_.max_y - b_.min_y) * scale_;
  }

  std::string fmt(double v) const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
  }
  std::string px(Point2 p) const {
    return fmt((p.x - b_.min_x) * scale_) + "," + fmt((b_.max_y - p.y) * scale_);
  }

  void polygon(std::span<const Point2> pts, const std::string& style) {
    body_ << "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << px(pts[i]);
    body_ << "\" style=\"" << style << "\"/>\n";
  }
  void polyline(std::span<const Point2> pts, const std::string& style) {
    if (pts.size() < 2) return;
    body_ << "<polyline points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << px(pts[i]);
    body_ << "\" style=\"fill:none;" << style << "\"/>\n";
  }
  void circle(Point2 c, double r, const std::string& style) {
    const auto center = px(c);
    body_ << "<circle cx=\"" << center.substr(0, center.find(',')) << "\" cy=\""
          << center.substr(center.find(',') + 1) << "\" r=\"" << fmt(r * scale_) << "\" style=\""
          << style << "\"/>\n";
  }
  void marker(Point2 p, const std::string& fill) {
    circle(p, 4.0 / scale_, "fill:" + fill + ";stroke:none");
  }

  std::string finish() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width_) << "\" height=\""
        << fmt(height_) << "\" viewBox=\"0 0 " << fmt(width_) << " " << fmt(height_) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  Bounds b_;
  double scale_;
  double width_;
  double height_;
  std::ostringstream body_;
};

constexpr const char* kObstacleStyle = "fill:#9aa5b1;stroke:#3e4c59;stroke-width:1";
constexpr const char* kInflatedStyle =
    "fill:none;stroke:#3e4c59;stroke-width:1;stroke-dasharray:5,4";
constexpr const char* kFutureStyle =
    "fill:#d3cec4;fill-opacity:0.5;stroke:#857f72;stroke-width:1;stroke-dasharray:2,3";
constexpr const char* kPathStyle = "stroke:#2b6cb0;stroke-width:2";
constexpr const char* kTrajectoryStyle = "stroke:#c53030;stroke-width:2";
constexpr const char* kFootprintStyle = "fill:none;stroke:#276749;stroke-width:1.5";

std::vector<Point2> circle_outline(const CircleObstacle& c, int segments = 48) {
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(segments));
  for (int k = 0; k < segments; ++k) {
    const double a = 2.0 * M_PI * k / segments;
    pts.push_back({c.center.x + c.radius * std::cos(a), c.center.y + c.radius * std::sin(a)});
  }
  return pts;
}

void draw_obstacle(SvgCanvas& canvas, const Obstacle& o, const std::string& style) {
  if (const auto* poly = std::get_if<ConvexPolygonObstacle>(&o.shape))
    canvas.polygon(poly->vertices(), style);
  else
    canvas.polygon(circle_outline(std::get<CircleObstacle>(o.shape)), style);
}

Bounds scene_bounds(const Scenario& scenario) {
  Bounds b;
  b.add(scenario.vehicle.pose.position);
  b.add(scenario.goal);
  for (const Obstacle& o : scenario.obstacles) {
    if (const auto* poly = std::get_if<ConvexPolygonObstacle>(&o.shape)) {
      for (const Point2 v : poly->vertices()) b.add(v);
    } else {
      const auto& c = std::get<CircleObstacle>(o.shape);
      b.add({c.center.x - c.radius, c.center.y - c.radius});
      b.add({c.center.x + c.radius, c.center.y + c.radius});
    }
  }
  b.pad(std::max(0.3, 2.0 * scenario.vehicle.circumradius()));
  return b;
}

double pick_scale(const Bounds& b) {
  const double span = std::max(b.max_x - b.min_x, b.max_y - b.min_y);
  return span > 0.0 ? 720.0 / span : 720.0;
}

}  // namespace

std::string render_plan_svg(const Scenario& scenario, const PreparedScene& scene,
                            const PathPolyline& path) {
  const Bounds b = scene_bounds(scenario);
  SvgCanvas canvas(b, pick_scale(b));
  const Frame frame(scenario.vehicle.pose);

  for (const Obstacle& o : scenario.obstacles) draw_obstacle(canvas, o, kObstacleStyle);
  // Inflated boundaries and future ghosts live in the planning frame.
  for (const Obstacle& o : scene.obstacles()) {
    if (const auto* poly = std::get_if<ConvexPolygonObstacle>(&o.shape)) {
      std::vector<Point2> pts;
      for (const Point2 v : poly->vertices()) pts.push_back(frame.to_global(v));
      canvas.polygon(pts, kInflatedStyle);
    } else {
      const auto& c = std::get<CircleObstacle>(o.shape);
      CircleObstacle global{frame.to_global(c.center), c.radius, c.velocity};
      canvas.polygon(circle_outline(global), kInflatedStyle);
    }
  }
  for (const FutureObstacle& fut : scene.future_obstacles()) {
    std::vector<Point2> pts;
    for (const Point2 v : fut.vertices) pts.push_back(frame.to_global(v));
    canvas.polygon(pts, kFutureStyle);
  }

  std::vector<Point2> path_pts;
  path_pts.push_back(scenario.vehicle.pose.position);
  for (const PathPoint& p : path.points) path_pts.push_back(frame.to_global(Point2{p.x, p.y}));
  canvas.polyline(path_pts, kPathStyle);

  canvas.polygon(scenario.vehicle.corners(), kFootprintStyle);
  canvas.marker(scenario.goal, "#b7791f");
  return canvas.finish();
}

std::string render_simlog_svg(const Scenario& scenario, const SimLog& log) {
  Bounds b = scene_bounds(scenario);
  for (const SimStep& s : log.steps) b.add(s.pose.position);
  SvgCanvas canvas(b, pick_scale(b));

  for (const Obstacle& o : scenario.obstacles) draw_obstacle(canvas, o, kObstacleStyle);
  // Obstacle end positions as ghosts.
  WorldState world{scenario.obstacles, log.duration};
  for (const Obstacle& o : world.current()) draw_obstacle(canvas, o, kFutureStyle);

  std::vector<Point2> track;
  track.reserve(log.steps.size());
  for (const SimStep& s : log.steps) track.push_back(s.pose.position);
  canvas.polyline(track, kTrajectoryStyle);

  // Footprint snapshots along the run.
  const std::size_t stride = std::max<std::size_t>(1, log.steps.size() / 12);
  for (std::size_t i = 0; i < log.steps.size(); i += stride) {
    VehicleFootprint posed = scenario.vehicle;
    posed.pose = log.steps[i].pose;
    canvas.polygon(posed.corners(), kFootprintStyle);
  }
  canvas.marker(scenario.goal, "#b7791f");
  return canvas.finish();
}

}  // namespace timedist
