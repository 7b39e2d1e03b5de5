#include "timedist/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace timedist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinEdgeLength = 1e-12;
constexpr double kMinMiterAngle = 5.0 * kPi / 180.0;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ValidationError(std::string(what) + " must be finite");
}

}  // namespace

double normalize_angle(double a) {
  if (a > -kPi && a <= kPi) return a;
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a <= 0.0) a += 2.0 * kPi;
  return a - kPi;
}

Point2 to_frame(Point2 p, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {p.x * c + p.y * s, -p.x * s + p.y * c};
}

Point2 from_frame(Point2 p, double theta) { return to_frame(p, -theta); }

std::optional<double> velocity_heading(Velocity2 v) {
  if (v.vx == 0.0 && v.vy == 0.0) return std::nullopt;
  return std::atan2(v.vy, v.vx);
}

SegmentEdge::SegmentEdge(Point2 r, Point2 l, Velocity2 v) : q_r(r), q_l(l), velocity(v) {
  require_finite(r.x, "edge endpoint");
  require_finite(r.y, "edge endpoint");
  require_finite(l.x, "edge endpoint");
  require_finite(l.y, "edge endpoint");
  if (norm(l - r) <= kMinEdgeLength) throw ValidationError("degenerate edge: endpoints coincide");
}

double edge_normal_angle(const SegmentEdge& e, bool outward) {
  const Point2 d = e.q_l - e.q_r;
  if (outward) {
    // Outward normal of a counter-clockwise edge: the edge direction rotated
    // by -pi/2. Equal to the slope-atan form with its orientation-dependent
    // +/- pi/2 correction, for every edge orientation.
    return std::atan2(-d.x, d.y);
  }
  // Slope-based perpendicular: edge direction folded into (-pi/2, pi/2],
  // then turned a quarter; lands in (0, pi].
  double psi = std::atan2(d.y, d.x);
  if (psi <= -kPi / 2.0) psi += kPi;
  if (psi > kPi / 2.0) psi -= kPi;
  return psi + kPi / 2.0;
}

SegmentProps segment_props(const SegmentEdge& e) {
  return {{0.5 * (e.q_r.x + e.q_l.x), 0.5 * (e.q_r.y + e.q_l.y)}, norm(e.q_l - e.q_r)};
}

ConvexPolygonObstacle::ConvexPolygonObstacle(std::vector<Point2> vertices, Velocity2 velocity)
    : vertices_(std::move(vertices)), velocity_(velocity) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw ValidationError("polygon needs at least 3 vertices");
  double area2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = vertices_[i];
    const Point2 b = vertices_[(i + 1) % n];
    require_finite(a.x, "polygon vertex");
    require_finite(a.y, "polygon vertex");
    if (norm(b - a) <= kMinEdgeLength)
      throw ValidationError("polygon has repeated vertex at index " + std::to_string(i));
    area2 += cross(a, b);
  }
  if (area2 < 0.0) throw ValidationError("polygon vertices are clockwise; expected counter-clockwise");
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 prev = vertices_[(i + n - 1) % n];
    const Point2 cur = vertices_[i];
    const Point2 next = vertices_[(i + 1) % n];
    if (cross(cur - prev, next - cur) <= 0.0)
      throw ValidationError("polygon is not strictly convex: reflex or collinear vertex at index " +
                            std::to_string(i));
  }
}

SegmentEdge ConvexPolygonObstacle::edge(std::size_t i) const {
  return {vertices_[i], vertices_[(i + 1) % vertices_.size()], velocity_};
}

std::vector<SegmentEdge> ConvexPolygonObstacle::edges() const {
  std::vector<SegmentEdge> out;
  out.reserve(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) out.push_back(edge(i));
  return out;
}

ConvexPolygonObstacle ConvexPolygonObstacle::translated(Point2 d) const {
  std::vector<Point2> moved = vertices_;
  for (auto& v : moved) v = v + d;
  return {std::move(moved), velocity_};
}

ConvexPolygonObstacle ConvexPolygonObstacle::with_velocity(Velocity2 v) const {
  return {vertices_, v};
}

CircleObstacle::CircleObstacle(Point2 c, double r, Velocity2 v) : center(c), radius(r), velocity(v) {
  require_finite(c.x, "circle center");
  require_finite(c.y, "circle center");
  if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("circle radius must be > 0");
}

Velocity2 Obstacle::velocity() const {
  return std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConvexPolygonObstacle>)
          return s.velocity();
        else
          return s.velocity;
      },
      shape);
}

Obstacle Obstacle::translated(Point2 d) const {
  Obstacle out = *this;
  out.shape = std::visit([&](const auto& s) -> ObstacleShape { return s.translated(d); }, shape);
  return out;
}

Obstacle Obstacle::with_velocity(Velocity2 v) const {
  Obstacle out = *this;
  out.shape = std::visit([&](const auto& s) -> ObstacleShape { return s.with_velocity(v); }, shape);
  return out;
}

VehicleFootprint::VehicleFootprint(double length_, double width_, Pose2 pose_, double speed_,
                                   double v_max_, double a_n_max_)
    : length(length_), width(width_), pose(pose_), speed(speed_), v_max(v_max_), a_n_max(a_n_max_) {
  if (!(length > 0.0) || !(width > 0.0)) throw ValidationError("vehicle dimensions must be > 0");
  if (!(v_max > 0.0)) throw ValidationError("v_max must be > 0");
  if (!(a_n_max > 0.0)) throw ValidationError("a_n_max must be > 0");
  if (speed < 0.0) throw ValidationError("speed must be >= 0");
  if (speed > v_max) throw ValidationError("speed must not exceed v_max");
  require_finite(pose.position.x, "vehicle pose");
  require_finite(pose.position.y, "vehicle pose");
  require_finite(pose.heading, "vehicle heading");
  pose.heading = normalize_angle(pose.heading);
}

std::vector<Point2> VehicleFootprint::corners() const {
  const Frame frame(pose);
  const double hl = 0.5 * length;
  const double hw = 0.5 * width;
  return {frame.to_global(Point2{hl, -hw}), frame.to_global(Point2{hl, hw}),
          frame.to_global(Point2{-hl, hw}), frame.to_global(Point2{-hl, -hw})};
}

ConvexPolygonObstacle inflate(const ConvexPolygonObstacle& poly, double r) {
  if (r < 0.0) throw ValidationError("inflation radius must be >= 0");
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  std::vector<Point2> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 prev = v[(i + n - 1) % n];
    const Point2 cur = v[i];
    const Point2 next = v[(i + 1) % n];
    const Point2 d1 = cur - prev;
    const Point2 d2 = next - cur;
    const double turn = std::atan2(cross(d1, d2), dot(d1, d2));
    if (kPi - turn < kMinMiterAngle)
      throw ValidationError("miter blow-up: interior angle below 5 degrees at vertex " +
                            std::to_string(i) + "; pre-split the obstacle");
    const double l1 = norm(d1);
    const double l2 = norm(d2);
    const Point2 n1{d1.y / l1, -d1.x / l1};
    const Point2 n2{d2.y / l2, -d2.x / l2};
    // Intersect the two outward-offset edge lines.
    const double c1 = dot(cur, n1) + r;
    const double c2 = dot(cur, n2) + r;
    const double det = cross(n1, n2);
    out[i] = {(c1 * n2.y - c2 * n1.y) / det, (n1.x * c2 - n2.x * c1) / det};
  }
  return {std::move(out), poly.velocity()};
}

CircleObstacle inflate(const CircleObstacle& circle, double r) {
  if (r < 0.0) throw ValidationError("inflation radius must be >= 0");
  return {circle.center, circle.radius + r, circle.velocity};
}

Obstacle inflate(const Obstacle& obstacle, double r) {
  Obstacle out = obstacle;
  out.shape = std::visit([&](const auto& s) -> ObstacleShape { return inflate(s, r); },
                         obstacle.shape);
  out.inflation = obstacle.inflation + r;
  return out;
}

bool point_in_convex_polygon(Point2 p, std::span<const Point2> ccw) {
  const std::size_t n = ccw.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = ccw[i];
    const Point2 b = ccw[(i + 1) % n];
    if (cross(b - a, p - a) < 0.0) return false;
  }
  return true;
}

double distance_point_segment(Point2 p, Point2 a, Point2 b) {
  const Point2 d = b - a;
  const double len2 = squared_norm(d);
  if (len2 == 0.0) return norm(p - a);
  const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return norm(p - (a + d * t));
}

double distance_point_polygon_boundary(Point2 p, std::span<const Point2> ccw) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = ccw.size();
  for (std::size_t i = 0; i < n; ++i)
    best = std::min(best, distance_point_segment(p, ccw[i], ccw[(i + 1) % n]));
  return best;
}

double distance_point_convex(Point2 p, std::span<const Point2> ccw) {
  if (point_in_convex_polygon(p, ccw)) return 0.0;
  return distance_point_polygon_boundary(p, ccw);
}

namespace {

// Projection gap between polygons along the outward normals of one of them.
bool separated_on_axes(std::span<const Point2> a, std::span<const Point2> b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p0 = a[i];
    const Point2 p1 = a[(i + 1) % n];
    const Point2 axis{p1.y - p0.y, p0.x - p1.x};  // outward for CCW
    double amax = -std::numeric_limits<double>::infinity();
    for (const Point2 q : a) amax = std::max(amax, dot(q - p0, axis));
    double bmin = std::numeric_limits<double>::infinity();
    for (const Point2 q : b) bmin = std::min(bmin, dot(q - p0, axis));
    (void)amax;
    if (bmin > 0.0) return true;  // all of b strictly outside this edge
  }
  return false;
}

}  // namespace

bool convex_polygons_overlap(std::span<const Point2> a, std::span<const Point2> b) {
  return !separated_on_axes(a, b) && !separated_on_axes(b, a);
}

double convex_polygons_distance(std::span<const Point2> a, std::span<const Point2> b) {
  if (convex_polygons_overlap(a, b)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      best = std::min(best, distance_point_segment(a[i], b[j], b[(j + 1) % nb]));
      best = std::min(best, distance_point_segment(b[j], a[i], a[(i + 1) % na]));
    }
  return best;
}

ConvexPolygonObstacle inscribe_polygon(const CircleObstacle& circle, int sides) {
  if (sides < 3) throw ValidationError("circle approximation needs at least 3 sides");
  std::vector<Point2> verts(static_cast<std::size_t>(sides));
  for (int k = 0; k < sides; ++k) {
    const double a = 2.0 * kPi * k / sides;
    verts[static_cast<std::size_t>(k)] = {circle.center.x + circle.radius * std::cos(a),
                                          circle.center.y + circle.radius * std::sin(a)};
  }
  return {std::move(verts), circle.velocity};
}

}  // namespace timedist
