#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "timedist/errors.hpp"

namespace timedist {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
  friend Point2 operator*(double s, Point2 a) { return a * s; }
  friend bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double squared_norm(Point2 a) { return a.x * a.x + a.y * a.y; }

struct Velocity2 {
  double vx = 0.0;
  double vy = 0.0;

  friend Velocity2 operator-(Velocity2 a, Velocity2 b) { return {a.vx - b.vx, a.vy - b.vy}; }
  friend Velocity2 operator+(Velocity2 a, Velocity2 b) { return {a.vx + b.vx, a.vy + b.vy}; }
  friend Velocity2 operator*(Velocity2 a, double s) { return {a.vx * s, a.vy * s}; }
  friend bool operator==(Velocity2 a, Velocity2 b) { return a.vx == b.vx && a.vy == b.vy; }
};

inline double speed_of(Velocity2 v) { return std::hypot(v.vx, v.vy); }
inline Point2 displacement(Velocity2 v, double t) { return {v.vx * t, v.vy * t}; }

// Angle of the x-axis of a rotated frame, normalized to (-pi, pi].
double normalize_angle(double a);

// Coordinates of p in a frame rotated by theta (pure rotation, no translation):
//   x' =  x cos(theta) + y sin(theta)
//   y' = -x sin(theta) + y cos(theta)
Point2 to_frame(Point2 p, double theta);

// Inverse of to_frame.
Point2 from_frame(Point2 p, double theta);

inline Velocity2 to_frame(Velocity2 v, double theta) {
  Point2 r = to_frame(Point2{v.vx, v.vy}, theta);
  return {r.x, r.y};
}
inline Velocity2 from_frame(Velocity2 v, double theta) {
  Point2 r = from_frame(Point2{v.vx, v.vy}, theta);
  return {r.x, r.y};
}

// Direction angle of a velocity vector; no heading exists for a zero vector,
// callers branch to the stationary-obstacle rule in that case.
std::optional<double> velocity_heading(Velocity2 v);

// Directed edge of a moving obstacle. For edges of a counter-clockwise
// polygon with q_r = from-vertex and q_l = to-vertex, the outward normal
// convention holds: standing at the edge center facing outward, q_r is on
// the right.
struct SegmentEdge {
  Point2 q_r;
  Point2 q_l;
  Velocity2 velocity;

  SegmentEdge(Point2 r, Point2 l, Velocity2 v);
};

// Angle of the axis perpendicular to the edge. With outward=true the axis
// points out of the polygon the edge belongs to (requires the q_r/q_l
// convention above); with outward=false the perpendicular is picked from the
// edge slope alone and either side may result.
double edge_normal_angle(const SegmentEdge& e, bool outward);

struct SegmentProps {
  Point2 center;
  double length = 0.0;
};
SegmentProps segment_props(const SegmentEdge& e);

class ConvexPolygonObstacle {
 public:
  // Vertices must be counter-clockwise and strictly convex; throws
  // ValidationError naming the offending vertex otherwise.
  ConvexPolygonObstacle(std::vector<Point2> vertices, Velocity2 velocity);

  const std::vector<Point2>& vertices() const { return vertices_; }
  Velocity2 velocity() const { return velocity_; }
  std::size_t size() const { return vertices_.size(); }

  SegmentEdge edge(std::size_t i) const;
  std::vector<SegmentEdge> edges() const;

  ConvexPolygonObstacle translated(Point2 d) const;
  ConvexPolygonObstacle with_velocity(Velocity2 v) const;

 private:
  std::vector<Point2> vertices_;
  Velocity2 velocity_;
};

struct CircleObstacle {
  Point2 center;
  double radius = 0.0;
  Velocity2 velocity;

  CircleObstacle(Point2 c, double r, Velocity2 v);

  CircleObstacle translated(Point2 d) const { return {center + d, radius, velocity}; }
  CircleObstacle with_velocity(Velocity2 v) const { return {center, radius, v}; }
};

using ObstacleShape = std::variant<ConvexPolygonObstacle, CircleObstacle>;

struct Obstacle {
  std::string id;
  ObstacleShape shape;
  double inflation = 0.0;  // configuration-space inflation already applied

  Velocity2 velocity() const;
  Obstacle translated(Point2 d) const;
  Obstacle with_velocity(Velocity2 v) const;
};

struct Pose2 {
  Point2 position;
  double heading = 0.0;
};

// Rotated + translated coordinate frame; rotation is the angle of the
// frame's x-axis measured in the source frame.
struct Frame {
  double rotation = 0.0;
  Point2 origin;

  Frame() = default;
  Frame(double rot, Point2 org) : rotation(normalize_angle(rot)), origin(org) {}
  explicit Frame(const Pose2& pose) : Frame(pose.heading, pose.position) {}

  Point2 to_local(Point2 p) const { return to_frame(p - origin, rotation); }
  Point2 to_global(Point2 p) const { return from_frame(p, rotation) + origin; }
  Velocity2 to_local(Velocity2 v) const { return to_frame(v, rotation); }
  Velocity2 to_global(Velocity2 v) const { return from_frame(v, rotation); }
};

struct VehicleFootprint {
  double length = 0.0;  // along heading
  double width = 0.0;
  Pose2 pose;
  double speed = 0.0;
  double v_max = 0.0;
  double a_n_max = 0.0;

  VehicleFootprint(double length, double width, Pose2 pose, double speed, double v_max,
                   double a_n_max);

  Velocity2 velocity() const {
    return {speed * std::cos(pose.heading), speed * std::sin(pose.heading)};
  }
  // Radius of the circumscribed circle; the configuration-obstacle
  // inflation radius when the vehicle is reduced to a point.
  double circumradius() const { return 0.5 * std::hypot(length, width); }
  // Footprint corners in the global frame, counter-clockwise.
  std::vector<Point2> corners() const;
};

// Configuration-obstacle inflation. Circles grow by r; convex polygons get
// each edge offset outward by r with miter joins at the vertices. Interior
// vertex angles below 5 degrees make the miter blow up and are rejected.
ConvexPolygonObstacle inflate(const ConvexPolygonObstacle& poly, double r);
CircleObstacle inflate(const CircleObstacle& circle, double r);
Obstacle inflate(const Obstacle& obstacle, double r);

// Shared convex predicates (used by the planner's occupancy checks, the
// simulator's collision audit, and the brute-force oracles).
bool point_in_convex_polygon(Point2 p, std::span<const Point2> ccw_vertices);
double distance_point_segment(Point2 p, Point2 a, Point2 b);
// Distance from p to the polygon boundary (positive inside and outside).
double distance_point_polygon_boundary(Point2 p, std::span<const Point2> ccw_vertices);
// Distance from p to the solid polygon (0 inside or on).
double distance_point_convex(Point2 p, std::span<const Point2> ccw_vertices);
bool convex_polygons_overlap(std::span<const Point2> a, std::span<const Point2> b);
double convex_polygons_distance(std::span<const Point2> a, std::span<const Point2> b);

// Regular polygon inscribed in the circle, counter-clockwise, first vertex
// at angle 0; used by the scenario loader's opt-in circle approximation.
ConvexPolygonObstacle inscribe_polygon(const CircleObstacle& circle, int sides);

}  // namespace timedist
