#pragma once

#include "timedist/geometry.hpp"
#include "timedist/td_value.hpp"

namespace timedist {

// Two-valued occupancy field: 0 inside an obstacle, +infinity outside.
// Forces occupied regions to zero in min-compositions.
struct ZInfValue {
  bool occupied = false;

  TDValue td() const { return occupied ? TDValue::of(0.0) : TDValue::infinity(); }
  friend bool operator==(ZInfValue a, ZInfValue b) { return a.occupied == b.occupied; }
};

// Occupancy of the half-plane on the inner side of an edge. The edge must
// follow the outward q_r/q_l convention (counter-clockwise polygon edges).
// Points on the edge line count as occupied.
ZInfValue zinf_edge(Point2 p, const SegmentEdge& e);

// Occupancy of a convex polygon: the max-composition of its edge fields,
// which is 0 exactly inside or on the polygon.
ZInfValue zinf_polygon(Point2 p, const ConvexPolygonObstacle& poly);

// Oriented rectangle, specified by center, direction of the length axis,
// and side lengths.
struct RectSpec {
  Point2 center;
  double angle = 0.0;
  double length = 0.0;
  double width = 0.0;
};

ZInfValue zinf_rect(Point2 p, const RectSpec& rect);
ZInfValue zinf_circle(Point2 p, const CircleObstacle& circle);
ZInfValue zinf_obstacle(Point2 p, const Obstacle& obstacle);

// Signed lateral distance of p from the goal line through the origin at
// bearing delta.
double goal_lateral_offset(Point2 p, double delta);

// Route Function parameters. beta, gamma < 1 < alpha and T_s > 0.
struct RouteParams {
  double t_s = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;  // goal-line bearing in the planning frame

  RouteParams(double t_s, double alpha, double beta, double gamma, double delta);

  RouteParams with_delta(double new_delta) const {
    return {t_s, alpha, beta, gamma, new_delta};
  }
};

// Route Function: alpha*T_s - beta*|y_g|^gamma. Peaks exactly on the goal
// line and decays with lateral offset.
double route_value(Point2 p, const RouteParams& params);

struct FeasibilityReport {
  bool pass = false;
  double margin = 0.0;  // min route value over the workspace minus T_s
};

// Whether the route value stays at or above T_s for every point whose
// lateral offset magnitude is at most y_extent. The raw overload evaluates
// candidate parameters before they satisfy the RouteParams invariants.
FeasibilityReport rf_feasibility(double t_s, double alpha, double beta, double gamma,
                                 double y_extent);
FeasibilityReport rf_feasibility(const RouteParams& params, double y_extent);

}  // namespace timedist
