#pragma once

#include <span>
#include <vector>

#include "timedist/geometry.hpp"
#include "timedist/td_value.hpp"

namespace timedist {

// One-dimensional time distance: the time for a point at y_b moving with
// constant velocity v_rel along the axis to reach y_target. Piecewise form
// of the sign-gated quotient: 0 when already there, the positive quotient
// when approaching, +infinity when receding or stationary.
TDValue td_point_1d(double y_target, double y_b, double v_rel);

// Precomputed evaluation context for the TD field of one translating edge.
// Only built for edges with nonzero relative velocity; stationary edges
// short-circuit to the stationary rule in td_segment. Motion exactly
// parallel to the edge sweeps only the edge's own line and is handled by a
// separate closed form.
struct MovingSegmentTD {
  double theta_prime = 0.0;   // motion direction
  double theta_dprime = 0.0;  // edge-normal axis direction
  double cos_d = 1.0;         // cached rotation into the normal-axis frame
  double sin_d = 0.0;
  Point2 center0;             // edge midpoint in the normal-axis frame
  double length = 0.0;
  double v_xdprime = 0.0;     // velocity component along the normal axis
  double v_ydprime = 0.0;     // velocity component along the edge

  bool tangential = false;    // velocity exactly parallel to the edge
  Point2 center;              // edge midpoint, original frame
  Point2 unit_dir;            // edge direction q_r -> q_l, unit length
  double v_along = 0.0;       // velocity component along unit_dir

  static MovingSegmentTD from_edge(const SegmentEdge& e);

  double band_slope() const { return v_ydprime / v_xdprime; }

  // Swept-band center line: the y'' of the edge midpoint when the edge line
  // crosses a given x''.
  double band_center(double x_dprime) const;
};

// Precomputed evaluation context for the TD field of one translating circle.
struct MovingCircleTD {
  double theta_prime = 0.0;
  double cos_p = 1.0;  // cached rotation into the motion-aligned frame
  double sin_p = 0.0;
  Point2 center0;      // circle center in the motion-aligned frame
  double radius = 0.0;
  double speed = 0.0;

  static MovingCircleTD from_circle(const CircleObstacle& c);
};

// Band-membership indicator of the circle TD, written two algebraically
// equivalent ways; both are exposed so their equivalence is testable.
int q_band_complex(double radius, double dy);  // via Im(sqrt(R^2 - dy^2))
int q_band_sign(double radius, double dy);     // via nested signs

TDValue td_segment(Point2 p, const MovingSegmentTD& ctx);
TDValue td_segment(Point2 p, const SegmentEdge& e);  // handles stationary edges
TDValue td_circle(Point2 p, const MovingCircleTD& ctx);
TDValue td_circle(Point2 p, const CircleObstacle& c);  // handles stationary circles
TDValue td_polygon(Point2 p, const ConvexPolygonObstacle& poly);
TDValue td_obstacle(Point2 p, const Obstacle& obstacle);
TDValue td_set(Point2 p, std::span<const Obstacle> obstacles);

struct SectionSample {
  double y = 0.0;
  TDValue td;
};

// Field samples along one section line (fixed x), y strictly increasing.
struct SectionProfile {
  double x = 0.0;
  std::vector<SectionSample> samples;
};

struct SectionChoice {
  TDValue t_p;
  double y_p = 0.0;
};

// Plateau tie-break for the grid argmax: prefer the sample closest to
// preferred_y, then the smaller y.
struct TieRule {
  double preferred_y = 0.0;
};

// Safest sample of a section: the maximum of the profile, ties resolved by
// the rule. Profile must be non-empty.
SectionChoice section_argmax(const SectionProfile& profile, TieRule tie);

}  // namespace timedist
