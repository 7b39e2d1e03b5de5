#pragma once

#include <array>
#include <vector>

#include "timedist/geometry.hpp"
#include "timedist/types.hpp"

namespace timedist {

// Quintic y(x) over [0, x_l] in the planning frame. Clamped at the start
// (position 0, slope 0, given curvature state) and at the end (look-ahead
// position, local path slope, zero second derivative).
struct QuinticSegment {
  std::array<double, 6> coeffs{};  // y(x) = sum coeffs[k] * x^k
  double x_l = 0.0;

  double y(double x) const;
  double dy(double x) const;
  double d2y(double x) const;
};

// Point a given arc length along the polyline from its start; the last path
// point when the polyline is shorter.
Point2 lookahead_point(const PathPolyline& path, double distance);

QuinticSegment fit_quintic(double start_curvature, double x_l, double y_l, double end_slope);

struct TrajectorySample {
  Point2 position;
  double heading = 0.0;    // relative to the planning frame x-axis
  double curvature = 0.0;  // signed
  double rho = 0.0;        // 1/|curvature|, +infinity on straights
  double v_d = 0.0;        // curvature-limited desired speed
  double s = 0.0;          // arc length from the segment start
};

// Minimum turn radius at full speed: v_max^2 / a_n_max.
double min_turn_radius(double v_max, double a_n_max);

// Desired speed at radius rho: min(v_max, sqrt(a_n_max * rho)).
double curvature_limited_speed(double rho, double v_max, double a_n_max);

// Samples the quintic at fixed arc-length steps and attaches the
// curvature-limited speed profile.
std::vector<TrajectorySample> speed_profile(const QuinticSegment& seg, double v_cap,
                                            double a_n_max, double arc_step);

double trajectory_length(const std::vector<TrajectorySample>& samples);

}  // namespace timedist
