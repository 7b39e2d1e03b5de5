#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "timedist/geometry.hpp"
#include "timedist/scenario.hpp"
#include "timedist/td_core.hpp"
#include "timedist/types.hpp"

namespace timedist {

// Obstacle transported to its future relative location and geometry: every
// vertex moved by the absolute velocity times that vertex's crossing time of
// the vehicle's lateral axis.
struct FutureObstacle {
  std::string id;
  std::vector<Point2> vertices;  // planning frame, counter-clockwise
  Velocity2 relative_velocity;
};

// poly: vertices in the planning frame, velocity = absolute velocity
// resolved along the planning-frame axes. vehicle_velocity: the vehicle's
// velocity in the same axes, i.e. (speed, 0). Crossing times that never
// occur are capped at horizon_cap. Throws ValidationError when the
// transported polygon degenerates (area below 1e-12).
FutureObstacle future_relative_geometry(const ConvexPolygonObstacle& poly,
                                        Velocity2 vehicle_velocity, double horizon_cap);

// Scene preprocessed for section evaluation: configuration obstacles in the
// planning frame, future-relativized in dynamic mode, with the goal and the
// route function resolved for the current pose.
class PreparedScene {
 public:
  static PreparedScene prepare(const Scenario& scenario, const PlannerConfig& config);

  PreparedScene(PreparedScene&&) noexcept;
  PreparedScene& operator=(PreparedScene&&) noexcept;
  ~PreparedScene();

  // Composed scalar field at a planning-frame point (min of TD set, route
  // value, and all occupancy fields that apply to the mode).
  TDValue field(Point2 p) const;

  // Occupied y-interval of each configuration obstacle on the section at x
  // (empty intervals omitted). Sections sample these boundaries explicitly:
  // the continuous argmax of the composed field sits at occupancy
  // boundaries, and a bare grid quantizes each side's clearance by a whole
  // cell, which makes near-tied sides flip from section to section.
  std::vector<std::pair<double, double>> occupied_slices(double x) const;

  Point2 goal() const { return goal_; }
  double goal_line_bearing() const { return delta_; }
  const RouteParams& route() const { return route_; }
  PlanMode mode() const { return mode_; }
  // Configuration obstacles in the planning frame (relative velocities).
  const std::vector<Obstacle>& obstacles() const { return obstacles_; }
  const std::vector<FutureObstacle>& future_obstacles() const { return future_; }

 private:
  struct Impl;
  PreparedScene();

  PlanMode mode_ = PlanMode::kStatic;
  Point2 goal_;
  double delta_ = 0.0;
  RouteParams route_{1.0, 1.1, 0.1, 0.1, 0.0};
  std::vector<Obstacle> obstacles_;
  std::vector<FutureObstacle> future_;  // dynamic mode only
  std::unique_ptr<Impl> impl_;
};

struct SectionResult {
  TDValue t_p;
  double y_p = 0.0;
};

// Safest point of the section at x: grid argmax over [y_min, y_max] of the
// composed field, ties resolved toward the goal line.
SectionResult section_tp(double x, const PreparedScene& scene, const PlannerConfig& config);

// Section-by-section safest-point path in the planning frame of the current
// pose. Sections run from dx to the goal's x; planning stops at the first
// section whose safest point fails the mode's admissibility (T_p > 0 static,
// T_p >= T_s dynamic). An empty polyline is the no-path result.
PathPolyline plan_path(const Scenario& scenario, const PlannerConfig& config);

// Admissibility predicate for one section value under the given mode.
bool admissible(TDValue t_p, PlanMode mode, double t_s);

}  // namespace timedist
