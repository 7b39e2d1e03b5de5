#pragma once

#include <vector>

#include "timedist/geometry.hpp"
#include "timedist/guidance.hpp"
#include "timedist/td_value.hpp"

namespace timedist {

enum class PlanMode { kStatic, kDynamic };

struct PlannerConfig {
  RouteParams route;            // delta is recomputed at every plan
  double dx = 0.0;              // section spacing
  double dy = 0.0;              // y-grid spacing
  double y_min = 0.0;
  double y_max = 0.0;
  double horizon_cap = 10.0;    // cap for unbounded vertex crossing times
  PlanMode mode = PlanMode::kStatic;
  double goal_tolerance = 0.0;  // snap distance for the final path point

  double t_s() const { return route.t_s; }

  PlannerConfig(RouteParams route, double dx, double dy, double y_min, double y_max,
                double horizon_cap, PlanMode mode, double goal_tolerance);
};

enum class PathTermination { kReachedGoalSection, kSafetyCutoff, kWorkspaceEdge };

struct PathPoint {
  double x = 0.0;
  double y = 0.0;
  TDValue t_p;
};

// Safest-point polyline in the planning frame; x strictly increasing, all
// points admissible for the mode that produced them. Empty points = no path.
struct PathPolyline {
  std::vector<PathPoint> points;
  PathTermination terminated = PathTermination::kWorkspaceEdge;

  bool empty() const { return points.empty(); }
};

struct SimConfig {
  double replan_fraction = 0.1;  // trajectory fraction tracked between replans
  double dt = 0.01;
  double max_time = 120.0;
  bool collision_audit = true;

  SimConfig() = default;
  SimConfig(double replan_fraction, double dt, double max_time, bool collision_audit);
};

}  // namespace timedist
