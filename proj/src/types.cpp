#include "timedist/types.hpp"

#include <cmath>

namespace timedist {

PlannerConfig::PlannerConfig(RouteParams route_, double dx_, double dy_, double y_min_,
                             double y_max_, double horizon_cap_, PlanMode mode_,
                             double goal_tolerance_)
    : route(route_),
      dx(dx_),
      dy(dy_),
      y_min(y_min_),
      y_max(y_max_),
      horizon_cap(horizon_cap_),
      mode(mode_),
      goal_tolerance(goal_tolerance_) {
  if (!(dx > 0.0) || !(dy > 0.0)) throw ValidationError("planner dx and dy must be > 0");
  if (!(y_min < y_max)) throw ValidationError("planner requires y_min < y_max");
  if (!(horizon_cap > route.t_s))
    throw ValidationError("planner horizon cap T_h must exceed T_s");
  if (goal_tolerance < 0.0) throw ValidationError("goal tolerance must be >= 0");
}

SimConfig::SimConfig(double replan_fraction_, double dt_, double max_time_, bool collision_audit_)
    : replan_fraction(replan_fraction_),
      dt(dt_),
      max_time(max_time_),
      collision_audit(collision_audit_) {
  if (!(replan_fraction > 0.0) || replan_fraction > 1.0)
    throw ValidationError("replan fraction must be in (0, 1]");
  if (!(dt > 0.0)) throw ValidationError("sim dt must be > 0");
  if (!(max_time > 0.0)) throw ValidationError("sim max_time must be > 0");
}

}  // namespace timedist
