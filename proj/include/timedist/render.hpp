#pragma once

#include <string>

#include "timedist/planner.hpp"
#include "timedist/scenario.hpp"
#include "timedist/simulator.hpp"

namespace timedist {

// Deterministic SVG snapshots of planning and simulation results: obstacles
// (with inflated boundaries and, in dynamic mode, future-relative ghosts),
// the planned path, the smoothed trajectory, and the vehicle footprint.

std::string render_plan_svg(const Scenario& scenario, const PreparedScene& scene,
                            const PathPolyline& path);

std::string render_simlog_svg(const Scenario& scenario, const SimLog& log);

}  // namespace timedist
