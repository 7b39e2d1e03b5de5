#pragma once

#include <string>
#include <vector>

#include "timedist/geometry.hpp"
#include "timedist/types.hpp"

namespace timedist {

// A full planning/simulation problem: the unit of file I/O. All values are
// normalized to meters/seconds/radians regardless of the units the file
// declares.
struct Scenario {
  VehicleFootprint vehicle;
  double lookahead = 0.0;  // arc distance of the trajectory target point
  Point2 goal;             // global frame
  std::vector<Obstacle> obstacles;
  PlannerConfig planner;
  SimConfig sim;
  std::string units = "m";  // declared length unit, kept for round-trips
  bool approximate_circles = false;
  int circle_approx_vertices = 12;
};

// Parses and validates a scenario document. Diagnostics are anchored to the
// JSON path of the offending field (and line/column for syntax errors).
Scenario parse_scenario(const std::string& text);

Scenario load_scenario(const std::string& file_path);

// Serializes in the scenario's declared units; parse(serialize(s)) == s
// field for field.
std::string serialize_scenario(const Scenario& scenario);

// Replaces circle obstacles with inscribed regular polygons carrying the
// same velocity. Used when a dynamic-mode scenario opts in to circle
// approximation.
Scenario approximate_circle_obstacles(const Scenario& scenario);

}  // namespace timedist
