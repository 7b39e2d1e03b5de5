#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "timedist/geometry.hpp"
#include "timedist/td_value.hpp"

namespace timedist {

// Everything expressed in the vehicle-stationary frame: border points on the
// footprint boundary, obstacle velocities replaced by velocity minus vehicle
// velocity.
struct RelativeScene {
  std::vector<Point2> border_points;
  std::vector<Obstacle> obstacles;
};

// Footprint perimeter sampled at most `spacing` apart, corners always
// included, in the vehicle frame (centered, axis-aligned), counter-clockwise
// from the front-right corner.
std::vector<Point2> sample_border(const VehicleFootprint& footprint, double spacing);

// Default border spacing: a quarter of the shorter footprint edge.
double default_border_spacing(const VehicleFootprint& footprint);

RelativeScene relativize(const VehicleFootprint& footprint, std::span<const Obstacle> obstacles,
                         double border_spacing);

struct TTCReport {
  TDValue ttc;
  Point2 critical_point;  // border point attaining the minimum, when finite
  std::vector<std::pair<std::string, TDValue>> per_obstacle;
};

// Time to collision: the minimum TD over border points against the obstacle
// set, with per-obstacle attribution. +infinity means no collision occurs
// under constant velocities.
TTCReport predict_ttc(const RelativeScene& scene);

}  // namespace timedist
