#pragma once

#include <span>

#include "timedist/geometry.hpp"
#include "timedist/td_value.hpp"

namespace timedist::oracle {

// Brute-force references, deliberately slow and simple. They test the
// time-distance definition directly by stepping shapes through time and
// asking containment/overlap questions; they share only the geometric
// primitives with the closed-form path they check.

struct OracleConfig {
  double dt = 1e-4;
  double horizon = 50.0;
  int grid_refinement = 1;
};

struct TimedHit {
  TDValue td;
  // Smallest distance between the query and the shape over all sampled
  // times (0 when a hit was found). A no-hit verdict with min_clearance
  // greater than the per-step travel cannot have missed a hit between
  // samples; randomized tests use that as their acceptance filter.
  double min_clearance = 0.0;
};

// First sampled time at which the point is inside or on the translating
// shape, else +infinity past the horizon.
TimedHit oracle_td(Point2 p, const ConvexPolygonObstacle& poly, const OracleConfig& cfg);
TimedHit oracle_td(Point2 p, const CircleObstacle& circle, const OracleConfig& cfg);
TimedHit oracle_td(Point2 p, const Obstacle& obstacle, const OracleConfig& cfg);

// A translating zero-thickness segment meets a point at an isolated instant,
// so containment sampling cannot see it. The distance from the point to the
// segment is convex in time; a coarse scan plus ternary refinement locates
// its minimum, and a hit is declared when that minimum is (numerically)
// zero. The refined time is returned.
TimedHit oracle_td(Point2 p, const SegmentEdge& edge, const OracleConfig& cfg);

// First sampled time at which the (stationary, origin-centered, axis-aligned)
// vehicle rectangle overlaps any obstacle moving at its relative velocity.
TimedHit oracle_ttc(double vehicle_length, double vehicle_width,
                    std::span<const Obstacle> relative_obstacles, const OracleConfig& cfg);

enum class AStarStatus { kOk, kBlocked, kInvalidEndpoint };

struct AStarResult {
  AStarStatus status = AStarStatus::kBlocked;
  double length = 0.0;  // meters, valid when status == kOk
};

// 8-connected A* shortest path over an occupancy grid rasterized from the
// inflated obstacles (diagonal step cost sqrt(2)*cell). The grid covers the
// bounding box of start, goal, and all obstacles plus a margin. Baseline for
// path-length comparisons; static obstacles only.
AStarResult grid_astar(Point2 start, Point2 goal, std::span<const Obstacle> inflated_obstacles,
                       double cell);

}  // namespace timedist::oracle
