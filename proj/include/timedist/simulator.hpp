#pragma once

#include <vector>

#include "timedist/scenario.hpp"
#include "timedist/trajectory.hpp"
#include "timedist/types.hpp"

namespace timedist {

enum class SimOutcome { kGoalReached, kCollision, kNoPath, kTimeout };

struct SimStep {
  double t = 0.0;
  Pose2 pose;
  double speed = 0.0;
  double curvature = 0.0;  // trajectory curvature at this pose
};

struct ReplanRecord {
  double t = 0.0;
  Pose2 pose;                               // planning frame origin in the world
  double speed = 0.0;                       // vehicle speed entering this plan
  PathPolyline path;                        // planning-frame coordinates
  std::vector<TrajectorySample> trajectory; // planning-frame coordinates
};

struct SimLog {
  std::vector<SimStep> steps;
  std::vector<ReplanRecord> replans;
  SimOutcome outcome = SimOutcome::kTimeout;
  double path_length = 0.0;  // arc length of the tracked poses
  double duration = 0.0;
  double collision_time = -1.0;  // valid when outcome == kCollision
};

// World advanced by exact constant-velocity translation. Positions are
// derived from the initial shapes and total elapsed time, so composing steps
// is bit-exact.
struct WorldState {
  std::vector<Obstacle> initial;
  double elapsed = 0.0;

  std::vector<Obstacle> current() const;
  Obstacle current(std::size_t i) const;
};

WorldState step_world(const WorldState& state, double dt);

// Closed-loop replanning simulation: plan, smooth to the look-ahead point,
// track the trajectory for replan_fraction of its arc length with the world
// advancing in lockstep, repeat. Tracking is ideal (the pose follows the
// trajectory exactly); collision is an outcome, not an error.
SimLog run(const Scenario& scenario, const PlannerConfig& planner_config,
           const SimConfig& sim_config);

// Goal-reached distance: half the vehicle width.
double goal_reached_tolerance(const VehicleFootprint& vehicle);

}  // namespace timedist
