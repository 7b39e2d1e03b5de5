#include "timedist/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "timedist/planner.hpp"

namespace timedist {

std::vector<Obstacle> WorldState::current() const {
  std::vector<Obstacle> out;
  out.reserve(initial.size());
  for (std::size_t i = 0; i < initial.size(); ++i) out.push_back(current(i));
  return out;
}

Obstacle WorldState::current(std::size_t i) const {
  return initial[i].translated(displacement(initial[i].velocity(), elapsed));
}

WorldState step_world(const WorldState& state, double dt) {
  if (dt < 0.0) throw ValidationError("step_world requires dt >= 0");
  return {state.initial, state.elapsed + dt};
}

double goal_reached_tolerance(const VehicleFootprint& vehicle) { return 0.5 * vehicle.width; }

namespace {

bool footprint_collides(const VehicleFootprint& vehicle, const Pose2& pose,
                        const std::vector<Obstacle>& obstacles) {
  VehicleFootprint posed = vehicle;
  posed.pose = pose;
  const std::vector<Point2> rect = posed.corners();
  for (const Obstacle& o : obstacles) {
    if (const auto* poly = std::get_if<ConvexPolygonObstacle>(&o.shape)) {
      if (convex_polygons_overlap(rect, poly->vertices())) return true;
    } else {
      const auto& c = std::get<CircleObstacle>(o.shape);
      if (distance_point_convex(c.center, rect) <= c.radius) return true;
    }
  }
  return false;
}

struct TrackedPoint {
  Point2 position;
  double heading = 0.0;
  double curvature = 0.0;
  double v_d = 0.0;
};

// Arc length -> x via the sample table, then exact evaluation on the
// quintic, so the curvature-speed law holds exactly at every tracked pose.
TrackedPoint evaluate_at(const QuinticSegment& quintic, const std::vector<TrajectorySample>& traj,
                         double s, double v_cap, double a_n_max) {
  double x;
  if (traj.size() == 1 || s <= 0.0) {
    x = traj.front().position.x;
  } else if (s >= traj.back().s) {
    x = traj.back().position.x;
  } else {
    std::size_t hi = 1;
    while (traj[hi].s < s) ++hi;
    const TrajectorySample& a = traj[hi - 1];
    const TrajectorySample& b = traj[hi];
    const double span = b.s - a.s;
    const double t = span > 0.0 ? (s - a.s) / span : 0.0;
    x = a.position.x + (b.position.x - a.position.x) * t;
  }
  const double yp = quintic.dy(x);
  const double ypp = quintic.d2y(x);
  TrackedPoint out;
  out.position = {x, quintic.y(x)};
  out.heading = std::atan(yp);
  out.curvature = ypp / std::pow(1.0 + yp * yp, 1.5);
  const double rho = out.curvature != 0.0 ? 1.0 / std::abs(out.curvature)
                                          : std::numeric_limits<double>::infinity();
  out.v_d = curvature_limited_speed(rho, v_cap, a_n_max);
  return out;
}

}  // namespace

SimLog run(const Scenario& scenario, const PlannerConfig& planner_config,
           const SimConfig& sim_config) {
  SimLog log;
  WorldState world{scenario.obstacles, 0.0};
  VehicleFootprint vehicle = scenario.vehicle;
  const double goal_tol = goal_reached_tolerance(vehicle);
  const double cruise = vehicle.speed > 0.0 ? vehicle.speed : vehicle.v_max;
  const double arc_step = scenario.lookahead > 0.0 ? scenario.lookahead / 50.0
                                                   : vehicle.length / 50.0;
  double carried_curvature = 0.0;
  double t = 0.0;
  double path_length = 0.0;
  bool done = false;

  log.steps.push_back({t, vehicle.pose, vehicle.speed, carried_curvature});

  while (!done) {
    if (norm(vehicle.pose.position - scenario.goal) <= goal_tol) {
      log.outcome = SimOutcome::kGoalReached;
      break;
    }
    if (t >= sim_config.max_time) {
      log.outcome = SimOutcome::kTimeout;
      break;
    }

    Scenario snapshot = scenario;
    snapshot.vehicle = vehicle;
    snapshot.obstacles = world.current();
    const PathPolyline path = plan_path(snapshot, planner_config);
    if (path.empty()) {
      log.outcome = SimOutcome::kNoPath;
      break;
    }

    const double lookahead = scenario.lookahead > 0.0 ? scenario.lookahead : vehicle.length;
    const Point2 target = lookahead_point(path, lookahead);
    if (!(target.x > 0.0)) {
      // Degenerate look-ahead (first section behind or at the origin).
      log.outcome = SimOutcome::kNoPath;
      break;
    }
    // End tangent along the chord to the look-ahead point, with the steering
    // bounded: the raw polyline slope at the station can be a whole-cell
    // jump, and an unbounded tangent winds the heading up replan after
    // replan. The orientation is only changed slightly while tracking.
    const double end_slope = std::clamp(target.y / target.x, -0.7, 0.7);
    const QuinticSegment quintic =
        fit_quintic(carried_curvature, target.x, target.y, end_slope);
    const std::vector<TrajectorySample> traj =
        speed_profile(quintic, cruise, vehicle.a_n_max, arc_step);
    log.replans.push_back({t, vehicle.pose, vehicle.speed, path, traj});

    const Frame plan_frame(vehicle.pose);
    const double total = trajectory_length(traj);
    const double budget = std::max(sim_config.replan_fraction * total, 1e-9);
    double tracked = 0.0;

    while (tracked < budget) {
      const TrackedPoint at = evaluate_at(quintic, traj, tracked, cruise, vehicle.a_n_max);
      const double v = std::max(at.v_d, 1e-9);
      tracked = std::min(tracked + v * sim_config.dt, total);
      const TrackedPoint next = evaluate_at(quintic, traj, tracked, cruise, vehicle.a_n_max);

      world = step_world(world, sim_config.dt);
      t += sim_config.dt;
      vehicle.pose.position = plan_frame.to_global(next.position);
      vehicle.pose.heading = normalize_angle(plan_frame.rotation + next.heading);
      vehicle.speed = std::min(next.v_d, vehicle.v_max);
      // Carried into the next plan's start condition, capped at the
      // look-ahead scale: inheriting arbitrarily tight curvature lets each
      // replan wind the heading further (a positive feedback that can spiral
      // the vehicle in place).
      carried_curvature = std::clamp(next.curvature, -0.5 / lookahead, 0.5 / lookahead);
      path_length += norm(vehicle.pose.position - log.steps.back().pose.position);
      log.steps.push_back({t, vehicle.pose, vehicle.speed, next.curvature});

      if (sim_config.collision_audit &&
          footprint_collides(scenario.vehicle, vehicle.pose, world.current())) {
        log.outcome = SimOutcome::kCollision;
        log.collision_time = t;
        done = true;
        break;
      }
      if (norm(vehicle.pose.position - scenario.goal) <= goal_tol) {
        log.outcome = SimOutcome::kGoalReached;
        done = true;
        break;
      }
      if (t >= sim_config.max_time) {
        log.outcome = SimOutcome::kTimeout;
        done = true;
        break;
      }
      if (tracked >= total) break;  // trajectory exhausted; replan
    }
  }

  log.duration = t;
  log.path_length = path_length;
  return log;
}

}  // namespace timedist
