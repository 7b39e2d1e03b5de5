#include "timedist/planner.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace timedist {

namespace {

constexpr double kDegenerateArea = 1e-12;

struct HalfPlane {
  Point2 axis;     // outward unit normal
  double offset;   // dot(edge center, axis)
};

HalfPlane half_plane_of(const SegmentEdge& e) {
  const double theta = edge_normal_angle(e, /*outward=*/true);
  const Point2 axis{std::cos(theta), std::sin(theta)};
  const SegmentProps props = segment_props(e);
  return {axis, dot(props.center, axis)};
}

double signed_area2(std::span<const Point2> verts) {
  double acc = 0.0;
  const std::size_t n = verts.size();
  for (std::size_t i = 0; i < n; ++i) acc += cross(verts[i], verts[(i + 1) % n]);
  return acc;
}

}  // namespace

FutureObstacle future_relative_geometry(const ConvexPolygonObstacle& poly,
                                        Velocity2 vehicle_velocity, double horizon_cap) {
  const Velocity2 absolute = poly.velocity();
  const Velocity2 relative = absolute - vehicle_velocity;
  FutureObstacle out;
  out.relative_velocity = relative;
  out.vertices.reserve(poly.size());
  for (const Point2 q : poly.vertices()) {
    // Crossing time of the vehicle's lateral axis under the relative motion,
    // capped when the vertex never reaches it.
    const TDValue crossing = td_point_1d(0.0, q.x, relative.vx);
    const double t_q = crossing.is_finite() ? std::min(crossing.seconds(), horizon_cap)
                                            : horizon_cap;
    out.vertices.push_back(q + Point2{absolute.vx * t_q, absolute.vy * t_q});
  }
  const double area2 = signed_area2(out.vertices);
  if (std::abs(area2) < kDegenerateArea)
    throw ValidationError("future relative geometry degenerates to zero area");
  if (area2 < 0.0) std::reverse(out.vertices.begin(), out.vertices.end());
  return out;
}

// Per-obstacle evaluation caches used by PreparedScene::field.
struct PreparedScene::Impl {
  struct DynamicEval {
    std::vector<MovingSegmentTD> td_edges;  // empty when stationary relative
    std::vector<HalfPlane> occupancy;
    std::vector<SegmentEdge> edges;
  };
  struct StaticEval {
    std::vector<HalfPlane> occupancy;        // polygon form
    std::optional<CircleObstacle> circle;    // circle form
  };
  std::vector<DynamicEval> dynamic_evals;
  std::vector<StaticEval> static_evals;
};

PreparedScene::PreparedScene() = default;
PreparedScene::~PreparedScene() = default;
PreparedScene::PreparedScene(PreparedScene&&) noexcept = default;
PreparedScene& PreparedScene::operator=(PreparedScene&&) noexcept = default;

PreparedScene PreparedScene::prepare(const Scenario& scenario, const PlannerConfig& config) {
  PreparedScene scene;
  scene.impl_ = std::make_unique<Impl>();
  scene.mode_ = config.mode;
  const Frame frame(scenario.vehicle.pose);
  scene.goal_ = frame.to_local(scenario.goal);
  scene.delta_ = std::atan2(scene.goal_.y, scene.goal_.x);
  scene.route_ = config.route.with_delta(scene.delta_);

  const double r = scenario.vehicle.circumradius();
  const Velocity2 vehicle_v_local{scenario.vehicle.speed, 0.0};

  for (const Obstacle& raw : scenario.obstacles) {
    Obstacle configured = inflate(raw, r);
    // Into the planning frame; shape velocity becomes the relative velocity.
    const Velocity2 absolute_local = frame.to_local(raw.velocity());
    const Velocity2 relative_local = absolute_local - vehicle_v_local;
    if (auto* poly = std::get_if<ConvexPolygonObstacle>(&configured.shape)) {
      std::vector<Point2> verts;
      verts.reserve(poly->vertices().size());
      for (const Point2 v : poly->vertices()) verts.push_back(frame.to_local(v));
      configured.shape = ConvexPolygonObstacle(std::move(verts), relative_local);
    } else {
      auto& circle = std::get<CircleObstacle>(configured.shape);
      configured.shape =
          CircleObstacle(frame.to_local(circle.center), circle.radius, relative_local);
    }

    if (config.mode == PlanMode::kDynamic) {
      const ConvexPolygonObstacle* poly = std::get_if<ConvexPolygonObstacle>(&configured.shape);
      if (poly == nullptr) {
        const auto& circle = std::get<CircleObstacle>(configured.shape);
        if (!scenario.approximate_circles)
          throw ConfigError("obstacle '" + raw.id +
                            "': dynamic mode supports polygon obstacles only (the future "
                            "relative geometry of a circle is elliptical); enable "
                            "approximate_circles to opt in to an inscribed polygon");
        configured.shape =
            inscribe_polygon(circle, std::max(3, scenario.circle_approx_vertices));
        poly = std::get_if<ConvexPolygonObstacle>(&configured.shape);
      }
      ConvexPolygonObstacle abs_poly = poly->with_velocity(absolute_local);
      FutureObstacle fut;
      try {
        fut = future_relative_geometry(abs_poly, vehicle_v_local, config.horizon_cap);
      } catch (const ValidationError& err) {
        throw ValidationError("obstacle '" + raw.id + "': " + err.what());
      }
      fut.id = raw.id;

      Impl::DynamicEval eval;
      const std::size_t n = fut.vertices.size();
      eval.edges.reserve(n);
      for (std::size_t i = 0; i < n; ++i)
        eval.edges.emplace_back(fut.vertices[i], fut.vertices[(i + 1) % n],
                                fut.relative_velocity);
      for (const SegmentEdge& e : eval.edges) eval.occupancy.push_back(half_plane_of(e));
      if (!(fut.relative_velocity == Velocity2{})) {
        eval.td_edges.reserve(n);
        for (const SegmentEdge& e : eval.edges)
          eval.td_edges.push_back(MovingSegmentTD::from_edge(e));
      }
      scene.impl_->dynamic_evals.push_back(std::move(eval));
      scene.future_.push_back(std::move(fut));
    } else {
      Impl::StaticEval eval;
      if (const auto* poly = std::get_if<ConvexPolygonObstacle>(&configured.shape)) {
        for (const SegmentEdge& e : poly->edges()) eval.occupancy.push_back(half_plane_of(e));
      } else {
        eval.circle = std::get<CircleObstacle>(configured.shape);
      }
      scene.impl_->static_evals.push_back(std::move(eval));
    }
    scene.obstacles_.push_back(std::move(configured));
  }
  return scene;
}

namespace {

// Occupied y-interval {y : dot((x, y), n_i) <= c_i for all i} of a convex
// half-plane set at fixed x.
std::optional<std::pair<double, double>> half_plane_slice(const std::vector<HalfPlane>& planes,
                                                          double x) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const HalfPlane& hp : planes) {
    const double rem = hp.offset - x * hp.axis.x;
    if (hp.axis.y > 0.0) {
      hi = std::min(hi, rem / hp.axis.y);
    } else if (hp.axis.y < 0.0) {
      lo = std::max(lo, rem / hp.axis.y);
    } else if (rem < 0.0) {
      return std::nullopt;  // vertical edge excludes this x entirely
    }
  }
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

}  // namespace

std::vector<std::pair<double, double>> PreparedScene::occupied_slices(double x) const {
  std::vector<std::pair<double, double>> out;
  if (mode_ == PlanMode::kDynamic) {
    for (const auto& eval : impl_->dynamic_evals) {
      if (const auto slice = half_plane_slice(eval.occupancy, x)) out.push_back(*slice);
    }
  } else {
    for (const auto& eval : impl_->static_evals) {
      if (eval.circle.has_value()) {
        const CircleObstacle& c = *eval.circle;
        const double dx = x - c.center.x;
        const double disc = c.radius * c.radius - dx * dx;
        if (disc >= 0.0) {
          const double half = std::sqrt(disc);
          out.emplace_back(c.center.y - half, c.center.y + half);
        }
      } else if (const auto slice = half_plane_slice(eval.occupancy, x)) {
        out.push_back(*slice);
      }
    }
  }
  return out;
}

TDValue PreparedScene::field(Point2 p) const {
  const double rf = route_value(p, route_);
  TDValue acc = TDValue::of(std::max(rf, 0.0));
  if (mode_ == PlanMode::kDynamic) {
    for (const auto& eval : impl_->dynamic_evals) {
      bool occupied = true;
      for (const HalfPlane& hp : eval.occupancy) {
        if (dot(p, hp.axis) > hp.offset) {
          occupied = false;
          break;
        }
      }
      if (occupied) return TDValue::of(0.0);
      if (!eval.td_edges.empty()) {
        for (const MovingSegmentTD& ctx : eval.td_edges) acc = min(acc, td_segment(p, ctx));
      }
    }
  } else {
    for (const auto& eval : impl_->static_evals) {
      if (eval.circle.has_value()) {
        const CircleObstacle& c = *eval.circle;
        if (squared_norm(p - c.center) <= c.radius * c.radius) return TDValue::of(0.0);
        continue;
      }
      bool occupied = true;
      for (const HalfPlane& hp : eval.occupancy) {
        if (dot(p, hp.axis) > hp.offset) {
          occupied = false;
          break;
        }
      }
      if (occupied) return TDValue::of(0.0);
    }
  }
  return acc;
}

SectionResult section_tp(double x, const PreparedScene& scene, const PlannerConfig& config) {
  const int cells =
      std::max(1, static_cast<int>(std::ceil((config.y_max - config.y_min) / config.dy - 1e-9)));
  const double preferred = x * std::tan(scene.goal_line_bearing());

  // Regular grid plus the goal-line crossing and half-cell clearances of
  // every occupancy boundary on this section.
  std::vector<double> ys;
  ys.reserve(static_cast<std::size_t>(cells) + 8);
  for (int j = 0; j <= cells; ++j)
    ys.push_back(config.y_min + (config.y_max - config.y_min) * j / cells);
  const auto add = [&](double y) {
    if (y >= config.y_min && y <= config.y_max) ys.push_back(y);
  };
  add(preferred);
  for (const auto& [lo, hi] : scene.occupied_slices(x)) {
    add(lo - 0.5 * config.dy);
    add(hi + 0.5 * config.dy);
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  SectionProfile profile;
  profile.x = x;
  profile.samples.reserve(ys.size());
  for (const double y : ys) profile.samples.push_back({y, scene.field({x, y})});
  const SectionChoice choice = section_argmax(profile, {preferred});
  return {choice.t_p, choice.y_p};
}

bool admissible(TDValue t_p, PlanMode mode, double t_s) {
  if (mode == PlanMode::kStatic) return t_p.seconds() > 0.0;
  return t_p.seconds() >= t_s;
}

PathPolyline plan_path(const Scenario& scenario, const PlannerConfig& config) {
  const PreparedScene scene = PreparedScene::prepare(scenario, config);
  const Point2 goal = scene.goal();
  PathPolyline path;
  if (goal.x <= 0.0) {
    path.terminated = PathTermination::kWorkspaceEdge;
    return path;
  }
  if (config.mode == PlanMode::kDynamic) {
    double y_extent = 0.0;
    for (const double x : {0.0, goal.x})
      for (const double y : {config.y_min, config.y_max})
        y_extent = std::max(y_extent,
                            std::abs(goal_lateral_offset({x, y}, scene.goal_line_bearing())));
    const FeasibilityReport feas = rf_feasibility(scene.route(), y_extent);
    if (!feas.pass)
      throw ConfigError("route function infeasible for this workspace: margin " +
                        std::to_string(feas.margin) + " s; raise alpha or shrink beta/gamma");
  }

  // Sections at dx, 2dx, ... with the goal section appended; a regular
  // section within half a step of the goal is merged into it so the final
  // segment cannot degenerate.
  std::vector<double> sections;
  for (double x = config.dx; x < goal.x - 0.5 * config.dx; x += config.dx)
    sections.push_back(x);
  sections.push_back(goal.x);

  // Sections are independent; evaluate them concurrently and assemble in
  // order, so the polyline is bit-identical to a serial sweep.
  std::vector<SectionResult> results(sections.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(hw, sections.size() / 16 + 1));
  if (workers > 1) {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < sections.size(); i += workers)
          results[i] = section_tp(sections[i], scene, config);
      });
    }
    for (std::thread& t : pool) t.join();
  } else {
    for (std::size_t i = 0; i < sections.size(); ++i)
      results[i] = section_tp(sections[i], scene, config);
  }

  path.terminated = PathTermination::kReachedGoalSection;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    if (!admissible(results[i].t_p, config.mode, config.t_s())) {
      path.terminated = PathTermination::kSafetyCutoff;
      break;
    }
    path.points.push_back({sections[i], results[i].y_p, results[i].t_p});
  }

  if (path.terminated == PathTermination::kReachedGoalSection && !path.points.empty()) {
    // The final section sits exactly at the goal's x, so snapping only moves
    // the lateral coordinate. Snap only when the goal itself is admissible.
    PathPoint& last = path.points.back();
    const double miss = norm(Point2{last.x, last.y} - goal);
    if (miss > 0.0 && miss <= config.goal_tolerance) {
      const TDValue at_goal = scene.field(goal);
      if (admissible(at_goal, config.mode, config.t_s())) {
        last.x = goal.x;
        last.y = goal.y;
        last.t_p = at_goal;
      }
    }
  }
  return path;
}

}  // namespace timedist
