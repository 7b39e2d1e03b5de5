#include "timedist/guidance.hpp"

#include <cmath>

namespace timedist {

ZInfValue zinf_edge(Point2 p, const SegmentEdge& e) {
  const double theta = edge_normal_angle(e, /*outward=*/true);
  const Point2 axis{std::cos(theta), std::sin(theta)};
  const SegmentProps props = segment_props(e);
  // Inner side of the outward axis, boundary inclusive.
  return {dot(p, axis) <= dot(props.center, axis)};
}

ZInfValue zinf_polygon(Point2 p, const ConvexPolygonObstacle& poly) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (!zinf_edge(p, poly.edge(i)).occupied) return {false};
  }
  return {true};
}

ZInfValue zinf_rect(Point2 p, const RectSpec& rect) {
  const Point2 local = to_frame(p - rect.center, rect.angle);
  return {std::abs(local.x) <= 0.5 * rect.length && std::abs(local.y) <= 0.5 * rect.width};
}

ZInfValue zinf_circle(Point2 p, const CircleObstacle& circle) {
  return {squared_norm(p - circle.center) <= circle.radius * circle.radius};
}

ZInfValue zinf_obstacle(Point2 p, const Obstacle& obstacle) {
  return std::visit(
      [&](const auto& shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, ConvexPolygonObstacle>)
          return zinf_polygon(p, shape);
        else
          return zinf_circle(p, shape);
      },
      obstacle.shape);
}

double goal_lateral_offset(Point2 p, double delta) {
  return p.y * std::cos(delta) - p.x * std::sin(delta);
}

RouteParams::RouteParams(double t_s_, double alpha_, double beta_, double gamma_, double delta_)
    : t_s(t_s_), alpha(alpha_), beta(beta_), gamma(gamma_), delta(delta_) {
  if (!(t_s > 0.0)) throw ValidationError("route params: T_s must be > 0");
  if (!(alpha > 1.0)) throw ValidationError("route params: alpha must be > 1");
  if (!(beta > 0.0 && beta < 1.0)) throw ValidationError("route params: beta must be in (0, 1)");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ValidationError("route params: gamma must be in (0, 1)");
  if (!std::isfinite(delta)) throw ValidationError("route params: delta must be finite");
}

double route_value(Point2 p, const RouteParams& params) {
  const double y_g = goal_lateral_offset(p, params.delta);
  return params.alpha * params.t_s - params.beta * std::pow(std::abs(y_g), params.gamma);
}

FeasibilityReport rf_feasibility(double t_s, double alpha, double beta, double gamma,
                                 double y_extent) {
  const double worst = alpha * t_s - beta * std::pow(std::abs(y_extent), gamma);
  const double margin = worst - t_s;
  return {margin >= 0.0, margin};
}

FeasibilityReport rf_feasibility(const RouteParams& params, double y_extent) {
  return rf_feasibility(params.t_s, params.alpha, params.beta, params.gamma, y_extent);
}

}  // namespace timedist
