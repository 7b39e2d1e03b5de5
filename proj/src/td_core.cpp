#include "timedist/td_core.hpp"

#include <cmath>
#include <complex>

namespace timedist {

namespace {

constexpr double kBoundaryTol = 1e-12;

}  // namespace

TDValue td_point_1d(double y_target, double y_b, double v_rel) {
  if (y_target == y_b) return TDValue::of(0.0);
  if (v_rel != 0.0) {
    const double t = (y_target - y_b) / v_rel;
    if (t > 0.0) return TDValue::of(t);
  }
  return TDValue::infinity();
}

MovingSegmentTD MovingSegmentTD::from_edge(const SegmentEdge& e) {
  const auto heading = velocity_heading(e.velocity);
  if (!heading)
    throw ValidationError("MovingSegmentTD requires a nonzero relative velocity");
  MovingSegmentTD ctx;
  ctx.theta_prime = *heading;
  ctx.theta_dprime = edge_normal_angle(e, /*outward=*/false);
  ctx.cos_d = std::cos(ctx.theta_dprime);
  ctx.sin_d = std::sin(ctx.theta_dprime);
  const SegmentProps props = segment_props(e);
  ctx.center0 = {props.center.x * ctx.cos_d + props.center.y * ctx.sin_d,
                 -props.center.x * ctx.sin_d + props.center.y * ctx.cos_d};
  ctx.length = props.length;
  ctx.v_xdprime = e.velocity.vx * ctx.cos_d + e.velocity.vy * ctx.sin_d;
  ctx.v_ydprime = -e.velocity.vx * ctx.sin_d + e.velocity.vy * ctx.cos_d;

  const Point2 d = e.q_l - e.q_r;
  ctx.tangential = cross(Point2{e.velocity.vx, e.velocity.vy}, d) == 0.0;
  ctx.center = props.center;
  ctx.unit_dir = d * (1.0 / props.length);
  ctx.v_along = e.velocity.vx * ctx.unit_dir.x + e.velocity.vy * ctx.unit_dir.y;
  return ctx;
}

double MovingSegmentTD::band_center(double x_dprime) const {
  // tan(theta' - theta'') expressed through the velocity components in the
  // normal-axis frame.
  return center0.y + (x_dprime - center0.x) * (v_ydprime / v_xdprime);
}

TDValue td_segment(Point2 p, const MovingSegmentTD& ctx) {
  if (ctx.tangential) {
    // Edge slides along its own line; the swept set is that line.
    const Point2 rel = p - ctx.center;
    if (std::abs(cross(ctx.unit_dir, rel)) > kBoundaryTol) return TDValue::infinity();
    const double s = dot(rel, ctx.unit_dir);
    const double gap = std::abs(s) - 0.5 * ctx.length;
    if (gap <= 0.0) return TDValue::of(0.0);
    const double closing = (s > 0.0) ? ctx.v_along : -ctx.v_along;
    if (closing > 0.0) return TDValue::of(gap / closing);
    return TDValue::infinity();
  }
  const Point2 q{p.x * ctx.cos_d + p.y * ctx.sin_d, -p.x * ctx.sin_d + p.y * ctx.cos_d};
  // Band membership: within half the edge length of the band center line.
  if (std::abs(q.y - ctx.band_center(q.x)) > 0.5 * ctx.length) return TDValue::infinity();
  return td_point_1d(q.x, ctx.center0.x, ctx.v_xdprime);
}

TDValue td_segment(Point2 p, const SegmentEdge& e) {
  if (e.velocity.vx == 0.0 && e.velocity.vy == 0.0) {
    // Stationary relative edge: never reaches any exterior point; boundary
    // points are already touching.
    if (distance_point_segment(p, e.q_r, e.q_l) <= kBoundaryTol) return TDValue::of(0.0);
    return TDValue::infinity();
  }
  return td_segment(p, MovingSegmentTD::from_edge(e));
}

MovingCircleTD MovingCircleTD::from_circle(const CircleObstacle& c) {
  const auto heading = velocity_heading(c.velocity);
  if (!heading)
    throw ValidationError("MovingCircleTD requires a nonzero relative velocity");
  MovingCircleTD ctx;
  ctx.theta_prime = *heading;
  ctx.cos_p = std::cos(ctx.theta_prime);
  ctx.sin_p = std::sin(ctx.theta_prime);
  ctx.center0 = {c.center.x * ctx.cos_p + c.center.y * ctx.sin_p,
                 -c.center.x * ctx.sin_p + c.center.y * ctx.cos_p};
  ctx.radius = c.radius;
  ctx.speed = speed_of(c.velocity);
  return ctx;
}

int q_band_complex(double radius, double dy) {
  const std::complex<double> root =
      std::sqrt(std::complex<double>(radius * radius - dy * dy, 0.0));
  const double im = root.imag();
  const int sign_im = (im > 0.0) - (im < 0.0);
  return 1 - std::abs(sign_im);
}

int q_band_sign(double radius, double dy) {
  const double inner = radius - std::abs(dy);
  const int sign_inner = (inner > 0.0) - (inner < 0.0);
  const int outer = sign_inner + 1;
  return (outer > 0) - (outer < 0);
}

TDValue td_circle(Point2 p, const MovingCircleTD& ctx) {
  const Point2 q{p.x * ctx.cos_p + p.y * ctx.sin_p, -p.x * ctx.sin_p + p.y * ctx.cos_p};
  const double dy = q.y - ctx.center0.y;
  if (q_band_sign(ctx.radius, dy) == 0) return TDValue::infinity();
  const double leading = ctx.center0.x + std::sqrt(ctx.radius * ctx.radius - dy * dy);
  return td_point_1d(q.x, leading, ctx.speed);
}

TDValue td_circle(Point2 p, const CircleObstacle& c) {
  if (c.velocity.vx == 0.0 && c.velocity.vy == 0.0) {
    if (std::abs(norm(p - c.center) - c.radius) <= kBoundaryTol) return TDValue::of(0.0);
    return TDValue::infinity();
  }
  return td_circle(p, MovingCircleTD::from_circle(c));
}

TDValue td_polygon(Point2 p, const ConvexPolygonObstacle& poly) {
  TDValue best = TDValue::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i)
    best = min(best, td_segment(p, poly.edge(i)));
  return best;
}

TDValue td_obstacle(Point2 p, const Obstacle& obstacle) {
  return std::visit(
      [&](const auto& shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, ConvexPolygonObstacle>)
          return td_polygon(p, shape);
        else
          return td_circle(p, shape);
      },
      obstacle.shape);
}

TDValue td_set(Point2 p, std::span<const Obstacle> obstacles) {
  TDValue best = TDValue::infinity();
  for (const Obstacle& o : obstacles) best = min(best, td_obstacle(p, o));
  return best;
}

SectionChoice section_argmax(const SectionProfile& profile, TieRule tie) {
  if (profile.samples.empty())
    throw ValidationError("section_argmax requires a non-empty profile");
  TDValue best = profile.samples.front().td;
  for (const SectionSample& s : profile.samples) best = max(best, s.td);
  const SectionSample* chosen = nullptr;
  double chosen_key = 0.0;
  for (const SectionSample& s : profile.samples) {
    if (s.td != best) continue;
    const double key = std::abs(s.y - tie.preferred_y);
    if (chosen == nullptr || key < chosen_key) {
      chosen = &s;
      chosen_key = key;
    }
    // Equal key keeps the earlier (smaller-y) sample: y is strictly increasing.
  }
  return {best, chosen->y};
}

}  // namespace timedist
