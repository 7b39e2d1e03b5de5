#include "timedist/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace timedist {

double QuinticSegment::y(double x) const {
  double acc = 0.0;
  for (int k = 5; k >= 0; --k) acc = acc * x + coeffs[static_cast<std::size_t>(k)];
  return acc;
}

double QuinticSegment::dy(double x) const {
  double acc = 0.0;
  for (int k = 5; k >= 1; --k) acc = acc * x + k * coeffs[static_cast<std::size_t>(k)];
  return acc;
}

double QuinticSegment::d2y(double x) const {
  double acc = 0.0;
  for (int k = 5; k >= 2; --k) acc = acc * x + k * (k - 1) * coeffs[static_cast<std::size_t>(k)];
  return acc;
}

namespace {

double segment_length(const PathPoint& a, const PathPoint& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

}  // namespace

Point2 lookahead_point(const PathPolyline& path, double distance) {
  if (path.empty()) throw ValidationError("lookahead on an empty path");
  const auto& pts = path.points;
  if (distance <= 0.0 || pts.size() == 1) {
    if (distance > 0.0) return {pts.back().x, pts.back().y};
    return {pts.front().x, pts.front().y};
  }
  double walked = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double len = segment_length(pts[i], pts[i + 1]);
    if (walked + len >= distance) {
      const double t = len > 0.0 ? (distance - walked) / len : 0.0;
      return {pts[i].x + (pts[i + 1].x - pts[i].x) * t, pts[i].y + (pts[i + 1].y - pts[i].y) * t};
    }
    walked += len;
  }
  return {pts.back().x, pts.back().y};
}

QuinticSegment fit_quintic(double start_curvature, double x_l, double y_l, double end_slope) {
  if (!(x_l > 0.0)) throw ValidationError("fit_quintic requires x_l > 0");
  // Solved in normalized u = x/x_l for conditioning; the first three
  // normalized coefficients follow directly from the clamped start, the
  // remaining three from the 3x3 system of the end conditions.
  const double a2 = 0.5 * start_curvature * x_l * x_l;
  const double s1 = y_l - a2;
  const double s2 = end_slope * x_l - 2.0 * a2;
  const double s3 = -2.0 * a2;
  const double a3 = (20.0 * s1 - 8.0 * s2 + s3) / 2.0;
  const double a4 = (-30.0 * s1 + 14.0 * s2 - 2.0 * s3) / 2.0;
  const double a5 = (12.0 * s1 - 6.0 * s2 + s3) / 2.0;
  QuinticSegment seg;
  seg.x_l = x_l;
  const double inv = 1.0 / x_l;
  double scale = 1.0;
  const double normalized[6] = {0.0, 0.0, a2, a3, a4, a5};
  for (std::size_t k = 0; k < 6; ++k) {
    seg.coeffs[k] = normalized[k] * scale;
    scale *= inv;
  }
  return seg;
}

double min_turn_radius(double v_max, double a_n_max) { return v_max * v_max / a_n_max; }

double curvature_limited_speed(double rho, double v_max, double a_n_max) {
  if (std::isinf(rho)) return v_max;
  return std::min(v_max, std::sqrt(a_n_max * rho));
}

std::vector<TrajectorySample> speed_profile(const QuinticSegment& seg, double v_cap,
                                            double a_n_max, double arc_step) {
  if (!(v_cap > 0.0) || !(a_n_max > 0.0) || !(arc_step > 0.0))
    throw ValidationError("speed_profile requires positive v_cap, a_n_max, arc_step");
  // Dense arc-length table over x, then resampling at uniform arc steps.
  constexpr int kDense = 2000;
  std::vector<double> xs(kDense + 1), ss(kDense + 1);
  double s = 0.0;
  double prev_speed = std::hypot(1.0, seg.dy(0.0));
  xs[0] = 0.0;
  ss[0] = 0.0;
  for (int i = 1; i <= kDense; ++i) {
    const double x = seg.x_l * i / kDense;
    const double speed = std::hypot(1.0, seg.dy(x));
    s += 0.5 * (prev_speed + speed) * (seg.x_l / kDense);
    prev_speed = speed;
    xs[static_cast<std::size_t>(i)] = x;
    ss[static_cast<std::size_t>(i)] = s;
  }
  const double total = ss.back();

  const auto x_at_arc = [&](double target) {
    const auto it = std::lower_bound(ss.begin(), ss.end(), target);
    if (it == ss.begin()) return 0.0;
    if (it == ss.end()) return seg.x_l;
    const std::size_t hi = static_cast<std::size_t>(it - ss.begin());
    const std::size_t lo = hi - 1;
    const double span = ss[hi] - ss[lo];
    const double t = span > 0.0 ? (target - ss[lo]) / span : 0.0;
    return xs[lo] + (xs[hi] - xs[lo]) * t;
  };

  const int count = std::max(1, static_cast<int>(std::ceil(total / arc_step)));
  std::vector<TrajectorySample> out;
  out.reserve(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) {
    const double target = std::min(total, total * i / count);
    const double x = x_at_arc(target);
    const double yp = seg.dy(x);
    const double ypp = seg.d2y(x);
    TrajectorySample sample;
    sample.position = {x, seg.y(x)};
    sample.heading = std::atan(yp);
    const double denom = std::pow(1.0 + yp * yp, 1.5);
    sample.curvature = ypp / denom;
    sample.rho = sample.curvature != 0.0 ? 1.0 / std::abs(sample.curvature)
                                         : std::numeric_limits<double>::infinity();
    sample.v_d = curvature_limited_speed(sample.rho, v_cap, a_n_max);
    sample.s = target;
    out.push_back(sample);
  }
  return out;
}

double trajectory_length(const std::vector<TrajectorySample>& samples) {
  return samples.empty() ? 0.0 : samples.back().s;
}

}  // namespace timedist
