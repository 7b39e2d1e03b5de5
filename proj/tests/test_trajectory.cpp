#include "timedist/trajectory.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace timedist {
namespace {

using testing::Rng;

PathPolyline straight_path(double length, double step = 0.05) {
  PathPolyline path;
  for (double x = step; x <= length + 1e-12; x += step)
    path.points.push_back({x, 0.0, TDValue::infinity()});
  path.terminated = PathTermination::kReachedGoalSection;
  return path;
}

TEST(Lookahead, StraightPath) {
  const PathPolyline path = straight_path(1.0);
  const Point2 p = lookahead_point(path, 0.225);
  EXPECT_NEAR(p.x, 0.05 + 0.225, 1e-12);
  EXPECT_DOUBLE_EQ(p.y, 0.0);
}

TEST(Lookahead, ClampsToPathEnd) {
  const PathPolyline path = straight_path(0.4);
  const Point2 p = lookahead_point(path, 5.0);
  EXPECT_NEAR(p.x, 0.4, 1e-12);
}

TEST(Lookahead, LShapedMatchesCumulativeLengths) {
  PathPolyline path;
  path.points.push_back({1.0, 0.0, TDValue::infinity()});
  path.points.push_back({2.0, 0.0, TDValue::infinity()});
  path.points.push_back({2.5, 1.2, TDValue::infinity()});
  const double leg1 = 1.0;
  const double leg2 = std::hypot(0.5, 1.2);
  // Interpolate 0.4 into the second leg.
  const double d = leg1 + 0.4 * leg2;
  const Point2 p = lookahead_point(path, d);
  EXPECT_NEAR(p.x, 2.0 + 0.4 * 0.5, 1e-12);
  EXPECT_NEAR(p.y, 0.4 * 1.2, 1e-12);
}

TEST(FitQuintic, ZeroBoundaryDataGivesZeroCurve) {
  const QuinticSegment seg = fit_quintic(0.0, 0.5, 0.0, 0.0);
  for (const double c : seg.coeffs) EXPECT_NEAR(c, 0.0, 1e-15);
  EXPECT_NEAR(seg.y(0.3), 0.0, 1e-15);
}

TEST(FitQuintic, SmoothstepEndpointResiduals) {
  const QuinticSegment seg = fit_quintic(0.0, 1.0, 0.1, 0.0);
  EXPECT_NEAR(seg.y(0.0), 0.0, 1e-9);
  EXPECT_NEAR(seg.dy(0.0), 0.0, 1e-9);
  EXPECT_NEAR(seg.d2y(0.0), 0.0, 1e-9);
  EXPECT_NEAR(seg.y(1.0), 0.1, 1e-9);
  EXPECT_NEAR(seg.dy(1.0), 0.0, 1e-9);
  EXPECT_NEAR(seg.d2y(1.0), 0.0, 1e-9);
}

TEST(FitQuintic, BoundaryConditionsHoldForRandomData) {
  Rng rng(307);
  for (int trial = 0; trial < 500; ++trial) {
    const double c0 = testing::uniform(rng, -5.0, 5.0);
    const double x_l = testing::uniform(rng, 0.05, 2.0);
    const double y_l = testing::uniform(rng, -1.0, 1.0);
    const double slope = testing::uniform(rng, -2.0, 2.0);
    const QuinticSegment seg = fit_quintic(c0, x_l, y_l, slope);
    EXPECT_NEAR(seg.y(0.0), 0.0, 1e-9);
    EXPECT_NEAR(seg.dy(0.0), 0.0, 1e-9);
    EXPECT_NEAR(seg.d2y(0.0), c0, 1e-9 * std::max(1.0, std::abs(c0)));
    EXPECT_NEAR(seg.y(x_l), y_l, 1e-9);
    EXPECT_NEAR(seg.dy(x_l), slope, 1e-9);
    EXPECT_NEAR(seg.d2y(x_l), 0.0, 1e-7);
  }
}

TEST(FitQuintic, RejectsZeroSpan) {
  EXPECT_THROW(fit_quintic(0.0, 0.0, 0.1, 0.0), ValidationError);
}

TEST(SpeedLaw, PaperMinimumTurnRadius) {
  // 20 cm/s and 13.3 cm/s^2 give a 30 cm minimum radius.
  const double rho_min = min_turn_radius(0.20, 0.133);
  EXPECT_DOUBLE_EQ(rho_min, 0.04 / 0.133);
  EXPECT_NEAR(rho_min, 0.30, 0.001);
}

TEST(SpeedLaw, CurvatureLimitedSpeedValue) {
  // 15 cm radius with the paper parameters.
  EXPECT_NEAR(curvature_limited_speed(0.15, 0.20, 0.133), std::sqrt(0.133 * 0.15), 1e-12);
  EXPECT_NEAR(curvature_limited_speed(0.15, 0.20, 0.133), 0.1412, 5e-4);
  EXPECT_DOUBLE_EQ(curvature_limited_speed(10.0, 0.20, 0.133), 0.20);
}

TEST(SpeedProfile, StraightSegmentRunsAtCap) {
  const QuinticSegment seg = fit_quintic(0.0, 0.5, 0.0, 0.0);
  const auto samples = speed_profile(seg, 0.2, 0.133, 0.01);
  ASSERT_GE(samples.size(), 2u);
  for (const auto& s : samples) {
    EXPECT_DOUBLE_EQ(s.v_d, 0.2);
    EXPECT_TRUE(std::isinf(s.rho));
  }
  EXPECT_NEAR(trajectory_length(samples), 0.5, 1e-6);
}

TEST(SpeedProfile, LateralAccelerationBoundHolds) {
  Rng rng(311);
  for (int trial = 0; trial < 100; ++trial) {
    const QuinticSegment seg =
        fit_quintic(testing::uniform(rng, -2.0, 2.0), testing::uniform(rng, 0.1, 1.0),
                    testing::uniform(rng, -0.5, 0.5), testing::uniform(rng, -1.0, 1.0));
    const auto samples = speed_profile(seg, 0.2, 0.133, seg.x_l / 40.0);
    for (const auto& s : samples) {
      EXPECT_LE(s.v_d, 0.2);
      EXPECT_LE(s.v_d * s.v_d * std::abs(s.curvature), 0.133 * (1.0 + 1e-9));
    }
  }
}

TEST(SpeedProfile, CurvatureMatchesFiniteDifferences) {
  const QuinticSegment seg = fit_quintic(1.5, 0.8, 0.2, -0.3);
  const double h = 1e-4 * seg.x_l;
  for (double x : {0.1, 0.3, 0.5, 0.7}) {
    const double yp = (seg.y(x + h) - seg.y(x - h)) / (2.0 * h);
    const double ypp = (seg.y(x + h) - 2.0 * seg.y(x) + seg.y(x - h)) / (h * h);
    const double kappa_fd = ypp / std::pow(1.0 + yp * yp, 1.5);
    const double kappa = seg.d2y(x) / std::pow(1.0 + seg.dy(x) * seg.dy(x), 1.5);
    EXPECT_NEAR(kappa, kappa_fd, 1e-4);
  }
}

}  // namespace
}  // namespace timedist
