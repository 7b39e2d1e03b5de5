#include "timedist/guidance.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace timedist {
namespace {

using testing::Rng;
constexpr double kPi = std::numbers::pi;

const ConvexPolygonObstacle kUnitSquare({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}, {});

TEST(ZinfEdge, InnerOuterBoundary) {
  const SegmentEdge bottom({0.0, 0.0}, {1.0, 0.0}, {});  // outward is -y
  EXPECT_TRUE(zinf_edge({0.5, 0.5}, bottom).occupied);
  EXPECT_FALSE(zinf_edge({0.5, -1.0}, bottom).occupied);
  EXPECT_TRUE(zinf_edge({0.5, 0.0}, bottom).occupied);  // on the edge line
}

TEST(ZinfPolygon, CenterInsideOutsideBeyondOneEdge) {
  EXPECT_TRUE(zinf_polygon({0.5, 0.5}, kUnitSquare).occupied);
  EXPECT_FALSE(zinf_polygon({0.5, -0.2}, kUnitSquare).occupied);
  EXPECT_FALSE(zinf_polygon({5.0, 5.0}, kUnitSquare).occupied);
}

TEST(ZinfPolygon, MatchesHalfPlaneOracle) {
  Rng rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto poly = testing::random_convex_polygon(
        rng, testing::random_point(rng, -2.0, 2.0), 1.5, {});
    const Point2 p = testing::random_point(rng, -4.0, 4.0);
    EXPECT_EQ(zinf_polygon(p, poly).occupied, point_in_convex_polygon(p, poly.vertices()));
  }
}

TEST(ZinfRect, AgreesWithPolygonForm) {
  Rng rng(103);
  for (int trial = 0; trial < 500; ++trial) {
    const RectSpec rect{testing::random_point(rng, -2.0, 2.0), testing::uniform(rng, -kPi, kPi),
                        testing::uniform(rng, 0.2, 2.0), testing::uniform(rng, 0.2, 2.0)};
    const Frame frame(rect.angle, rect.center);
    std::vector<Point2> corners{
        frame.to_global(Point2{0.5 * rect.length, -0.5 * rect.width}),
        frame.to_global(Point2{0.5 * rect.length, 0.5 * rect.width}),
        frame.to_global(Point2{-0.5 * rect.length, 0.5 * rect.width}),
        frame.to_global(Point2{-0.5 * rect.length, -0.5 * rect.width})};
    const ConvexPolygonObstacle poly(corners, {});
    for (int i = 0; i < 20; ++i) {
      const Point2 p = testing::random_point(rng, -4.0, 4.0);
      EXPECT_EQ(zinf_rect(p, rect).occupied, zinf_polygon(p, poly).occupied)
          << "p=(" << p.x << "," << p.y << ")";
    }
  }
}

TEST(ZinfCircle, InsideOutsideBoundary) {
  const CircleObstacle circle({1.0, 1.0}, 2.0, {});
  EXPECT_TRUE(zinf_circle({1.0, 1.0}, circle).occupied);
  EXPECT_FALSE(zinf_circle({4.0, 1.0}, circle).occupied);
  EXPECT_TRUE(zinf_circle({3.0, 1.0}, circle).occupied);  // on the boundary
}

TEST(GoalLateralOffset, Basics) {
  EXPECT_DOUBLE_EQ(goal_lateral_offset({7.0, 3.0}, 0.0), 3.0);
  EXPECT_DOUBLE_EQ(goal_lateral_offset({-2.0, 3.0}, 0.0), 3.0);
  // Points on the goal line have zero offset.
  for (double t : {-2.0, 0.5, 4.0}) {
    const double delta = 0.7;
    EXPECT_NEAR(goal_lateral_offset({t * std::cos(delta), t * std::sin(delta)}, delta), 0.0,
                1e-12);
  }
  EXPECT_NEAR(goal_lateral_offset({2.0, 1.0}, kPi / 6.0),
              std::cos(kPi / 6.0) * 1.0 - std::sin(kPi / 6.0) * 2.0, 1e-15);
  EXPECT_NEAR(goal_lateral_offset({2.0, 1.0}, kPi / 6.0), -0.1340, 1e-4);
}

TEST(RouteValue, PaperParameters) {
  const RouteParams params(4.0, 1.1, 0.1, 0.1, 0.0);
  EXPECT_DOUBLE_EQ(route_value({3.0, 0.0}, params), 4.4);
  EXPECT_DOUBLE_EQ(route_value({3.0, 1.0}, params), 4.3);
  EXPECT_NEAR(route_value({3.0, 100.0}, params), 4.4 - 0.1 * std::pow(100.0, 0.1), 1e-12);
  EXPECT_NEAR(route_value({3.0, 100.0}, params), 4.2415, 1e-4);
}

TEST(RouteValue, EvenAndStrictlyDecreasing) {
  Rng rng(107);
  for (int trial = 0; trial < 500; ++trial) {
    const RouteParams params(testing::uniform(rng, 0.5, 6.0), testing::uniform(rng, 1.01, 2.0),
                             testing::uniform(rng, 0.01, 0.9), testing::uniform(rng, 0.05, 0.9),
                             0.0);
    const double y1 = testing::uniform(rng, 0.0, 10.0);
    const double y2 = y1 + testing::uniform(rng, 1e-6, 5.0);
    EXPECT_DOUBLE_EQ(route_value({0.0, y1}, params), route_value({0.0, -y1}, params));
    EXPECT_GT(route_value({0.0, y1}, params), route_value({0.0, y2}, params));
  }
}

TEST(RouteValue, ArgmaxOnGoalLine) {
  // Over any section grid, the maximum sits at the sample nearest the goal
  // line.
  Rng rng(109);
  for (int trial = 0; trial < 200; ++trial) {
    const RouteParams params(4.0, 1.1, 0.1, 0.1, testing::uniform(rng, -1.0, 1.0));
    const double x = testing::uniform(rng, 0.1, 5.0);
    double best_value = -1.0;
    double best_y = 0.0;
    double nearest_key = 1e300;
    double nearest_y = 0.0;
    for (int j = -50; j <= 50; ++j) {
      const double y = 0.1 * j;
      const double value = route_value({x, y}, params);
      if (value > best_value) {
        best_value = value;
        best_y = y;
      }
      const double key = std::abs(goal_lateral_offset({x, y}, params.delta));
      if (key < nearest_key) {
        nearest_key = key;
        nearest_y = y;
      }
    }
    EXPECT_DOUBLE_EQ(best_y, nearest_y);
  }
}

TEST(RfFeasibility, PaperParamsPassWithMargin) {
  const FeasibilityReport report = rf_feasibility(4.0, 1.1, 0.1, 0.1, 1.0);
  EXPECT_TRUE(report.pass);
  EXPECT_NEAR(report.margin, 0.3, 1e-12);
}

TEST(RfFeasibility, AlphaOneFails) {
  EXPECT_FALSE(rf_feasibility(4.0, 1.0, 0.1, 0.1, 1.0).pass);
  EXPECT_FALSE(rf_feasibility(4.0, 1.0, 0.1, 0.1, 123.0).pass);
}

TEST(RfFeasibility, BoundaryExtentIsInclusive) {
  // Exactly representable boundary: 1.5*4 - 0.5*sqrt(16) - 4 == 0.
  const FeasibilityReport exact = rf_feasibility(4.0, 1.5, 0.5, 0.5, 16.0);
  EXPECT_EQ(exact.margin, 0.0);
  EXPECT_TRUE(exact.pass);

  // The paper-parameter boundary extent, (0.4/0.1)^(1/0.1), up to rounding.
  const double y_extent = std::pow((1.1 - 1.0) * 4.0 / 0.1, 1.0 / 0.1);
  EXPECT_NEAR(y_extent, 1048576.0, 1e-4);
  const FeasibilityReport report = rf_feasibility(4.0, 1.1, 0.1, 0.1, y_extent);
  EXPECT_NEAR(report.margin, 0.0, 1e-9);
  EXPECT_EQ(report.pass, report.margin >= 0.0);
}

TEST(RfFeasibility, PassImpliesRouteAboveTs) {
  Rng rng(113);
  for (int trial = 0; trial < 200; ++trial) {
    const RouteParams params(testing::uniform(rng, 0.5, 6.0), testing::uniform(rng, 1.01, 1.5),
                             testing::uniform(rng, 0.01, 0.5), testing::uniform(rng, 0.05, 0.5),
                             0.0);
    const double y_extent = testing::uniform(rng, 0.1, 50.0);
    if (!rf_feasibility(params, y_extent).pass) continue;
    for (int j = 0; j <= 20; ++j) {
      const double y = -y_extent + 2.0 * y_extent * j / 20.0;
      EXPECT_GE(route_value({0.0, y}, params), params.t_s - 1e-12);
    }
  }
}

TEST(RouteParams, Validation) {
  EXPECT_THROW(RouteParams(0.0, 1.1, 0.1, 0.1, 0.0), ValidationError);
  EXPECT_THROW(RouteParams(4.0, 1.0, 0.1, 0.1, 0.0), ValidationError);
  EXPECT_THROW(RouteParams(4.0, 1.1, 1.0, 0.1, 0.0), ValidationError);
  EXPECT_THROW(RouteParams(4.0, 1.1, 0.1, 1.5, 0.0), ValidationError);
}

}  // namespace
}  // namespace timedist
