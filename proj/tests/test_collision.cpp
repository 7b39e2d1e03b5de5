#include "timedist/collision.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "timedist/oracle.hpp"
#include "timedist/td_core.hpp"

namespace timedist {
namespace {

using testing::Rng;
constexpr double kPi = std::numbers::pi;

VehicleFootprint paper_robot(Pose2 pose = {}, double speed = 0.0) {
  return {0.1, 0.08, pose, speed, 0.2, 0.133};
}

TEST(Relativize, EqualVelocitiesCancel) {
  const VehicleFootprint veh = paper_robot({{0.0, 0.0}, 0.0}, 0.05);
  const std::vector<Obstacle> obstacles{
      {"o", CircleObstacle({1.0, 0.0}, 0.1, {0.05, 0.0}), 0.0}};
  const RelativeScene scene = relativize(veh, obstacles, 0.02);
  EXPECT_EQ(scene.obstacles[0].velocity(), (Velocity2{0.0, 0.0}));
}

TEST(Relativize, IdentityPoseKeepsPositions) {
  const VehicleFootprint veh = paper_robot();
  const std::vector<Obstacle> obstacles{
      {"o", CircleObstacle({1.0, 2.0}, 0.1, {0.0, 0.0}), 0.0}};
  const RelativeScene scene = relativize(veh, obstacles, 0.02);
  const auto& c = std::get<CircleObstacle>(scene.obstacles[0].shape);
  EXPECT_DOUBLE_EQ(c.center.x, 1.0);
  EXPECT_DOUBLE_EQ(c.center.y, 2.0);
}

TEST(Relativize, QuarterTurnHeading) {
  const VehicleFootprint veh = paper_robot({{0.0, 0.0}, kPi / 2.0});
  const std::vector<Obstacle> obstacles{
      {"o", CircleObstacle({0.0, 5.0}, 0.1, {0.0, 0.0}), 0.0}};
  const RelativeScene scene = relativize(veh, obstacles, 0.02);
  const auto& c = std::get<CircleObstacle>(scene.obstacles[0].shape);
  EXPECT_NEAR(c.center.x, 5.0, 1e-12);
  EXPECT_NEAR(c.center.y, 0.0, 1e-12);
}

TEST(SampleBorder, PerimeterSpacingGivesCorners) {
  const VehicleFootprint veh = paper_robot();
  const double perimeter = 2.0 * (0.1 + 0.08);
  const auto pts = sample_border(veh, perimeter);
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_NEAR(std::abs(pts[0].x), 0.05, 1e-12);
  EXPECT_NEAR(std::abs(pts[0].y), 0.04, 1e-12);
}

TEST(SampleBorder, SpacingBoundHolds) {
  const VehicleFootprint veh = paper_robot();
  const auto pts = sample_border(veh, 0.01);
  ASSERT_GE(pts.size(), 4u);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2 a = pts[i];
    const Point2 b = pts[(i + 1) % pts.size()];
    EXPECT_LE(norm(b - a), 0.01 + 1e-12);
  }
}

TEST(SampleBorder, CornersAlwaysIncluded) {
  const VehicleFootprint veh = paper_robot();
  for (double spacing : {0.003, 0.017, 1.0}) {
    const auto pts = sample_border(veh, spacing);
    for (const Point2 corner :
         {Point2{0.05, -0.04}, Point2{0.05, 0.04}, Point2{-0.05, 0.04}, Point2{-0.05, -0.04}}) {
      bool found = false;
      for (const Point2 p : pts)
        if (norm(p - corner) < 1e-12) found = true;
      EXPECT_TRUE(found) << "spacing " << spacing;
    }
  }
}

TEST(PredictTtc, HeadOnSquare) {
  // Square obstacle dead ahead, approaching at 1 m/s, nearest border point
  // 4.5 m away.
  const VehicleFootprint veh(1.0, 0.8, {}, 0.0, 2.0, 1.0);
  const std::vector<Obstacle> obstacles{
      {"wall", ConvexPolygonObstacle({{5.0, -1.0}, {7.0, -1.0}, {7.0, 1.0}, {5.0, 1.0}},
                                     {-1.0, 0.0}),
       0.0}};
  const RelativeScene scene = relativize(veh, obstacles, 0.1);
  const TTCReport report = predict_ttc(scene);
  ASSERT_TRUE(report.ttc.is_finite());
  EXPECT_NEAR(report.ttc.seconds(), 4.5, 1e-12);
  EXPECT_NEAR(report.critical_point.x, 0.5, 1e-12);
  ASSERT_EQ(report.per_obstacle.size(), 1u);
  EXPECT_EQ(report.per_obstacle[0].second, report.ttc);
}

TEST(PredictTtc, ParallelMissIsInfinite) {
  const VehicleFootprint veh(1.0, 0.8, {}, 0.0, 2.0, 1.0);
  const std::vector<Obstacle> obstacles{
      {"passer", ConvexPolygonObstacle({{5.0, 2.0}, {6.0, 2.0}, {6.0, 3.0}, {5.0, 3.0}},
                                       {0.0, 1.0}),
       0.0}};
  const TTCReport report = predict_ttc(relativize(veh, obstacles, 0.1));
  EXPECT_TRUE(report.ttc.is_infinite());
}

TEST(PredictTtc, EqualsMinOverPerObstacle) {
  Rng rng(211);
  for (int trial = 0; trial < 50; ++trial) {
    const VehicleFootprint veh(0.4, 0.3, {}, 0.0, 1.0, 1.0);
    std::vector<Obstacle> obstacles;
    for (int k = 0; k < 4; ++k)
      obstacles.push_back({"o" + std::to_string(k),
                           testing::random_convex_polygon(
                               rng, testing::random_point(rng, -4.0, 4.0), 0.6,
                               testing::random_velocity(rng, 1.5), 5, 0.3),
                           0.0});
    const TTCReport report = predict_ttc(relativize(veh, obstacles, 0.075));
    TDValue expected = TDValue::infinity();
    for (const auto& [id, td] : report.per_obstacle) expected = min(expected, td);
    EXPECT_EQ(report.ttc, expected);
  }
}

TEST(PredictTtc, RefinementNeverIncreasesTtc) {
  Rng rng(223);
  for (int trial = 0; trial < 30; ++trial) {
    const VehicleFootprint veh(0.4, 0.3, {}, 0.0, 1.0, 1.0);
    std::vector<Obstacle> obstacles;
    for (int k = 0; k < 3; ++k)
      obstacles.push_back({"o" + std::to_string(k),
                           testing::random_convex_polygon(
                               rng, testing::random_point(rng, -4.0, 4.0), 0.6,
                               testing::random_velocity(rng, 1.5), 5, 0.3),
                           0.0});
    const TDValue coarse = predict_ttc(relativize(veh, obstacles, 0.15)).ttc;
    const TDValue fine = predict_ttc(relativize(veh, obstacles, 0.075)).ttc;
    EXPECT_LE(fine.seconds(), coarse.seconds() + 1e-12);
  }
}

TEST(PredictTtc, ConstantVelocityConsistency) {
  // Advancing the world by t < ttc must shrink the prediction by exactly t.
  Rng rng(227);
  int checked = 0;
  while (checked < 30) {
    const VehicleFootprint veh(0.4, 0.3, {}, 0.0, 1.0, 1.0);
    std::vector<Obstacle> obstacles;
    for (int k = 0; k < 3; ++k)
      obstacles.push_back({"o" + std::to_string(k),
                           testing::random_convex_polygon(
                               rng, testing::random_point(rng, -4.0, 4.0), 0.6,
                               testing::random_velocity(rng, 1.5), 5, 0.3),
                           0.0});
    const TTCReport before = predict_ttc(relativize(veh, obstacles, 0.075));
    if (before.ttc.is_infinite() || before.ttc.seconds() < 0.5) continue;
    ++checked;
    const double advance = 0.5 * before.ttc.seconds();
    std::vector<Obstacle> later;
    for (const Obstacle& o : obstacles)
      later.push_back(o.translated(displacement(o.velocity(), advance)));
    const TTCReport after = predict_ttc(relativize(veh, later, 0.075));
    ASSERT_TRUE(after.ttc.is_finite());
    EXPECT_NEAR(after.ttc.seconds(), before.ttc.seconds() - advance, 1e-9);
  }
}

TEST(PredictTtc, OracleAgreementSample) {
  Rng rng(229);
  const oracle::OracleConfig cfg{1e-3, 30.0};
  const VehicleFootprint veh(0.4, 0.3, {}, 0.0, 1.0, 1.0);
  int checked = 0;
  while (checked < 25) {
    std::vector<Obstacle> obstacles;
    double max_speed = 0.0;
    for (int k = 0; k < 4; ++k) {
      const Velocity2 v = testing::random_velocity(rng, 1.5, 0.35);
      max_speed = std::max(max_speed, speed_of(v));
      obstacles.push_back({"o" + std::to_string(k),
                           testing::random_convex_polygon(
                               rng, testing::random_point(rng, -5.0, 5.0), 0.7, v, 5, 0.3),
                           0.0});
    }
    // Obstacles clear of the footprint at t=0.
    const std::vector<Point2> rect{{0.2, -0.15}, {0.2, 0.15}, {-0.2, 0.15}, {-0.2, -0.15}};
    bool clear = true;
    for (const Obstacle& o : obstacles) {
      const auto& poly = std::get<ConvexPolygonObstacle>(o.shape);
      if (convex_polygons_distance(rect, poly.vertices()) < 1e-3) clear = false;
    }
    if (!clear) continue;
    // Fine border spacing keeps the vertex-between-samples delay below the
    // comparison tolerance.
    const RelativeScene scene = relativize(veh, obstacles, 2e-4);
    const auto hit = oracle::oracle_ttc(0.4, 0.3, scene.obstacles, cfg);
    const TDValue ttc = predict_ttc(scene).ttc;
    if (ttc.is_finite() && ttc.seconds() > cfg.horizon - 2.0 * cfg.dt) continue;
    if (hit.td.is_infinite() && hit.min_clearance <= 1.5 * max_speed * cfg.dt) continue;
    ++checked;
    ASSERT_EQ(ttc.is_infinite(), hit.td.is_infinite());
    if (ttc.is_finite()) {
      const double tol = std::max(2.0 * cfg.dt, 1e-3 * hit.td.seconds());
      EXPECT_LE(ttc.seconds(), hit.td.seconds() + tol);
      EXPECT_GE(ttc.seconds(), hit.td.seconds() - tol);
    }
  }
}

}  // namespace
}  // namespace timedist
