#include "timedist/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

namespace timedist {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ValidationError(path + ": " + message);
}

void expect_keys(const Json& obj, const std::string& path,
                 std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return key == k; }) == allowed.end())
      fail(path, "unknown key '" + key + "'");
  }
}

double get_number(const Json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path, std::string("missing key '") + key + "'");
  const Json& v = obj.at(key);
  if (!v.is_number()) fail(path + "/" + key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path + "/" + key, "must be finite");
  return d;
}

double get_number_or(const Json& obj, const std::string& path, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  return get_number(obj, path, key);
}

std::string get_string(const Json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path, std::string("missing key '") + key + "'");
  const Json& v = obj.at(key);
  if (!v.is_string()) fail(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

double unit_factor(const std::string& unit, const std::string& path) {
  if (unit == "m") return 1.0;
  if (unit == "cm") return 0.01;
  if (unit == "mm") return 0.001;
  fail(path, "unsupported length unit '" + unit + "' (use m, cm, or mm)");
}

Point2 get_point(const Json& v, const std::string& path, double f) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    fail(path, "expected [x, y]");
  const Point2 p{v[0].get<double>() * f, v[1].get<double>() * f};
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) fail(path, "coordinates must be finite");
  return p;
}

Velocity2 get_velocity(const Json& obj, const std::string& path, double f) {
  if (!obj.is_object()) fail(path, "expected {vx, vy}");
  expect_keys(obj, path, {"vx", "vy"});
  return {get_number(obj, path, "vx") * f, get_number(obj, path, "vy") * f};
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ValidationError(std::string("syntax error: ") + err.what());
  }
  if (!root.is_object()) throw ValidationError("/: scenario must be a JSON object");
  expect_keys(root, "/", {"units", "vehicle", "goal", "obstacles", "planner", "sim"});

  std::string length_unit = "m";
  if (root.contains("units")) {
    const Json& units = root.at("units");
    expect_keys(units, "/units", {"length", "time"});
    if (units.contains("length")) length_unit = get_string(units, "/units", "length");
    if (units.contains("time")) {
      const std::string tu = get_string(units, "/units", "time");
      if (tu != "s") fail("/units/time", "only seconds are supported");
    }
  }
  const double f = unit_factor(length_unit, "/units/length");

  if (!root.contains("vehicle")) throw ValidationError("/: missing key 'vehicle'");
  const Json& veh = root.at("vehicle");
  expect_keys(veh, "/vehicle",
              {"length", "width", "pose", "speed", "v_max", "a_n_max", "lookahead"});
  if (!veh.contains("pose")) fail("/vehicle", "missing key 'pose'");
  const Json& pose_json = veh.at("pose");
  expect_keys(pose_json, "/vehicle/pose", {"x", "y", "heading"});
  const Pose2 pose{{get_number(pose_json, "/vehicle/pose", "x") * f,
                    get_number(pose_json, "/vehicle/pose", "y") * f},
                   get_number_or(pose_json, "/vehicle/pose", "heading", 0.0)};

  VehicleFootprint vehicle = [&] {
    try {
      return VehicleFootprint(get_number(veh, "/vehicle", "length") * f,
                              get_number(veh, "/vehicle", "width") * f, pose,
                              get_number_or(veh, "/vehicle", "speed", 0.0) * f,
                              get_number(veh, "/vehicle", "v_max") * f,
                              get_number(veh, "/vehicle", "a_n_max") * f);
    } catch (const ValidationError& err) {
      fail("/vehicle", err.what());
    }
  }();
  const double lookahead = get_number_or(veh, "/vehicle", "lookahead", 0.0) * f;
  if (lookahead < 0.0) fail("/vehicle/lookahead", "must be >= 0");

  if (!root.contains("goal")) throw ValidationError("/: missing key 'goal'");
  const Json& goal_json = root.at("goal");
  expect_keys(goal_json, "/goal", {"x", "y"});
  const Point2 goal{get_number(goal_json, "/goal", "x") * f,
                    get_number(goal_json, "/goal", "y") * f};

  std::vector<Obstacle> obstacles;
  if (root.contains("obstacles")) {
    const Json& list = root.at("obstacles");
    if (!list.is_array()) fail("/obstacles", "expected an array");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "/obstacles/" + std::to_string(i);
      const Json& item = list[i];
      expect_keys(item, path, {"id", "kind", "vertices", "center", "radius", "velocity"});
      const std::string id = get_string(item, path, "id");
      if (!seen.insert(id).second) fail(path + "/id", "duplicate obstacle id '" + id + "'");
      const std::string kind = get_string(item, path, "kind");
      Velocity2 velocity{};
      if (item.contains("velocity")) velocity = get_velocity(item.at("velocity"), path + "/velocity", f);
      if (kind == "polygon") {
        if (!item.contains("vertices")) fail(path, "polygon needs 'vertices'");
        const Json& vs = item.at("vertices");
        if (!vs.is_array()) fail(path + "/vertices", "expected an array of [x, y]");
        std::vector<Point2> verts;
        verts.reserve(vs.size());
        for (std::size_t k = 0; k < vs.size(); ++k)
          verts.push_back(get_point(vs[k], path + "/vertices/" + std::to_string(k), f));
        try {
          obstacles.push_back({id, ConvexPolygonObstacle(std::move(verts), velocity), 0.0});
        } catch (const ValidationError& err) {
          fail(path + "/vertices", err.what());
        }
      } else if (kind == "circle") {
        if (!item.contains("center")) fail(path, "circle needs 'center'");
        if (!item.contains("radius")) fail(path, "circle needs 'radius'");
        try {
          obstacles.push_back({id,
                               CircleObstacle(get_point(item.at("center"), path + "/center", f),
                                              get_number(item, path, "radius") * f, velocity),
                               0.0});
        } catch (const ValidationError& err) {
          fail(path, err.what());
        }
      } else {
        fail(path + "/kind", "expected 'polygon' or 'circle'");
      }
    }
  }

  // Planner defaults resolve against the vehicle and goal when absent.
  double t_s = 4.0, alpha = 1.1, beta = 0.1, gamma = 0.1;
  double dx = vehicle.length / 4.0;
  double dy = vehicle.width / 4.0;
  const double goal_distance = norm(goal - vehicle.pose.position);
  double y_half = std::max(0.5 * goal_distance, 10.0 * vehicle.width);
  double y_min = -y_half, y_max = y_half;
  double horizon_cap = 0.0;
  double goal_tolerance = -1.0;
  PlanMode mode = PlanMode::kStatic;
  bool approximate_circles = false;
  int circle_approx_vertices = 12;
  if (root.contains("planner")) {
    const Json& pl = root.at("planner");
    expect_keys(pl, "/planner",
                {"mode", "T_s", "alpha", "beta", "gamma", "dx", "dy", "y_min", "y_max", "T_h",
                 "goal_tolerance", "approximate_circles", "circle_approx_vertices"});
    if (pl.contains("mode")) {
      const std::string m = get_string(pl, "/planner", "mode");
      if (m == "static")
        mode = PlanMode::kStatic;
      else if (m == "dynamic")
        mode = PlanMode::kDynamic;
      else
        fail("/planner/mode", "expected 'static' or 'dynamic'");
    }
    t_s = get_number_or(pl, "/planner", "T_s", t_s);
    alpha = get_number_or(pl, "/planner", "alpha", alpha);
    beta = get_number_or(pl, "/planner", "beta", beta);
    gamma = get_number_or(pl, "/planner", "gamma", gamma);
    dx = get_number_or(pl, "/planner", "dx", dx / f) * f;
    dy = get_number_or(pl, "/planner", "dy", dy / f) * f;
    y_min = get_number_or(pl, "/planner", "y_min", y_min / f) * f;
    y_max = get_number_or(pl, "/planner", "y_max", y_max / f) * f;
    horizon_cap = get_number_or(pl, "/planner", "T_h", 0.0);
    goal_tolerance = get_number_or(pl, "/planner", "goal_tolerance", -1.0 / f) * f;
    if (pl.contains("approximate_circles")) {
      if (!pl.at("approximate_circles").is_boolean())
        fail("/planner/approximate_circles", "expected a boolean");
      approximate_circles = pl.at("approximate_circles").get<bool>();
    }
    if (pl.contains("circle_approx_vertices")) {
      circle_approx_vertices = static_cast<int>(get_number(pl, "/planner", "circle_approx_vertices"));
      if (circle_approx_vertices < 3) fail("/planner/circle_approx_vertices", "must be >= 3");
    }
  }
  if (horizon_cap <= 0.0) horizon_cap = std::max(10.0, 2.5 * t_s);
  if (goal_tolerance < 0.0) goal_tolerance = dy;

  PlannerConfig planner = [&] {
    try {
      return PlannerConfig(RouteParams(t_s, alpha, beta, gamma, 0.0), dx, dy, y_min, y_max,
                           horizon_cap, mode, goal_tolerance);
    } catch (const ValidationError& err) {
      fail("/planner", err.what());
    }
  }();

  SimConfig sim;
  if (root.contains("sim")) {
    const Json& sm = root.at("sim");
    expect_keys(sm, "/sim", {"replan_fraction", "dt", "max_time", "collision_audit"});
    bool audit = true;
    if (sm.contains("collision_audit")) {
      if (!sm.at("collision_audit").is_boolean()) fail("/sim/collision_audit", "expected a boolean");
      audit = sm.at("collision_audit").get<bool>();
    }
    try {
      sim = SimConfig(get_number_or(sm, "/sim", "replan_fraction", 0.1),
                      get_number_or(sm, "/sim", "dt", 0.01),
                      get_number_or(sm, "/sim", "max_time", 120.0), audit);
    } catch (const ValidationError& err) {
      fail("/sim", err.what());
    }
  }

  // Circles stay circles at parse time; dynamic planning applies the opt-in
  // approximation (or rejects) when the scene is prepared.
  Scenario scenario{vehicle, lookahead, goal,      std::move(obstacles),
                    planner, sim,       length_unit, approximate_circles,
                    circle_approx_vertices};
  return scenario;
}

Scenario load_scenario(const std::string& file_path) {
  std::ifstream in(file_path);
  if (!in) throw ValidationError("cannot open scenario file: " + file_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  const double f = unit_factor(s.units, "/units/length");
  const auto len = [&](double meters) { return meters / f; };
  Json root;
  root["units"] = {{"length", s.units}, {"time", "s"}};
  root["vehicle"] = {{"length", len(s.vehicle.length)},
                     {"width", len(s.vehicle.width)},
                     {"pose",
                      {{"x", len(s.vehicle.pose.position.x)},
                       {"y", len(s.vehicle.pose.position.y)},
                       {"heading", s.vehicle.pose.heading}}},
                     {"speed", len(s.vehicle.speed)},
                     {"v_max", len(s.vehicle.v_max)},
                     {"a_n_max", len(s.vehicle.a_n_max)},
                     {"lookahead", len(s.lookahead)}};
  root["goal"] = {{"x", len(s.goal.x)}, {"y", len(s.goal.y)}};
  Json obstacles = Json::array();
  for (const Obstacle& o : s.obstacles) {
    Json item;
    item["id"] = o.id;
    if (const auto* poly = std::get_if<ConvexPolygonObstacle>(&o.shape)) {
      item["kind"] = "polygon";
      Json verts = Json::array();
      for (const Point2 v : poly->vertices()) verts.push_back({len(v.x), len(v.y)});
      item["vertices"] = std::move(verts);
    } else {
      const auto& c = std::get<CircleObstacle>(o.shape);
      item["kind"] = "circle";
      item["center"] = {len(c.center.x), len(c.center.y)};
      item["radius"] = len(c.radius);
    }
    const Velocity2 v = o.velocity();
    item["velocity"] = {{"vx", len(v.vx)}, {"vy", len(v.vy)}};
    obstacles.push_back(std::move(item));
  }
  root["obstacles"] = std::move(obstacles);
  root["planner"] = {{"mode", s.planner.mode == PlanMode::kStatic ? "static" : "dynamic"},
                     {"T_s", s.planner.route.t_s},
                     {"alpha", s.planner.route.alpha},
                     {"beta", s.planner.route.beta},
                     {"gamma", s.planner.route.gamma},
                     {"dx", len(s.planner.dx)},
                     {"dy", len(s.planner.dy)},
                     {"y_min", len(s.planner.y_min)},
                     {"y_max", len(s.planner.y_max)},
                     {"T_h", s.planner.horizon_cap},
                     {"goal_tolerance", len(s.planner.goal_tolerance)},
                     {"approximate_circles", s.approximate_circles},
                     {"circle_approx_vertices", s.circle_approx_vertices}};
  root["sim"] = {{"replan_fraction", s.sim.replan_fraction},
                 {"dt", s.sim.dt},
                 {"max_time", s.sim.max_time},
                 {"collision_audit", s.sim.collision_audit}};
  return root.dump(2) + "\n";
}

Scenario approximate_circle_obstacles(const Scenario& scenario) {
  Scenario out = scenario;
  for (Obstacle& o : out.obstacles) {
    if (const auto* circle = std::get_if<CircleObstacle>(&o.shape))
      o.shape = inscribe_polygon(*circle, std::max(3, scenario.circle_approx_vertices));
  }
  return out;
}

}  // namespace timedist
