#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "timedist/collision.hpp"
#include "timedist/oracle.hpp"
#include "timedist/planner.hpp"
#include "timedist/render.hpp"
#include "timedist/scenario.hpp"
#include "timedist/simulator.hpp"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using namespace timedist;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNoPath = 3;
constexpr int kExitCollision = 4;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string fmt(TDValue v) { return v.is_infinite() ? "inf" : fmt(v.seconds()); }

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

PlannerConfig resolve_config(const Scenario& scenario, const std::string& mode_flag) {
  PlannerConfig config = scenario.planner;
  if (mode_flag == "static") config.mode = PlanMode::kStatic;
  if (mode_flag == "dynamic") config.mode = PlanMode::kDynamic;
  return config;
}

std::string field_dump_csv(const Scenario& scenario, const PlannerConfig& config) {
  const PreparedScene scene = PreparedScene::prepare(scenario, config);
  std::string csv = "x,y,value\n";
  const double goal_x = std::max(scene.goal().x, config.dx);
  const int nx = std::max(1, static_cast<int>(std::ceil(goal_x / config.dx)));
  const int ny =
      std::max(1, static_cast<int>(std::ceil((config.y_max - config.y_min) / config.dy)));
  for (int i = 0; i <= nx; ++i) {
    const double x = goal_x * i / nx;
    for (int j = 0; j <= ny; ++j) {
      const double y = config.y_min + (config.y_max - config.y_min) * j / ny;
      csv += fmt(x) + "," + fmt(y) + "," + fmt(scene.field({x, y})) + "\n";
    }
  }
  return csv;
}

Json pose_json(const Pose2& pose) {
  return Json{{"x", pose.position.x}, {"y", pose.position.y}, {"heading", pose.heading}};
}

const char* outcome_name(SimOutcome outcome) {
  switch (outcome) {
    case SimOutcome::kGoalReached: return "goal-reached";
    case SimOutcome::kCollision: return "collision";
    case SimOutcome::kNoPath: return "no-path";
    case SimOutcome::kTimeout: return "timeout";
  }
  return "unknown";
}

Json simlog_json(const Scenario& scenario, const SimLog& log) {
  Json root;
  root["scenario"] = Json::parse(serialize_scenario(scenario));
  root["outcome"] = outcome_name(log.outcome);
  root["duration"] = log.duration;
  root["path_length"] = log.path_length;
  if (log.outcome == SimOutcome::kCollision) root["collision_time"] = log.collision_time;
  Json steps = Json::array();
  for (const SimStep& s : log.steps)
    steps.push_back({s.t, s.pose.position.x, s.pose.position.y, s.pose.heading, s.speed});
  root["steps"] = std::move(steps);
  Json replans = Json::array();
  for (const ReplanRecord& r : log.replans) {
    Json item;
    item["t"] = r.t;
    item["pose"] = pose_json(r.pose);
    Json path = Json::array();
    for (const PathPoint& p : r.path.points)
      path.push_back({p.x, p.y, p.t_p.is_infinite() ? -1.0 : p.t_p.seconds()});
    item["path"] = std::move(path);
    Json traj = Json::array();
    for (const TrajectorySample& s : r.trajectory)
      traj.push_back({s.s, s.position.x, s.position.y, s.heading, s.v_d});
    item["trajectory"] = std::move(traj);
    replans.push_back(std::move(item));
  }
  root["replans"] = std::move(replans);
  return root;
}

int cmd_predict(const Scenario& scenario, const fs::path& out_dir) {
  const RelativeScene scene =
      relativize(scenario.vehicle, scenario.obstacles, default_border_spacing(scenario.vehicle));
  const TTCReport report = predict_ttc(scene);
  Json doc;
  doc["ttc"] = report.ttc.is_infinite() ? Json("inf") : Json(report.ttc.seconds());
  doc["no_collision"] = report.ttc.is_infinite();
  if (report.ttc.is_finite())
    doc["critical_point"] = {{"x", report.critical_point.x}, {"y", report.critical_point.y}};
  Json per = Json::object();
  for (const auto& [id, td] : report.per_obstacle)
    per[id] = td.is_infinite() ? Json("inf") : Json(td.seconds());
  doc["per_obstacle"] = std::move(per);
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  write_file(out_dir / "predict.json", text);
  return kExitOk;
}

int cmd_plan(const Scenario& scenario, const PlannerConfig& config, const fs::path& out_dir,
             bool field_dump) {
  if (config.mode == PlanMode::kDynamic) {
    // Report infeasible route parameters before planning.
    const Frame frame(scenario.vehicle.pose);
    const Point2 goal = frame.to_local(scenario.goal);
    const double delta = std::atan2(goal.y, goal.x);
    double y_extent = 0.0;
    for (const double x : {0.0, goal.x})
      for (const double y : {config.y_min, config.y_max})
        y_extent = std::max(y_extent, std::abs(goal_lateral_offset({x, y}, delta)));
    const FeasibilityReport feas = rf_feasibility(config.route.with_delta(delta), y_extent);
    if (!feas.pass) {
      std::cerr << "error: route function infeasible (margin " << fmt(feas.margin) << " s)\n";
      return kExitValidation;
    }
  }
  const PreparedScene scene = PreparedScene::prepare(scenario, config);
  const PathPolyline path = plan_path(scenario, config);
  const Frame frame(scenario.vehicle.pose);
  std::string csv = "x_pc,y_pc,x_gc,y_gc,t_p\n";
  for (const PathPoint& p : path.points) {
    const Point2 global = frame.to_global(Point2{p.x, p.y});
    csv += fmt(p.x) + "," + fmt(p.y) + "," + fmt(global.x) + "," + fmt(global.y) + "," +
           fmt(p.t_p) + "\n";
  }
  write_file(out_dir / "path.csv", csv);
  write_file(out_dir / "plan.svg", render_plan_svg(scenario, scene, path));
  if (field_dump) write_file(out_dir / "field.csv", field_dump_csv(scenario, config));
  if (path.empty()) {
    std::cout << "no path\n";
    return kExitNoPath;
  }
  std::cout << "path sections: " << path.points.size() << "\n";
  return kExitOk;
}

int cmd_simulate(const Scenario& scenario, const PlannerConfig& config, const fs::path& out_dir,
                 bool field_dump) {
  const SimLog log = run(scenario, config, scenario.sim);
  write_file(out_dir / "simlog.json", simlog_json(scenario, log).dump(2) + "\n");

  std::string csv = "t,x,y,heading,v,T_p\n";
  std::size_t replan_idx = 0;
  for (const SimStep& s : log.steps) {
    while (replan_idx + 1 < log.replans.size() && log.replans[replan_idx + 1].t <= s.t)
      ++replan_idx;
    // T_p of the next section of the active plan.
    TDValue t_p = TDValue::infinity();
    if (!log.replans.empty() && !log.replans[replan_idx].path.empty())
      t_p = log.replans[replan_idx].path.points.front().t_p;
    csv += fmt(s.t) + "," + fmt(s.pose.position.x) + "," + fmt(s.pose.position.y) + "," +
           fmt(s.pose.heading) + "," + fmt(s.speed) + "," + fmt(t_p) + "\n";
  }
  write_file(out_dir / "trajectory.csv", csv);
  write_file(out_dir / "simulate.svg", render_simlog_svg(scenario, log));
  if (field_dump) write_file(out_dir / "field.csv", field_dump_csv(scenario, config));

  std::cout << "outcome: " << outcome_name(log.outcome) << "\n"
            << "duration: " << fmt(log.duration) << " s\n"
            << "path length: " << fmt(log.path_length) << " m\n";
  if (log.outcome == SimOutcome::kCollision) return kExitCollision;
  if (log.outcome == SimOutcome::kNoPath) return kExitNoPath;
  return kExitOk;
}

int cmd_compare(const Scenario& scenario, const fs::path& out_dir) {
  for (const Obstacle& o : scenario.obstacles) {
    if (!(o.velocity() == Velocity2{})) {
      std::cerr << "error: compare requires static obstacles (obstacle '" << o.id
                << "' is moving)\n";
      return kExitValidation;
    }
  }
  PlannerConfig static_config = scenario.planner;
  static_config.mode = PlanMode::kStatic;
  PlannerConfig dynamic_config = scenario.planner;
  dynamic_config.mode = PlanMode::kDynamic;

  const SimLog static_log = run(scenario, static_config, scenario.sim);
  const SimLog dynamic_log = run(scenario, dynamic_config, scenario.sim);

  std::vector<Obstacle> inflated;
  inflated.reserve(scenario.obstacles.size());
  for (const Obstacle& o : scenario.obstacles)
    inflated.push_back(inflate(o, scenario.vehicle.circumradius()));
  const oracle::AStarResult astar = oracle::grid_astar(scenario.vehicle.pose.position,
                                                       scenario.goal, inflated,
                                                       scenario.planner.dy);
  if (astar.status != oracle::AStarStatus::kOk) {
    std::cerr << "error: A* baseline found no path (start/goal blocked or sealed)\n";
    return kExitValidation;
  }

  std::string csv = "method,outcome,length_m,ratio_vs_astar\n";
  const auto row = [&](const std::string& name, const SimLog& log) {
    csv += name + "," + outcome_name(log.outcome) + "," + fmt(log.path_length) + "," +
           fmt(log.path_length / astar.length) + "\n";
  };
  row("static_td", static_log);
  row("dynamic_td", dynamic_log);
  csv += "grid_astar,ok," + fmt(astar.length) + ",1\n";
  std::cout << csv;
  write_file(out_dir / "compare.csv", csv);
  return kExitOk;
}

int cmd_render(const fs::path& log_path, const fs::path& out_dir) {
  std::ifstream in(log_path);
  if (!in) {
    std::cerr << "error: cannot open " << log_path << "\n";
    return kExitValidation;
  }
  Json doc = Json::parse(in, nullptr, true);
  const Scenario scenario = parse_scenario(doc.at("scenario").dump());
  SimLog log;
  const std::string outcome = doc.at("outcome").get<std::string>();
  log.outcome = outcome == "goal-reached" ? SimOutcome::kGoalReached
               : outcome == "collision"   ? SimOutcome::kCollision
               : outcome == "no-path"     ? SimOutcome::kNoPath
                                          : SimOutcome::kTimeout;
  log.duration = doc.at("duration").get<double>();
  log.path_length = doc.at("path_length").get<double>();
  for (const Json& s : doc.at("steps"))
    log.steps.push_back({s[0].get<double>(),
                         {{s[1].get<double>(), s[2].get<double>()}, s[3].get<double>()},
                         s[4].get<double>()});
  write_file(out_dir / "render.svg", render_simlog_svg(scenario, log));
  std::cout << "rendered " << log.steps.size() << " steps\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-distance collision prediction and path planning"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = ".";
  std::string mode_flag;
  bool field_dump = false;
  long seed = 0;

  const auto add_common = [&](CLI::App* cmd, bool wants_mode = true) {
    cmd->add_option("scenario", scenario_path, "scenario file")->required();
    cmd->add_option("--out", out_dir, "output directory");
    if (wants_mode)
      cmd->add_option("--mode", mode_flag, "planner mode override")
          ->check(CLI::IsMember({"static", "dynamic"}));
    cmd->add_flag("--field-dump", field_dump, "dump the composed field grid as CSV");
    cmd->add_option("--seed", seed, "seed recorded in outputs (reserved)");
  };

  CLI::App* predict = app.add_subcommand("predict", "time-to-collision report");
  add_common(predict, false);
  CLI::App* plan = app.add_subcommand("plan", "one-shot path plan");
  add_common(plan);
  CLI::App* simulate = app.add_subcommand("simulate", "closed-loop replanning run");
  add_common(simulate);
  CLI::App* compare = app.add_subcommand("compare", "path length vs grid A* baseline");
  add_common(compare, false);
  CLI::App* render = app.add_subcommand("render", "SVG from a saved simulation log");
  add_common(render, false);

  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(out_dir);
    if (render->parsed()) return cmd_render(scenario_path, out_dir);
    const Scenario scenario = load_scenario(scenario_path);
    if (predict->parsed()) return cmd_predict(scenario, out_dir);
    if (compare->parsed()) return cmd_compare(scenario, out_dir);
    const PlannerConfig config = resolve_config(scenario, mode_flag);
    if (plan->parsed()) return cmd_plan(scenario, config, out_dir, field_dump);
    if (simulate->parsed()) return cmd_simulate(scenario, config, out_dir, field_dump);
  } catch (const ValidationError& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return kExitValidation;
  } catch (const ConfigError& err) {
    std::cerr << "configuration error: " << err.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
