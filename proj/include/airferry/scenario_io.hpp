#pragma once
// JSON document formats for scenarios and plans.
//
// Both documents carry a schema tag and version and round-trip losslessly
// (doubles serialize in shortest round-trip form).  Serialization uses
// order-preserving JSON objects with a fixed field order, so equal inputs
// produce byte-identical documents.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "airferry/errors.hpp"
#include "airferry/planner.hpp"
#include "airferry/robustness.hpp"

namespace airferry {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kScenarioSchema = "mission-scenario";
inline constexpr const char* kPlanSchema = "mission-plan";
inline constexpr int kSchemaVersion = 1;

namespace detail {

inline ordered_json point_json(const Point3& p) {
  return ordered_json::array({p.x, p.y, p.z});
}

inline Point3 point_from(const ordered_json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw ParseError("expected [x, y, z] coordinate triple");
  }
  return Point3{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline void require_schema(const ordered_json& j, const char* schema) {
  if (!j.is_object() || !j.contains("schema") || !j.contains("version")) {
    throw ParseError("document lacks schema/version tags");
  }
  if (j.at("schema").get<std::string>() != schema) {
    throw ParseError("unexpected document schema '" +
                     j.at("schema").get<std::string>() + "'");
  }
  if (j.at("version").get<int>() != kSchemaVersion) {
    throw ParseError("unsupported document version");
  }
}

}  // namespace detail

inline ordered_json scenario_to_json(const Scenario& s) {
  ordered_json j;
  j["schema"] = kScenarioSchema;
  j["version"] = kSchemaVersion;
  j["seed"] = s.seed;
  j["time_budget"] = s.time_budget;
  ordered_json env;
  env["bounds"] = detail::point_json(s.env.bounds());
  env["cruise_altitude"] = s.env.cruise_altitude();
  ordered_json obstacles = ordered_json::array();
  for (const auto& box : s.env.obstacles()) {
    ordered_json b;
    b["min"] = detail::point_json(box.lo);
    b["max"] = detail::point_json(box.hi);
    obstacles.push_back(std::move(b));
  }
  env["obstacles"] = std::move(obstacles);
  j["environment"] = std::move(env);
  ordered_json vehicle;
  vehicle["ground_speed"] = s.params.ground_speed;
  vehicle["air_speed_h"] = s.params.air_speed_h;
  vehicle["air_speed_v"] = s.params.air_speed_v;
  vehicle["max_flight_time"] = s.params.max_flight_time;
  vehicle["margin_air"] = s.params.margin_air;
  vehicle["margin_ground"] = s.params.margin_ground;
  vehicle["recharge_ratio"] = s.params.recharge_ratio;
  j["vehicle"] = std::move(vehicle);
  ordered_json teams = ordered_json::array();
  for (const auto& t : s.teams) {
    ordered_json tj;
    tj["start"] = detail::point_json(t.start);
    tj["finish"] = detail::point_json(t.finish);
    teams.push_back(std::move(tj));
  }
  j["teams"] = std::move(teams);
  ordered_json points = ordered_json::array();
  for (const auto& p : s.points) points.push_back(detail::point_json(p));
  j["points"] = std::move(points);
  return j;
}

inline Scenario scenario_from_json(const ordered_json& j) {
  try {
    detail::require_schema(j, kScenarioSchema);
    const auto& env = j.at("environment");
    const Point3 bounds = detail::point_from(env.at("bounds"));
    const double cruise = env.at("cruise_altitude").get<double>();
    std::vector<BoxObstacle> obstacles;
    for (const auto& b : env.at("obstacles")) {
      obstacles.push_back(BoxObstacle{detail::point_from(b.at("min")),
                                      detail::point_from(b.at("max"))});
    }
    VehicleParams params;
    const auto& v = j.at("vehicle");
    params.ground_speed = v.at("ground_speed").get<double>();
    params.air_speed_h = v.at("air_speed_h").get<double>();
    params.air_speed_v = v.at("air_speed_v").get<double>();
    params.max_flight_time = v.at("max_flight_time").get<double>();
    params.margin_air = v.at("margin_air").get<double>();
    params.margin_ground = v.at("margin_ground").get<double>();
    params.recharge_ratio = v.at("recharge_ratio").get<double>();
    params.cruise_altitude = cruise;
    validate_params(params);
    std::vector<Team> teams;
    for (const auto& t : j.at("teams")) {
      teams.push_back(Team{detail::point_from(t.at("start")),
                           detail::point_from(t.at("finish"))});
    }
    std::vector<Point3> points;
    for (const auto& p : j.at("points")) {
      points.push_back(detail::point_from(p));
    }
    Scenario s{Environment{bounds, cruise, std::move(obstacles)},
               params,
               j.at("time_budget").get<double>(),
               std::move(teams),
               std::move(points),
               j.at("seed").get<std::uint64_t>()};
    for (const auto& t : s.teams) {
      if (!s.env.is_feasible(Point3{t.start.x, t.start.y, 0.0}) ||
          !s.env.is_feasible(Point3{t.finish.x, t.finish.y, 0.0})) {
        throw ParseError("team anchor is not a feasible ground point");
      }
    }
    for (const auto& p : s.points) {
      if (!s.env.is_feasible(p)) {
        throw ParseError("monitoring point is not feasible");
      }
    }
    return s;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed scenario document: ") + e.what());
  }
}

inline ordered_json plan_to_json(const Environment& env,
                                 const VehicleParams& params,
                                 const MissionPlan& mission) {
  ordered_json j;
  j["schema"] = kPlanSchema;
  j["version"] = kSchemaVersion;
  j["objective"] = objective(env, params, mission);
  ordered_json teams = ordered_json::array();
  for (const auto& tp : mission.teams) {
    ordered_json tj;
    tj["start"] = detail::point_json(tp.team.start);
    tj["finish"] = detail::point_json(tp.team.finish);
    tj["mission_time"] = team_mission_time(env, params, tp);
    ordered_json rows = ordered_json::array();
    for (const auto& row : tp.rows) {
      ordered_json rj;
      rj["release"] = detail::point_json(row.release);
      ordered_json visits = ordered_json::array();
      for (const auto& v : row.visits) visits.push_back(detail::point_json(v));
      rj["visits"] = std::move(visits);
      rj["collect"] = detail::point_json(row.collect);
      rj["tour_time"] = tour_time(params, row);
      rj["transfer_time"] =
          row.trivial() ? 0.0 : ugv_time(env, params, row.release, row.collect);
      rj["recharge_time"] = recharge_time(env, params, row);
      const TourMargins margins = tour_robustness(env, params, row);
      rj["slack_air"] = margins.slack_air;
      rj["slack_ground"] = margins.slack_ground;
      rows.push_back(std::move(rj));
    }
    tj["rows"] = std::move(rows);
    teams.push_back(std::move(tj));
  }
  j["teams"] = std::move(teams);
  return j;
}

struct PlanDocument {
  MissionPlan mission;
  double stated_objective = 0.0;
};

inline PlanDocument plan_from_json(const ordered_json& j) {
  try {
    detail::require_schema(j, kPlanSchema);
    PlanDocument doc;
    doc.stated_objective = j.at("objective").get<double>();
    for (const auto& tj : j.at("teams")) {
      TeamPlan tp;
      tp.team.start = detail::point_from(tj.at("start"));
      tp.team.finish = detail::point_from(tj.at("finish"));
      for (const auto& rj : tj.at("rows")) {
        TourRow row;
        row.release = detail::point_from(rj.at("release"));
        for (const auto& v : rj.at("visits")) {
          row.visits.push_back(detail::point_from(v));
        }
        row.collect = detail::point_from(rj.at("collect"));
        tp.rows.push_back(std::move(row));
      }
      doc.mission.teams.push_back(std::move(tp));
    }
    return doc;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed plan document: ") + e.what());
  }
}

inline std::string dump_document(const ordered_json& j) {
  return j.dump(2) + "\n";
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ordered_json parse_document(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

inline Scenario load_scenario(const std::string& path) {
  return scenario_from_json(parse_document(read_text_file(path)));
}

inline PlanDocument load_plan(const std::string& path) {
  return plan_from_json(parse_document(read_text_file(path)));
}

// One full planning cycle as the command-line tool performs it: parse the
// scenario text, plan, and serialize the plan text.  Reported planning times
// cover exactly this function.
inline std::pair<MissionPlan, std::string> plan_cycle(
    const std::string& scenario_text, const PlannerConfig& config = {}) {
  const Scenario scenario = scenario_from_json(parse_document(scenario_text));
  MissionPlan mission = plan_mission(scenario, config);
  std::string plan_text = dump_document(
      plan_to_json(scenario.env, scenario.params, mission));
  return {std::move(mission), std::move(plan_text)};
}

}  // namespace airferry
