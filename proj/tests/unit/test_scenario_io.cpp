#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "airferry/airferry.hpp"

using namespace airferry;

namespace {

Scenario sample_scenario() {
  Scenario sc = generate_instance(2024, 12, 2);
  sc.params.margin_air = 45.0;
  sc.params.margin_ground = 30.0;
  sc.params.recharge_ratio = 1.5;
  return sc;
}

Scenario scenario_from_text(const std::string& text) {
  return scenario_from_json(parse_document(text));
}

PlanDocument plan_from_text(const std::string& text) {
  return plan_from_json(parse_document(text));
}

}  // namespace

TEST_CASE("scenario round-trips losslessly through json", "[scenario_io]") {
  Scenario sc = sample_scenario();
  const std::string text = dump_document(scenario_to_json(sc));
  Scenario back = scenario_from_text(text);
  REQUIRE(back.points == sc.points);
  REQUIRE(back.teams.size() == sc.teams.size());
  for (std::size_t i = 0; i < sc.teams.size(); ++i) {
    REQUIRE(back.teams[i].start == sc.teams[i].start);
    REQUIRE(back.teams[i].finish == sc.teams[i].finish);
  }
  REQUIRE(back.params.ground_speed == sc.params.ground_speed);
  REQUIRE(back.params.margin_air == sc.params.margin_air);
  REQUIRE(back.params.margin_ground == sc.params.margin_ground);
  REQUIRE(back.params.recharge_ratio == sc.params.recharge_ratio);
  REQUIRE(back.env.bounds() == sc.env.bounds());
  REQUIRE(back.env.cruise_altitude() == sc.env.cruise_altitude());
  REQUIRE(back.seed == sc.seed);
  // Serialization is byte-stable.
  REQUIRE(dump_document(scenario_to_json(back)) == text);
}

TEST_CASE("plan serialization is byte-deterministic", "[scenario_io]") {
  Scenario sc = sample_scenario();
  MissionPlan plan = plan_mission(sc);
  const std::string a = dump_document(plan_to_json(sc.env, sc.params, plan));
  const std::string b = dump_document(plan_to_json(sc.env, sc.params, plan));
  REQUIRE(a == b);
  PlanDocument doc = plan_from_text(a);
  REQUIRE(doc.mission.teams.size() == plan.teams.size());
  for (std::size_t t = 0; t < plan.teams.size(); ++t) {
    REQUIRE(doc.mission.teams[t].rows.size() == plan.teams[t].rows.size());
    for (std::size_t r = 0; r < plan.teams[t].rows.size(); ++r) {
      REQUIRE(doc.mission.teams[t].rows[r].release ==
              plan.teams[t].rows[r].release);
      REQUIRE(doc.mission.teams[t].rows[r].collect ==
              plan.teams[t].rows[r].collect);
      REQUIRE(doc.mission.teams[t].rows[r].visits ==
              plan.teams[t].rows[r].visits);
    }
  }
  REQUIRE(doc.stated_objective ==
          Catch::Approx(objective(sc.env, sc.params, plan)).margin(1e-9));
}

TEST_CASE("malformed documents raise parse errors", "[scenario_io]") {
  REQUIRE_THROWS_AS(parse_document("{not json"), ParseError);
  REQUIRE_THROWS_AS(scenario_from_text("{}"), ParseError);
  REQUIRE_THROWS_AS(scenario_from_text(R"({"schema":"wrong","version":1})"),
                    ParseError);
  Scenario sc = sample_scenario();
  auto j = scenario_to_json(sc);
  j["version"] = 99;
  REQUIRE_THROWS_AS(scenario_from_text(dump_document(j)), ParseError);
  // Plan documents reject scenario payloads and vice versa.
  REQUIRE_THROWS_AS(plan_from_text(dump_document(scenario_to_json(sc))),
                    ParseError);
}

TEST_CASE("scenario files with infeasible sites are rejected",
          "[scenario_io]") {
  Scenario sc = sample_scenario();
  auto j = scenario_to_json(sc);
  j["points"][0] = {{"x", -50.0}, {"y", 0.0}, {"z", 100.0}};
  REQUIRE_THROWS_AS(scenario_from_text(dump_document(j)), ParseError);
}

TEST_CASE("file io round-trips through disk", "[scenario_io]") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "airferry_io_test";
  fs::create_directories(dir);
  const fs::path path = dir / "scenario.json";
  Scenario sc = sample_scenario();
  write_text_file(path.string(), dump_document(scenario_to_json(sc)));
  Scenario back = load_scenario(path.string());
  REQUIRE(back.points == sc.points);
  fs::remove_all(dir);
}

TEST_CASE("plan cycle returns both the plan and its serialization",
          "[scenario_io]") {
  Scenario sc = sample_scenario();
  const std::string scenario_text = dump_document(scenario_to_json(sc));
  PlannerConfig cfg;
  auto [plan, text] = plan_cycle(scenario_text, cfg);
  REQUIRE_FALSE(text.empty());
  MissionPlan direct = plan_mission(sc);
  REQUIRE(objective(sc.env, sc.params, plan) ==
          Catch::Approx(objective(sc.env, sc.params, direct)));
  REQUIRE(text == dump_document(plan_to_json(sc.env, sc.params, direct)));
}
