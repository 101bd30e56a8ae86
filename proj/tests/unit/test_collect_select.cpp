#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "airferry/airferry.hpp"

using namespace airferry;

namespace {

Environment open_env() {
  return Environment{Point3{4000.0, 4000.0, 500.0}, 100.0, {}};
}

TeamTours make_tours(const Environment& env, const VehicleParams& p,
                     const Team& team, const std::vector<Point3>& pts) {
  auto order = plan_visit_sequence(env, pts, team);
  std::vector<Point3> ordered;
  ordered.reserve(order.size());
  for (int i : order) ordered.push_back(pts[static_cast<std::size_t>(i)]);
  return build_feasible_tours(env, p, team, ordered);
}

}  // namespace

TEST_CASE("single tour with a singleton candidate builds the minimal graph",
          "[collect_select]") {
  Environment env = open_env();
  VehicleParams p;
  Team team{Point3{0.0, 0.0, 0.0}, Point3{4000.0, 4000.0, 0.0}};
  std::vector<Point3> pts{Point3{0.0, 0.0, 100.0}};
  auto tours = make_tours(env, p, team, pts);
  REQUIRE(tours.rows.size() == 1);
  REQUIRE(tours.collect_candidates[0].size() == 1);
  auto graph = build_collect_graph(env, p, tours);
  // start + finish + release + one candidate = 4 nodes; start->release,
  // release->candidate, candidate->finish = 3 edges.
  REQUIRE(graph.node_count() == 4);
  REQUIRE(graph.edge_count() == 3);
  auto choice = select_collect_points(graph);
  REQUIRE(choice.choice.size() == 1);
  REQUIRE(choice.choice[0] == 0);
  // Total: drive to release (0) + max(flight 100, drive 0) + drive home.
  const double home =
      ugv_time(env, p, Point3{0.0, 0.0, 0.0}, Point3{4000.0, 4000.0, 0.0});
  REQUIRE(choice.total == Catch::Approx(100.0 + home).margin(1e-9));
}

TEST_CASE("selection minimizes over candidate combinations exactly",
          "[collect_select]") {
  Environment env = open_env();
  VehicleParams p;
  Team team{Point3{0.0, 0.0, 0.0}, Point3{4000.0, 4000.0, 0.0}};
  std::vector<Point3> pts{
      Point3{0.0, 0.0, 100.0},    Point3{900.0, 300.0, 100.0},
      Point3{1800.0, 600.0, 100.0}, Point3{2700.0, 900.0, 100.0},
      Point3{3600.0, 1200.0, 100.0}};
  auto tours = make_tours(env, p, team, pts);
  auto graph = build_collect_graph(env, p, tours);
  auto dp = select_collect_points(graph);
  const auto [brute_idx, brute_total] = enumerate_collect_choices(graph);
  REQUIRE(dp.total == brute_total);  // bitwise: identical fold order
  REQUIRE(dp.choice == brute_idx);
}

TEST_CASE("every choice indexes a real candidate", "[collect_select]") {
  Environment env = open_env();
  VehicleParams p;
  p.margin_air = 150.0;
  Team team{Point3{0.0, 0.0, 0.0}, Point3{4000.0, 4000.0, 0.0}};
  std::vector<Point3> pts{Point3{0.0, 0.0, 100.0},
                          Point3{1500.0, 500.0, 100.0},
                          Point3{3000.0, 1000.0, 100.0}};
  auto tours = make_tours(env, p, team, pts);
  auto graph = build_collect_graph(env, p, tours);
  auto full = select_collect_points(graph);
  REQUIRE(full.choice.size() == graph.tours.size());
  for (std::size_t i = 0; i < full.choice.size(); ++i) {
    REQUIRE(full.choice[i] >= 0);
    REQUIRE(full.choice[i] < static_cast<int>(graph.candidates[i].size()));
  }
}

TEST_CASE("finalized plan's mission time equals the graph total",
          "[collect_select]") {
  Environment env = open_env();
  VehicleParams p;
  p.margin_air = 120.0;
  Team team{Point3{0.0, 0.0, 0.0}, Point3{4000.0, 4000.0, 0.0}};
  std::vector<Point3> pts{Point3{200.0, 200.0, 100.0},
                          Point3{1200.0, 700.0, 100.0},
                          Point3{2400.0, 1400.0, 100.0},
                          Point3{3600.0, 2400.0, 100.0}};
  auto tours = make_tours(env, p, team, pts);
  auto graph = build_collect_graph(env, p, tours);
  auto choice = select_collect_points(graph);
  TeamPlan plan = finalize_team_plan(tours, choice);
  REQUIRE(plan.rows.size() == tours.rows.size());
  const double audited = team_mission_time(env, p, plan);
  REQUIRE(audited == Catch::Approx(choice.total).margin(1e-6));
}

TEST_CASE("empty team reduces to the direct carrier transit",
          "[collect_select]") {
  Environment env = open_env();
  VehicleParams p;
  Team team{Point3{0.0, 0.0, 0.0}, Point3{4000.0, 0.0, 0.0}};
  TeamTours tours;
  tours.team = team;
  auto graph = build_collect_graph(env, p, tours);
  REQUIRE(graph.node_count() == 2);
  REQUIRE(graph.edge_count() == 1);
  auto choice = select_collect_points(graph);
  REQUIRE(choice.choice.empty());
  REQUIRE(choice.total == Catch::Approx(1600.0));
  const auto [brute_idx, brute_total] = enumerate_collect_choices(graph);
  REQUIRE(brute_idx.empty());
  REQUIRE(brute_total == choice.total);
}

TEST_CASE("repeat selection is bit-stable", "[collect_select]") {
  Environment env = open_env();
  VehicleParams p;
  Team team{Point3{0.0, 0.0, 0.0}, Point3{4000.0, 4000.0, 0.0}};
  std::vector<Point3> pts{Point3{1000.0, 1000.0, 100.0}};
  auto tours = make_tours(env, p, team, pts);
  auto graph = build_collect_graph(env, p, tours);
  auto a = select_collect_points(graph);
  auto b = select_collect_points(graph);
  REQUIRE(a.choice == b.choice);
  REQUIRE(a.total == b.total);
}
