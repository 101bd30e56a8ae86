#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "airferry/airferry.hpp"

using namespace airferry;

namespace {

Environment open_env() {
  return Environment{Point3{4000.0, 4000.0, 500.0}, 100.0, {}};
}

}  // namespace

TEST_CASE("points go to the team with the nearest anchor", "[partition]") {
  Environment env = open_env();
  std::vector<Team> teams{
      Team{Point3{0.0, 0.0, 0.0}, Point3{1900.0, 1900.0, 0.0}},
      Team{Point3{4000.0, 0.0, 0.0}, Point3{2100.0, 1900.0, 0.0}},
  };
  // (1000,1000,100): dist to team-0 start anchor = sqrt(1000^2+1000^2+100^2)
  // ~= 1417.7; to team-1's nearest anchor (2100,1900) ~= sqrt(1100^2+900^2+100^2)
  // ~= 1424.8 -> team 0.
  std::vector<Point3> pts{Point3{1000.0, 1000.0, 100.0},
                          Point3{3500.0, 200.0, 100.0}};
  auto groups = assign_points(env, teams, pts);
  REQUIRE(groups.size() == 2);
  REQUIRE(groups[0] == std::vector<int>{0});
  REQUIRE(groups[1] == std::vector<int>{1});
}

TEST_CASE("anchor distance ties break toward the lowest team index",
          "[partition]") {
  Environment env = open_env();
  std::vector<Team> teams{
      Team{Point3{0.0, 2000.0, 0.0}, Point3{0.0, 2000.0, 0.0}},
      Team{Point3{4000.0, 2000.0, 0.0}, Point3{4000.0, 2000.0, 0.0}},
  };
  // Exactly equidistant from both anchors.
  std::vector<Point3> pts{Point3{2000.0, 2000.0, 100.0}};
  auto groups = assign_points(env, teams, pts);
  REQUIRE(groups[0] == std::vector<int>{0});
  REQUIRE(groups[1].empty());
}

TEST_CASE("team distance is the min over both anchors", "[partition]") {
  Environment env = open_env();
  Team t{Point3{0.0, 0.0, 0.0}, Point3{4000.0, 0.0, 0.0}};
  const Point3 p{3900.0, 0.0, 100.0};
  const double d = team_anchor_distance(env, t, p);
  REQUIRE(d == Catch::Approx(std::sqrt(100.0 * 100.0 + 100.0 * 100.0)));
}

TEST_CASE("every point lands in exactly one group", "[partition]") {
  Environment env = open_env();
  std::vector<Team> teams{
      Team{Point3{0.0, 0.0, 0.0}, Point3{1900.0, 1900.0, 0.0}},
      Team{Point3{4000.0, 0.0, 0.0}, Point3{2100.0, 1900.0, 0.0}},
      Team{Point3{0.0, 4000.0, 0.0}, Point3{1900.0, 2100.0, 0.0}},
  };
  std::mt19937_64 eng(77);
  auto u = [&](double lo, double hi) {
    const double t = static_cast<double>(eng() >> 11) * 0x1.0p-53;
    return lo + t * (hi - lo);
  };
  std::vector<Point3> pts;
  for (int i = 0; i < 60; ++i) {
    pts.push_back(Point3{u(0.0, 4000.0), u(0.0, 4000.0), 100.0});
  }
  auto groups = assign_points(env, teams, pts);
  std::vector<int> seen(pts.size(), 0);
  for (const auto& g : groups) {
    for (int idx : g) {
      REQUIRE(idx >= 0);
      REQUIRE(idx < static_cast<int>(pts.size()));
      seen[static_cast<std::size_t>(idx)] += 1;
    }
  }
  for (int count : seen) REQUIRE(count == 1);
  // Group contents stay sorted by point index (stable iteration order).
  for (const auto& g : groups) {
    REQUIRE(std::is_sorted(g.begin(), g.end()));
  }
}

TEST_CASE("obstacle-aware anchor distance can reroute over the ground",
          "[partition]") {
  // An obstacle blocks the direct air segment from the anchor to the point;
  // distance then includes the ground route to the projection.
  BoxObstacle tall{Point3{1800.0, 1800.0, 0.0}, Point3{2200.0, 2200.0, 450.0}};
  Environment env{Point3{4000.0, 4000.0, 500.0}, 460.0, {tall}};
  const Point3 anchor{0.0, 2000.0, 0.0};
  const Point3 p{4000.0, 2000.0, 100.0};
  const double d = anchor_distance(env, anchor, p);
  const double straight = distance3(anchor, p);
  REQUIRE(d > straight);
}
