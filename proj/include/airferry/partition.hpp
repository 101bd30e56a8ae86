#pragma once
// Assignment of monitoring points to vehicle teams.
//
// Each team owns a start and a finish anchor on the ground.  Every point goes
// to the team whose nearer anchor is closest; ties go to the lowest team
// index, so the assignment is deterministic.

#include <limits>
#include <vector>

#include "airferry/geometry.hpp"

namespace airferry {

struct Team {
  Point3 start;
  Point3 finish;
};

inline double team_anchor_distance(const Environment& env, const Team& team,
                                   const Point3& p) {
  return std::min(anchor_distance(env, team.start, p),
                  anchor_distance(env, team.finish, p));
}

// Returns, per team, the indices of its points (ascending).
inline std::vector<std::vector<int>> assign_points(
    const Environment& env, const std::vector<Team>& teams,
    const std::vector<Point3>& points) {
  std::vector<std::vector<int>> assignment(teams.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_team = 0;
    for (std::size_t m = 0; m < teams.size(); ++m) {
      const double d = team_anchor_distance(env, teams[m], points[i]);
      if (d < best) {
        best = d;
        best_team = m;
      }
    }
    assignment[best_team].push_back(static_cast<int>(i));
  }
  return assignment;
}

}  // namespace airferry
