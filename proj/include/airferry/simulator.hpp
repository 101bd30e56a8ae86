#pragma once
// Monte-Carlo execution harness.
//
// A TrueWorld extends the planned environment with obstacles the planner
// never saw.  Execution walks the plan; a tour whose release or collect point
// is blocked in the true world gets replaced by the nearest feasible ground
// point found on concentric rings (16 bearings, 20 radial steps) within half
// the tour's combined adjustment radius per endpoint, subject to the
// distance-budget admissibility check.  Realized travel times are then
// recomputed against the true world and any tour exceeding the flight budget
// is flagged.
//
// All randomness flows through one seeded 64-bit generator with explicit
// scaling, so a seed fully determines every generated instance and world.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "airferry/errors.hpp"
#include "airferry/planner.hpp"
#include "airferry/robustness.hpp"

namespace airferry {

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed * 2654435761u + 1) {}

  double uniform(double lo, double hi) {
    const double u =
        static_cast<double>(eng_() >> 11) * 0x1.0p-53;  // [0,1)
    return lo + u * (hi - lo);
  }

 private:
  std::mt19937_64 eng_;
};

// Canonical anchor layout: starts spread around the workspace rim, finishes
// clustered near the center.  Up to ten teams.
inline std::vector<Team> default_anchors(std::size_t m) {
  static const Team kAnchors[10] = {
      {{0, 0, 0}, {1900, 1900, 0}},     {{4000, 0, 0}, {2100, 1900, 0}},
      {{0, 4000, 0}, {1900, 2100, 0}},  {{4000, 4000, 0}, {2100, 2100, 0}},
      {{2000, 0, 0}, {2000, 1800, 0}},  {{4000, 2000, 0}, {2200, 2000, 0}},
      {{2000, 4000, 0}, {2000, 2200, 0}}, {{0, 2000, 0}, {1800, 2000, 0}},
      {{1000, 0, 0}, {1850, 1950, 0}},  {{3000, 0, 0}, {2150, 1950, 0}},
  };
  if (m == 0 || m > 10) {
    throw std::invalid_argument("default anchor layout covers 1..10 teams");
  }
  return std::vector<Team>(kAnchors, kAnchors + m);
}

// Random obstacle-free instance: n monitoring points uniform over the ground
// rectangle at cruise altitude, m teams at the given anchors.
inline Scenario generate_instance(
    std::uint64_t seed, std::size_t n, std::size_t m,
    Point3 bounds = Point3{4000.0, 4000.0, 500.0}, double cruise_altitude = 100.0,
    std::vector<Team> teams = {}) {
  if (n < m) {
    throw std::invalid_argument("need at least as many points as teams");
  }
  if (teams.empty()) teams = default_anchors(m);
  if (teams.size() != m) {
    throw std::invalid_argument("team count does not match anchor list");
  }
  Scenario s{Environment{bounds, cruise_altitude, {}},
             VehicleParams{},
             1.0,
             std::move(teams),
             {},
             seed};
  s.params.cruise_altitude = cruise_altitude;
  SeededRng rng(seed);
  s.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform(0.0, bounds.x);
    const double y = rng.uniform(0.0, bounds.y);
    s.points.push_back(Point3{x, y, cruise_altitude});
  }
  return s;
}

// Random unknown obstacles for a scenario.  Each box is seated on the ground
// with its top below cruise altitude, keeps a clearance disk around every
// point's planned ground projection and around every anchor, and must leave
// the combined ground set connected.  Throws GenerationFailedError when the
// attempt budget runs out.
inline std::vector<BoxObstacle> inject_unknown_obstacles(
    const Environment& env, const std::vector<Team>& teams,
    const std::vector<Point3>& points, std::uint64_t seed, std::size_t count,
    double max_size, double clearance = 30.0) {
  if (count == 0) return {};
  if (!(max_size > 0.0)) {
    throw std::invalid_argument("max obstacle size must be positive");
  }
  SeededRng rng(seed ^ 0x9e3779b97f4a7c15ull);
  const Point3& b = env.bounds();
  std::vector<Point3> keep_clear;
  for (const auto& p : points) keep_clear.push_back(project_to_ground(env, p));
  for (const auto& t : teams) {
    keep_clear.push_back(Point3{t.start.x, t.start.y, 0.0});
    keep_clear.push_back(Point3{t.finish.x, t.finish.y, 0.0});
  }

  std::vector<BoxObstacle> placed;
  std::size_t attempts = 0;
  const std::size_t attempt_cap = 300 * count + 100;
  while (placed.size() < count) {
    if (++attempts > attempt_cap) {
      throw GenerationFailedError(
          "could not place unknown obstacles within the attempt budget");
    }
    const double w = rng.uniform(0.3 * max_size, max_size);
    const double h = rng.uniform(0.3 * max_size, max_size);
    const double cx = rng.uniform(0.0, b.x);
    const double cy = rng.uniform(0.0, b.y);
    const double top = rng.uniform(0.4, 1.0) * env.cruise_altitude();
    BoxObstacle box{{cx - w / 2.0, cy - h / 2.0, 0.0},
                    {cx + w / 2.0, cy + h / 2.0, top}};
    bool ok = true;
    for (const auto& q : keep_clear) {
      // Reject when the clearance disk around q sinks fully into the box.
      if (q.x >= box.lo.x + clearance && q.x <= box.hi.x - clearance &&
          q.y >= box.lo.y + clearance && q.y <= box.hi.y - clearance) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<BoxObstacle> combined = env.obstacles();
    combined.insert(combined.end(), placed.begin(), placed.end());
    combined.push_back(box);
    try {
      Environment probe{b, env.cruise_altitude(), combined};
    } catch (const std::exception&) {
      continue;  // disconnected or otherwise invalid; try again
    }
    placed.push_back(box);
  }
  return placed;
}

struct TrueWorld {
  Environment planned;
  Environment actual;
  std::vector<BoxObstacle> unknown;

  TrueWorld(Environment planned_env, std::vector<BoxObstacle> unknown_boxes)
      : planned(planned_env),
        actual(make_actual(planned_env, unknown_boxes)),
        unknown(std::move(unknown_boxes)) {}

 private:
  static Environment make_actual(const Environment& base,
                                 const std::vector<BoxObstacle>& unknown) {
    std::vector<BoxObstacle> all = base.obstacles();
    all.insert(all.end(), unknown.begin(), unknown.end());
    return Environment{base.bounds(), base.cruise_altitude(), std::move(all)};
  }
};

inline TrueWorld make_true_world(const Scenario& scenario, std::uint64_t seed,
                                 std::size_t count, double max_size,
                                 double clearance = 30.0) {
  return TrueWorld{scenario.env,
                   inject_unknown_obstacles(scenario.env, scenario.teams,
                                            scenario.points, seed, count,
                                            max_size, clearance)};
}

struct AdjustedRow {
  TourRow row;
  bool adjusted = false;
  bool certificate_ok = true;
  double release_dev = 0.0;
  double collect_dev = 0.0;
};

namespace detail {

// Candidate replacements for one endpoint, nearest first: the point itself
// when it survives in the true world, otherwise ring samples around it.
inline std::vector<Point3> endpoint_candidates(const Environment& actual,
                                               const Point3& original,
                                               double radius) {
  const Point3 ground{original.x, original.y, 0.0};
  if (actual.is_feasible(ground)) return {ground};
  std::vector<Point3> out;
  if (radius <= 0.0) return out;
  constexpr int kBearings = 16;
  constexpr int kRings = 20;
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  for (int ring = 1; ring <= kRings; ++ring) {
    const double r = radius * static_cast<double>(ring) / kRings;
    for (int bearing = 0; bearing < kBearings; ++bearing) {
      const double a = kTwoPi * bearing / kBearings;
      const Point3 q{ground.x + r * std::cos(a), ground.y + r * std::sin(a),
                     0.0};
      if (actual.is_feasible(q)) out.push_back(q);
    }
  }
  return out;
}

}  // namespace detail

// Replacement release/collect pair for one tour in the true world.  Feasible
// original endpoints stay put; blocked ones move to the nearest ring sample
// within half the combined radius, and the chosen pair must pass the
// distance-budget check.  Throws AdjustmentExhaustedError when no candidate
// pair qualifies (for unchanged endpoints a failed check is only recorded).
inline AdjustedRow adjust_release_collect(const TrueWorld& world,
                                          const TourRow& original,
                                          const AdjustmentBudget& budget) {
  AdjustedRow result;
  result.row = original;
  if (original.trivial()) return result;
  const double per_point = budget.combined_radius / 2.0;
  const auto rel_cands = detail::endpoint_candidates(
      world.actual, original.release, per_point);
  const auto col_cands = detail::endpoint_candidates(
      world.actual, original.collect, per_point);
  if (rel_cands.empty() || col_cands.empty()) {
    throw AdjustmentExhaustedError(
        "no feasible replacement within the adjustment radius");
  }
  for (const auto& r : rel_cands) {
    for (const auto& c : col_cands) {
      TourRow probe = original;
      probe.release = r;
      probe.collect = c;
      if (certificate_check(world.planned, world.actual, original, probe,
                            budget)) {
        result.row = probe;
        result.release_dev = horizontal_distance(original.release, r);
        result.collect_dev = horizontal_distance(original.collect, c);
        result.adjusted = result.release_dev > 0.0 || result.collect_dev > 0.0;
        result.certificate_ok = true;
        return result;
      }
    }
  }
  // Unchanged feasible endpoints are kept even when the budget check fails
  // (there is nothing better to switch to); moved endpoints must pass it.
  if (rel_cands.size() == 1 && col_cands.size() == 1 &&
      same_point(rel_cands[0], Point3{original.release.x, original.release.y, 0.0}) &&
      same_point(col_cands[0], Point3{original.collect.x, original.collect.y, 0.0})) {
    result.certificate_ok = false;
    return result;
  }
  throw AdjustmentExhaustedError(
      "no replacement pair passes the distance-budget check");
}

struct SimulationConfig {
  double air_time_factor = 1.0;  // uniform slowdown on realized flight times
  double budget_scale = 1.0;     // scales both adjustment budgets
};

struct TourExecution {
  int team = -1;
  int row = -1;
  bool adjusted = false;
  bool adjustment_failed = false;
  bool certificate_ok = true;
  double release_dev = 0.0;
  double collect_dev = 0.0;
  double realized_air = 0.0;
  double realized_ground = 0.0;
  bool violation_air = false;
  bool violation_ground = false;
  Point3 release;
  Point3 collect;
};

struct TeamExecution {
  int team = -1;
  double realized_time = 0.0;
  bool ok = true;
};

struct ExecutionReport {
  std::vector<TourExecution> tours;
  std::vector<TeamExecution> teams;
  double realized_objective = 0.0;
  int violation_count = 0;
  bool all_certified = true;
  bool success = true;
};

// Executes a plan in the true world: adjust blocked endpoints, recompute
// realized times, flag budget violations, and aggregate per-team clocks.
inline ExecutionReport execute(const TrueWorld& world,
                               const VehicleParams& params,
                               const MissionPlan& mission,
                               const SimulationConfig& config = {}) {
  ExecutionReport report;
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < mission.teams.size(); ++m) {
    const TeamPlan& tp = mission.teams[m];
    TeamExecution te;
    te.team = static_cast<int>(m);
    std::vector<std::pair<std::size_t, AdjustedRow>> adjusted;
    bool team_failed = false;
    for (std::size_t r = 0; r < tp.rows.size(); ++r) {
      const TourRow& row = tp.rows[r];
      if (row.trivial()) continue;
      TourExecution tx;
      tx.team = static_cast<int>(m);
      tx.row = static_cast<int>(r);
      const TourMargins margins = tour_robustness(world.planned, params, row);
      AdjustmentBudget budget = adjustment_budget(params, margins);
      budget.combined_radius *= config.budget_scale;
      budget.ground_slack_length *= config.budget_scale;
      try {
        AdjustedRow adj = adjust_release_collect(world, row, budget);
        tx.adjusted = adj.adjusted;
        tx.certificate_ok = adj.certificate_ok;
        tx.release_dev = adj.release_dev;
        tx.collect_dev = adj.collect_dev;
        tx.release = adj.row.release;
        tx.collect = adj.row.collect;
        tx.realized_air = config.air_time_factor * tour_time(params, adj.row);
        try {
          tx.realized_ground =
              ugv_time(world.actual, params, adj.row.release, adj.row.collect);
        } catch (const DisconnectedGroundError&) {
          tx.realized_ground = inf;
        }
        adjusted.emplace_back(r, std::move(adj));
      } catch (const AdjustmentExhaustedError&) {
        tx.adjustment_failed = true;
        tx.certificate_ok = false;
        tx.release = row.release;
        tx.collect = row.collect;
        tx.realized_air = config.air_time_factor * tour_time(params, row);
        tx.realized_ground = inf;
        team_failed = true;
      }
      tx.violation_air = tx.realized_air > params.max_flight_time + kTimeEps;
      tx.violation_ground =
          tx.realized_ground > params.max_flight_time + kTimeEps;
      if (tx.violation_air) ++report.violation_count;
      if (tx.violation_ground) ++report.violation_count;
      report.all_certified = report.all_certified && tx.certificate_ok &&
                                !tx.adjustment_failed;
      report.tours.push_back(tx);
    }

    // Realized team clock over the adjusted rows.
    if (team_failed) {
      te.realized_time = inf;
      te.ok = false;
    } else if (adjusted.empty()) {
      te.realized_time =
          ugv_time(world.actual, params, tp.team.start, tp.team.finish);
    } else {
      auto ground = [&](const Point3& a, const Point3& b) {
        try {
          return ugv_time(world.actual, params, a, b);
        } catch (const DisconnectedGroundError&) {
          return inf;
        }
      };
      double t = ground(tp.team.start, adjusted.front().second.row.release);
      for (std::size_t i = 0; i < adjusted.size(); ++i) {
        const TourRow& row = adjusted[i].second.row;
        const double air = config.air_time_factor * tour_time(params, row);
        const double transfer = ground(row.release, row.collect);
        t += std::max(air, transfer);
        if (i + 1 < adjusted.size()) {
          const double drive =
              ground(row.collect, adjusted[i + 1].second.row.release);
          const double drain =
              params.recharge_ratio * std::max(air, transfer);
          t += std::max(drive, drain);
        }
      }
      t += ground(adjusted.back().second.row.collect, tp.team.finish);
      te.realized_time = t;
      te.ok = std::isfinite(t);
    }
    report.teams.push_back(te);
  }
  for (const auto& te : report.teams) {
    report.realized_objective = std::max(report.realized_objective,
                                         te.realized_time);
    report.success = report.success && te.ok;
  }
  for (const auto& tx : report.tours) {
    report.success = report.success && !tx.violation_air &&
                     !tx.violation_ground && !tx.adjustment_failed;
  }
  return report;
}

}  // namespace airferry
