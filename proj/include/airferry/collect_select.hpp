#pragma once
// Landing-point selection over a layered candidate graph.
//
// Releases are fixed by the packing step, so the only remaining freedom is
// which candidate each tour lands on.  The choices form a layered DAG:
//
//   start anchor -> release_1 -> {candidates_1} -> release_2 -> ... -> finish
//
// where the edge into a candidate carries the time the team spends on that
// tour (slower of flight and ground transfer) and the edge out of it carries
// the time before the next launch (slower of the drive to the next release
// and the recharge).  The edge from the last tour's candidate to the finish
// anchor is the plain drive home: the mission clock stops on arrival.
// Trivial rows never appear: they collapse to zero-weight pass-throughs.
//
// Because layers are chained through single forced release nodes, a forward
// shortest-path sweep (with ties to the lowest candidate index) is exact.

#include <limits>
#include <utility>
#include <vector>

#include "airferry/kinematics.hpp"
#include "airferry/tours.hpp"

namespace airferry {

struct CollectGraph {
  Point3 start;
  Point3 finish;
  std::vector<int> tour_rows;  // indices of the non-trivial rows, in order
  std::vector<TourRow> tours;  // those rows (collect still == release)
  std::vector<std::vector<Point3>> candidates;  // per tour
  double start_edge = 0.0;                      // start -> first release
  double direct_edge = 0.0;  // start -> finish when there are no tours
  std::vector<std::vector<double>> in_weight;   // release_i -> candidate
  std::vector<std::vector<double>> out_weight;  // candidate -> next release
                                                // (or finish for the last)

  std::size_t node_count() const {
    std::size_t n = 2;
    for (const auto& c : candidates) n += 1 + c.size();
    return n;
  }
  std::size_t edge_count() const {
    if (candidates.empty()) return 1;
    std::size_t e = 1;
    for (const auto& c : candidates) e += 2 * c.size();
    return e;
  }
};

inline CollectGraph build_collect_graph(const Environment& env,
                                        const VehicleParams& params,
                                        const TeamTours& tt) {
  CollectGraph g;
  g.start = tt.team.start;
  g.finish = tt.team.finish;
  for (std::size_t i = 0; i < tt.rows.size(); ++i) {
    if (tt.rows[i].trivial()) continue;
    g.tour_rows.push_back(static_cast<int>(i));
    g.tours.push_back(tt.rows[i]);
    g.candidates.push_back(tt.collect_candidates[i]);
  }
  if (g.tours.empty()) {
    g.direct_edge = ugv_time(env, params, g.start, g.finish);
    return g;
  }
  g.start_edge = ugv_time(env, params, g.start, g.tours.front().release);
  g.in_weight.resize(g.tours.size());
  g.out_weight.resize(g.tours.size());
  for (std::size_t i = 0; i < g.tours.size(); ++i) {
    const TourRow& row = g.tours[i];
    const bool last = (i + 1 == g.tours.size());
    const Point3 next_stop = last ? g.finish : g.tours[i + 1].release;
    for (const auto& cand : g.candidates[i]) {
      TourRow landed = row;
      landed.collect = cand;
      const double busy = std::max(tour_time(params, landed),
                                   ugv_time(env, params, row.release, cand));
      g.in_weight[i].push_back(busy);
      const double drive = ugv_time(env, params, cand, next_stop);
      const double out =
          last ? drive : std::max(drive, recharge_time(env, params, landed));
      g.out_weight[i].push_back(out);
    }
  }
  return g;
}

struct CollectChoice {
  std::vector<int> choice;  // candidate index per tour
  double total = 0.0;       // start-to-finish path weight
};

// Forward sweep over the layers.  Each release node funnels all paths, so the
// best candidate of a tour is independent of later tours; ties pick the
// lowest candidate index.
inline CollectChoice select_collect_points(const CollectGraph& g) {
  CollectChoice result;
  if (g.tours.empty()) {
    result.total = g.direct_edge;
    return result;
  }
  double at_release = g.start_edge;
  for (std::size_t i = 0; i < g.tours.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = -1;
    for (std::size_t c = 0; c < g.candidates[i].size(); ++c) {
      const double through = (at_release + g.in_weight[i][c]) + g.out_weight[i][c];
      if (through < best) {
        best = through;
        arg = static_cast<int>(c);
      }
    }
    result.choice.push_back(arg);
    at_release = best;
  }
  result.total = at_release;
  return result;
}

inline TeamPlan finalize_team_plan(const TeamTours& tt,
                                   const CollectChoice& choice) {
  TeamPlan plan;
  plan.team = tt.team;
  plan.rows = tt.rows;
  std::size_t c = 0;
  for (std::size_t i = 0; i < plan.rows.size(); ++i) {
    if (plan.rows[i].trivial()) continue;
    plan.rows[i].collect =
        tt.collect_candidates[i][static_cast<std::size_t>(choice.choice[c])];
    ++c;
  }
  return plan;
}

}  // namespace airferry
