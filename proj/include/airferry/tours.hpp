#pragma once
// Greedy packing of an ordered visit sequence into energy-feasible tours.
//
// Walking the team's visit order, each tour launches at the ground projection
// of its first point and keeps absorbing the next point while at least one
// landing candidate stays feasible.  A landing candidate is the ground
// projection of any point already in the tour (the projection of the first
// point is the release itself, so the straight return tour is always among
// the checked candidates).  A candidate is feasible when the tour flown to it
// fits the flight budget with the air margin to spare, and the ground
// transfer from the release to it fits the same budget with the ground
// margin to spare.
//
// Once every point is packed, remaining rows are trivial: they repeat the
// previous release and contribute nothing to the schedule.  The landing point
// of each non-trivial row is chosen later; rows carry their candidate sets.

#include <string>
#include <utility>
#include <vector>

#include "airferry/errors.hpp"
#include "airferry/kinematics.hpp"
#include "airferry/partition.hpp"

namespace airferry {

// One team's packed (but not yet finalized) tours.  rows.size() equals the
// number of points; the trailing rows past the packed ones are trivial.
// collect_candidates[i] lists the feasible landing options of row i (empty
// for trivial rows); rows are created with collect == release.
struct TeamTours {
  Team team;
  std::vector<Point3> sequence;  // the points, in visit order
  std::vector<TourRow> rows;
  std::vector<std::vector<Point3>> collect_candidates;
};

// A finalized team plan: rows with the landing points substituted in.
struct TeamPlan {
  Team team;
  std::vector<TourRow> rows;
};

inline bool collect_candidate_ok(const Environment& env,
                                 const VehicleParams& params,
                                 const TourRow& row, double flight_to_cand,
                                 const Point3& cand) {
  if (flight_to_cand + params.margin_air >
      params.max_flight_time + kTimeEps) {
    return false;
  }
  if (ugv_time(env, params, row.release, cand) + params.margin_ground >
      params.max_flight_time + kTimeEps) {
    return false;
  }
  return true;
}

// Every point must be servable by the degenerate one-point tour launched
// from its own projection; otherwise no plan can cover it.
inline void check_points_reachable(const Environment& env,
                                   const VehicleParams& params,
                                   const std::vector<Point3>& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point3 proj = project_to_ground(env, points[i]);
    const TourRow probe{proj, {points[i]}, proj};
    if (tour_time(params, probe) + params.margin_air >
        params.max_flight_time + kTimeEps) {
      throw InfeasibleInstanceError(
          "point #" + std::to_string(i) +
          " cannot be reached within the flight budget from its own "
          "ground projection");
    }
    if (params.margin_ground > params.max_flight_time + kTimeEps) {
      throw InfeasibleInstanceError(
          "ground margin alone exceeds the flight budget");
    }
  }
}

inline TeamTours build_feasible_tours(const Environment& env,
                                      const VehicleParams& params,
                                      const Team& team,
                                      const std::vector<Point3>& ordered) {
  check_points_reachable(env, params, ordered);

  TeamTours out;
  out.team = team;
  out.sequence = ordered;
  const std::size_t n = ordered.size();
  std::vector<Point3> proj(n);
  for (std::size_t i = 0; i < n; ++i) {
    proj[i] = project_to_ground(env, ordered[i]);
  }

  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (k >= n) {
      // Points exhausted: trivial row repeating the previous release.
      const Point3 rel = out.rows.back().release;
      out.rows.push_back(TourRow{rel, {}, rel});
      out.collect_candidates.emplace_back();
      continue;
    }
    TourRow row{proj[k], {}, proj[k]};
    std::vector<Point3> row_projs;   // distinct landing options so far
    std::vector<Point3> candidates;  // feasible subset at last acceptance
    // Running flight time from the lifted release through the accepted
    // visits, ending at the last visit.
    double flown = 2.0 * params.takeoff_landing_time();
    Point3 cur = lifted(params, row.release);
    while (k < n) {
      const Point3& next = ordered[k];
      const double flown_next = flown + uav_leg_time(params, cur, next);
      bool new_proj = true;
      for (const auto& q : row_projs) {
        if (same_point(q, proj[k], 1e-9)) {
          new_proj = false;
          break;
        }
      }
      std::vector<Point3> feasible;
      row.visits.push_back(next);
      if (new_proj) row_projs.push_back(proj[k]);
      for (const auto& cand : row_projs) {
        const double flight =
            flown_next + uav_leg_time(params, next, lifted(params, cand));
        if (collect_candidate_ok(env, params, row, flight, cand)) {
          feasible.push_back(cand);
        }
      }
      if (feasible.empty()) {
        row.visits.pop_back();
        if (new_proj) row_projs.pop_back();
        break;
      }
      candidates = std::move(feasible);
      flown = flown_next;
      cur = next;
      ++k;
    }
    if (row.trivial()) {
      // check_points_reachable guarantees the opening point always fits.
      throw std::logic_error("tour packing stalled on a reachable point");
    }
    out.rows.push_back(row);
    out.collect_candidates.push_back(std::move(candidates));
  }
  return out;
}

}  // namespace airferry
