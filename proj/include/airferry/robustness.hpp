#pragma once
// Robustness margins of a finished plan and admissibility of in-field
// modifications.
//
// Each tour leaves two slacks: how much longer the flight could take and how
// much longer the ground transfer could take before the flight budget is hit.
// A modified plan (same visits, possibly moved release/collect points, slower
// realized travel) stays safe as long as each tour's realized flight and
// transfer stay within the planned time plus the respective slack.
//
// The slacks convert to distance budgets: endpoints may move as long as the
// two displacements together stay within what the aerial vehicle can absorb
// (horizontal speed times air slack), and the realized release->collect
// ground path may grow by at most ground speed times ground slack.  Budgets
// passing those checks imply the time conditions above hold.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "airferry/errors.hpp"
#include "airferry/kinematics.hpp"
#include "airferry/planner.hpp"

namespace airferry {

struct TourMargins {
  double slack_air = 0.0;     // s
  double slack_ground = 0.0;  // s
};

// Remaining slack of one row against the flight budget.  Trivial rows have
// the whole budget to spare.
inline TourMargins tour_robustness(const Environment& env,
                                   const VehicleParams& params,
                                   const TourRow& row) {
  if (row.trivial()) {
    return {params.max_flight_time, params.max_flight_time};
  }
  return {params.max_flight_time - tour_time(params, row),
          params.max_flight_time -
              ugv_time(env, params, row.release, row.collect)};
}

struct AdjustmentBudget {
  double combined_radius = 0.0;      // m, shared by release + collect moves
  double ground_slack_length = 0.0;  // m, allowed ground-path growth
};

inline AdjustmentBudget adjustment_budget(const VehicleParams& params,
                                          const TourMargins& margins) {
  return {params.air_speed_h * margins.slack_air,
          params.ground_speed * margins.slack_ground};
}

// Distance-budget admissibility of a modified row: both endpoint moves fit
// the combined radius, and the realized ground path between the new endpoints
// does not outgrow the planned one by more than the slack length.
inline bool certificate_check(const Environment& planned_env,
                              const Environment& actual_env,
                              const TourRow& original,
                              const TourRow& modified,
                              const AdjustmentBudget& budget) {
  const double moved = horizontal_distance(original.release, modified.release) +
                       horizontal_distance(original.collect, modified.collect);
  if (moved > budget.combined_radius + 1e-9) return false;
  const double planned_len =
      planned_env.ground_path_length(original.release, original.collect);
  double actual_len;
  try {
    actual_len =
        actual_env.ground_path_length(modified.release, modified.collect);
  } catch (const DisconnectedGroundError&) {
    return false;
  }
  return actual_len <= planned_len + budget.ground_slack_length + 1e-9;
}

// Time-condition admissibility of a whole modified mission, checked directly
// from realized travel times.  Throws StructureMismatchError when the two
// plans do not share team/row/visit structure (the guarantee only covers
// moved endpoints, never changed visits).  air_time_factor scales realized
// flight times to model uniformly slower air travel.
inline ValidationReport check_modified_plan(const Environment& planned_env,
                                            const Environment& actual_env,
                                            const VehicleParams& params,
                                            const MissionPlan& original,
                                            const MissionPlan& modified,
                                            double air_time_factor = 1.0) {
  if (original.teams.size() != modified.teams.size()) {
    throw StructureMismatchError("plans have different team counts");
  }
  ValidationReport report;
  for (std::size_t m = 0; m < original.teams.size(); ++m) {
    const auto& orig_rows = original.teams[m].rows;
    const auto& mod_rows = modified.teams[m].rows;
    if (orig_rows.size() != mod_rows.size()) {
      throw StructureMismatchError("team #" + std::to_string(m) +
                                   " has a different row count");
    }
    for (std::size_t r = 0; r < orig_rows.size(); ++r) {
      const TourRow& orig = orig_rows[r];
      const TourRow& mod = mod_rows[r];
      if (orig.visits.size() != mod.visits.size()) {
        throw StructureMismatchError("row visit counts differ");
      }
      for (std::size_t v = 0; v < orig.visits.size(); ++v) {
        if (!same_point(orig.visits[v], mod.visits[v], 1e-9)) {
          throw StructureMismatchError("row visit points differ");
        }
      }
      if (orig.trivial()) continue;
      const TourMargins margins = tour_robustness(planned_env, params, orig);
      const double planned_air = tour_time(params, orig);
      const double realized_air = air_time_factor * tour_time(params, mod);
      report.add({Constraint::RobustAir, static_cast<int>(m),
                  static_cast<int>(r), -1, realized_air,
                  planned_air + margins.slack_air,
                  realized_air <= planned_air + margins.slack_air + kTimeEps,
                  "realized flight vs planned + air slack"});
      const double planned_ground =
          ugv_time(planned_env, params, orig.release, orig.collect);
      double realized_ground;
      bool reachable = true;
      try {
        realized_ground =
            ugv_time(actual_env, params, mod.release, mod.collect);
      } catch (const DisconnectedGroundError&) {
        realized_ground = std::numeric_limits<double>::infinity();
        reachable = false;
      }
      report.add({Constraint::RobustGround, static_cast<int>(m),
                  static_cast<int>(r), -1, realized_ground,
                  planned_ground + margins.slack_ground,
                  reachable && realized_ground <= planned_ground +
                                                      margins.slack_ground +
                                                      kTimeEps,
                  "realized transfer vs planned + ground slack"});
    }
  }
  return report;
}

}  // namespace airferry
