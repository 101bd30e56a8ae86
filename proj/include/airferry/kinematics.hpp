#pragma once
// Vehicle motion model and tour timing.
//
// The aerial vehicle takes off and lands vertically at a fixed climb speed
// and cruises with independent horizontal/vertical axes, so a cruise leg
// costs max(horizontal distance / horizontal speed, altitude change /
// vertical speed).  The ground vehicle drives exact shortest ground paths at
// constant speed.  A tour is: vertical takeoff at the release point, cruise
// through the visit points, vertical landing at the collect point; the
// ground vehicle independently drives release -> collect and may have to
// recharge the aerial vehicle afterwards.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "airferry/geometry.hpp"

namespace airferry {

// Feasibility comparisons tolerate this much slack (seconds).
inline constexpr double kTimeEps = 1e-6;

struct VehicleParams {
  double ground_speed = 2.5;       // m/s
  double air_speed_h = 10.0;       // m/s, horizontal cruise
  double air_speed_v = 2.0;        // m/s, climb/descent
  double max_flight_time = 600.0;  // s, battery budget per tour
  double margin_air = 0.0;         // s, robustness margin on tour time
  double margin_ground = 0.0;      // s, robustness margin on ground transfer
  double recharge_ratio = 1.0;     // recharge duration per unit of drain
  double cruise_altitude = 100.0;  // m, flight floor (obstacle tops below)

  double takeoff_landing_time() const { return cruise_altitude / air_speed_v; }
};

inline void validate_params(const VehicleParams& p) {
  if (!(p.ground_speed > 0.0) || !(p.air_speed_h > 0.0) ||
      !(p.air_speed_v > 0.0)) {
    throw std::invalid_argument("vehicle speeds must be positive");
  }
  if (!(p.max_flight_time > 0.0)) {
    throw std::invalid_argument("flight budget must be positive");
  }
  if (p.margin_air < 0.0 || p.margin_ground < 0.0) {
    throw std::invalid_argument("robustness margins must be non-negative");
  }
  if (p.recharge_ratio < 0.0) {
    throw std::invalid_argument("recharge ratio must be non-negative");
  }
  if (p.cruise_altitude < 0.0) {
    throw std::invalid_argument("cruise altitude must be non-negative");
  }
}

// Cruise leg duration with independent axes.
inline double uav_leg_time(const VehicleParams& p, const Point3& a,
                           const Point3& b) {
  return std::max(horizontal_distance(a, b) / p.air_speed_h,
                  std::abs(b.z - a.z) / p.air_speed_v);
}

inline Point3 lifted(const VehicleParams& p, const Point3& ground) {
  return Point3{ground.x, ground.y, p.cruise_altitude};
}

// One aerial tour: launch at release, visit the listed points, land at
// collect.  Empty visits mark a trivial (no-flight) row; trivial rows keep
// release == collect.
struct TourRow {
  Point3 release;
  std::vector<Point3> visits;
  Point3 collect;

  bool trivial() const { return visits.empty(); }
};

// Flight duration of a tour: two vertical hops plus the cruise legs through
// the visit chain between the lifted release and lifted collect points.
inline double tour_time(const VehicleParams& p, const TourRow& row) {
  if (row.trivial()) return 0.0;
  double t = 2.0 * p.takeoff_landing_time();
  Point3 cur = lifted(p, row.release);
  for (const auto& v : row.visits) {
    t += uav_leg_time(p, cur, v);
    cur = v;
  }
  t += uav_leg_time(p, cur, lifted(p, row.collect));
  return t;
}

inline double ugv_time(const Environment& env, const VehicleParams& p,
                       const Point3& a, const Point3& b) {
  return env.ground_path_length(a, b) / p.ground_speed;
}

// Recovery time after a tour, proportional to the slower of the two vehicles
// over that tour (flight drains the battery; waiting drains it too).  A zero
// ratio models instant battery swaps.
inline double recharge_time(const Environment& env, const VehicleParams& p,
                            const TourRow& row) {
  if (row.trivial()) return 0.0;
  return p.recharge_ratio *
         std::max(tour_time(p, row), ugv_time(env, p, row.release, row.collect));
}

}  // namespace airferry
