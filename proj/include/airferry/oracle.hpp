#pragma once
// Exhaustive reference computations for desk-scale instances.  These exist to
// check the heuristic pipeline, so they trade scale for certainty and refuse
// inputs beyond their caps (TooLargeError).
//
// exact_plan searches, for a single team, every visit permutation, every
// contiguous split into tours, and every release/collect assignment from the
// finite candidate class (ground projections of the points plus the two team
// anchors).  The assignment search per (permutation, split) is an exact sweep
// over (release, collect) pair states, which enumerates the same space as
// trying every combination.

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "airferry/collect_select.hpp"
#include "airferry/errors.hpp"
#include "airferry/planner.hpp"
#include "airferry/sequencing.hpp"

namespace airferry {

// Candidate release/collect locations: point projections (in point order),
// then the team anchors; duplicates dropped.
inline std::vector<Point3> make_candidate_class(
    const Environment& env, const Team& team,
    const std::vector<Point3>& points) {
  std::vector<Point3> cands;
  auto push_unique = [&](const Point3& q) {
    for (const auto& c : cands) {
      if (same_point(c, q, 1e-9)) return;
    }
    cands.push_back(q);
  };
  for (const auto& p : points) push_unique(project_to_ground(env, p));
  push_unique(Point3{team.start.x, team.start.y, 0.0});
  push_unique(Point3{team.finish.x, team.finish.y, 0.0});
  return cands;
}

struct OracleResult {
  MissionPlan plan;
  double objective = 0.0;
};

inline OracleResult exact_plan(const Environment& env,
                               const VehicleParams& params, const Team& team,
                               const std::vector<Point3>& points) {
  const std::size_t n = points.size();
  if (n == 0 || n > 5) {
    throw TooLargeError("exact_plan handles 1..5 points");
  }
  validate_params(params);
  const std::vector<Point3> cands = make_candidate_class(env, team, points);
  const std::size_t nc = cands.size();
  const double tl = 2.0 * params.takeoff_landing_time();

  // Ground travel times between all candidates and the anchors.
  std::vector<std::vector<double>> gc(nc, std::vector<double>(nc, 0.0));
  for (std::size_t a = 0; a < nc; ++a) {
    for (std::size_t b = a + 1; b < nc; ++b) {
      gc[a][b] = gc[b][a] = ugv_time(env, params, cands[a], cands[b]);
    }
  }
  std::vector<double> g_start(nc), g_finish(nc);
  for (std::size_t a = 0; a < nc; ++a) {
    g_start[a] = ugv_time(env, params, team.start, cands[a]);
    g_finish[a] = ugv_time(env, params, cands[a], team.finish);
  }

  double best_total = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::size_t, std::size_t>> best_rc;
  std::vector<std::vector<Point3>> best_blocks;

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> entry(nc), exit_leg(nc);
  do {
    for (std::size_t mask = 0; mask < (1u << (n - 1)); ++mask) {
      // Contiguous blocks of the permutation; bit b set splits after slot b.
      std::vector<std::pair<std::size_t, std::size_t>> blocks;
      std::size_t begin = 0;
      for (std::size_t b = 0; b < n; ++b) {
        if (b + 1 == n || (mask >> b) & 1u) {
          blocks.emplace_back(begin, b);
          begin = b + 1;
        }
      }
      const std::size_t nb = blocks.size();
      // Pair-state sweep: value of the best schedule through block k that
      // launches at r and lands at c.
      std::vector<std::vector<double>> val(
          nb, std::vector<double>(nc * nc,
                                  std::numeric_limits<double>::infinity()));
      std::vector<std::vector<int>> from(nb, std::vector<int>(nc * nc, -1));
      std::vector<std::vector<double>> busy(nb),
          drain(nb);  // per (r,c): tour span and recharge base
      bool dead = false;
      for (std::size_t k = 0; k < nb && !dead; ++k) {
        const auto [lo, hi] = blocks[k];
        double inner = 0.0;
        for (std::size_t q = lo; q + 1 <= hi; ++q) {
          inner += uav_leg_time(params,
                                points[static_cast<std::size_t>(perm[q])],
                                points[static_cast<std::size_t>(perm[q + 1])]);
        }
        const Point3& first = points[static_cast<std::size_t>(perm[lo])];
        const Point3& last = points[static_cast<std::size_t>(perm[hi])];
        for (std::size_t a = 0; a < nc; ++a) {
          entry[a] = uav_leg_time(params, lifted(params, cands[a]), first);
          exit_leg[a] = uav_leg_time(params, last, lifted(params, cands[a]));
        }
        busy[k].assign(nc * nc, std::numeric_limits<double>::infinity());
        drain[k].assign(nc * nc, 0.0);
        bool any = false;
        for (std::size_t r = 0; r < nc; ++r) {
          for (std::size_t c = 0; c < nc; ++c) {
            const double flight = tl + entry[r] + inner + exit_leg[c];
            if (flight + params.margin_air >
                params.max_flight_time + kTimeEps) {
              continue;
            }
            if (gc[r][c] + params.margin_ground >
                params.max_flight_time + kTimeEps) {
              continue;
            }
            const double span = std::max(flight, gc[r][c]);
            busy[k][r * nc + c] = span;
            drain[k][r * nc + c] = params.recharge_ratio * span;
            any = true;
            if (k == 0) {
              val[0][r * nc + c] = g_start[r] + span;
            }
          }
        }
        if (!any) dead = true;
        if (k > 0) {
          for (std::size_t r = 0; r < nc; ++r) {
            for (std::size_t c = 0; c < nc; ++c) {
              if (!std::isfinite(busy[k][r * nc + c])) continue;
              double best_in = std::numeric_limits<double>::infinity();
              int arg = -1;
              for (std::size_t pr = 0; pr < nc; ++pr) {
                for (std::size_t pc = 0; pc < nc; ++pc) {
                  const double pv = val[k - 1][pr * nc + pc];
                  if (!std::isfinite(pv)) continue;
                  const double link =
                      std::max(gc[pc][r], drain[k - 1][pr * nc + pc]);
                  if (pv + link < best_in) {
                    best_in = pv + link;
                    arg = static_cast<int>(pr * nc + pc);
                  }
                }
              }
              if (arg >= 0) {
                val[k][r * nc + c] = best_in + busy[k][r * nc + c];
                from[k][r * nc + c] = arg;
              }
            }
          }
        }
      }
      if (dead) continue;
      double total = std::numeric_limits<double>::infinity();
      int end_state = -1;
      for (std::size_t r = 0; r < nc; ++r) {
        for (std::size_t c = 0; c < nc; ++c) {
          const double v = val[nb - 1][r * nc + c];
          if (!std::isfinite(v)) continue;
          if (v + g_finish[c] < total) {
            total = v + g_finish[c];
            end_state = static_cast<int>(r * nc + c);
          }
        }
      }
      if (total < best_total) {
        best_total = total;
        best_rc.assign(nb, {0, 0});
        int state = end_state;
        for (std::size_t k = nb; k-- > 0;) {
          best_rc[k] = {static_cast<std::size_t>(state) / nc,
                        static_cast<std::size_t>(state) % nc};
          state = from[k][static_cast<std::size_t>(state)];
        }
        best_blocks.assign(nb, {});
        for (std::size_t k = 0; k < nb; ++k) {
          for (std::size_t q = blocks[k].first; q <= blocks[k].second; ++q) {
            best_blocks[k].push_back(points[static_cast<std::size_t>(perm[q])]);
          }
        }
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (!std::isfinite(best_total)) {
    throw InfeasibleInstanceError(
        "no feasible schedule within the candidate class");
  }
  OracleResult result;
  result.objective = best_total;
  TeamPlan tp;
  tp.team = team;
  for (std::size_t k = 0; k < best_blocks.size(); ++k) {
    tp.rows.push_back(TourRow{cands[best_rc[k].first], best_blocks[k],
                              cands[best_rc[k].second]});
  }
  result.plan.teams.push_back(std::move(tp));
  return result;
}

// Optimal fixed-endpoint visit order by interior permutation search.  The
// endpoints follow the same nearest-anchor rule the heuristic uses.
inline std::pair<std::vector<int>, double> brute_force_path(
    const Environment& env, const std::vector<Point3>& points,
    const Team& team) {
  const std::size_t n = points.size();
  if (n == 0 || n > 9) {
    throw TooLargeError("brute_force_path handles 1..9 points");
  }
  if (n == 1) return {{0}, 0.0};
  const auto [first, last] = pick_endpoints(env, points, team);
  std::vector<int> interior;
  for (std::size_t i = 0; i < n; ++i) {
    if (static_cast<int>(i) != first && static_cast<int>(i) != last) {
      interior.push_back(static_cast<int>(i));
    }
  }
  std::sort(interior.begin(), interior.end());
  std::vector<int> best_order;
  double best_len = std::numeric_limits<double>::infinity();
  std::vector<int> order(n);
  do {
    order.clear();
    order.push_back(first);
    order.insert(order.end(), interior.begin(), interior.end());
    order.push_back(last);
    const double len = path_cruise_length(points, order);
    if (len < best_len) {
      best_len = len;
      best_order = order;
    }
  } while (std::next_permutation(interior.begin(), interior.end()));
  return {best_order, best_len};
}

// Full landing-choice enumeration over a layered candidate graph.  Sums run
// left to right exactly like the forward sweep, so on equal inputs the two
// totals match bit for bit.
inline std::pair<std::vector<int>, double> enumerate_collect_choices(
    const CollectGraph& g) {
  if (g.tours.empty()) return {{}, g.direct_edge};
  double combos = 1.0;
  for (const auto& c : g.candidates) {
    combos *= static_cast<double>(c.size());
    if (combos > 1e4) {
      throw TooLargeError("landing-choice product exceeds 10^4");
    }
  }
  const std::size_t nt = g.tours.size();
  std::vector<int> idx(nt, 0), best_idx;
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    double t = g.start_edge;
    for (std::size_t i = 0; i < nt; ++i) {
      const std::size_t c = static_cast<std::size_t>(idx[i]);
      t = (t + g.in_weight[i][c]) + g.out_weight[i][c];
    }
    if (t < best) {
      best = t;
      best_idx = idx;
    }
    std::size_t pos = nt;
    while (pos-- > 0) {
      if (static_cast<std::size_t>(++idx[pos]) < g.candidates[pos].size()) {
        break;
      }
      idx[pos] = 0;
      if (pos == 0) return {best_idx, best};
    }
  }
}

}  // namespace airferry
