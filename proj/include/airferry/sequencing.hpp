#pragma once
// Visit ordering for one team: an open path over the team's points with the
// first point pinned to the one nearest the start anchor and the last point
// pinned to the one nearest the finish anchor.
//
// Construction: spanning tree, parity repair with the two endpoints forced
// odd (greedy matching), Euler walk, shortcut to a simple path, then
// endpoint-pinned 2-opt.  Everything is deterministic: all ties break toward
// the lower index.

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>
#include <vector>

#include "airferry/geometry.hpp"

namespace airferry {

// 2-opt runs full improvement sweeps until quiescent, but never more than
// this many, to keep planning time bounded on large teams.
inline constexpr int kTwoOptSweepCap = 12;

inline double path_cruise_length(const std::vector<Point3>& pts,
                                 const std::vector<int>& order) {
  double len = 0.0;
  for (std::size_t i = 1; i < order.size(); ++i) {
    len += distance3(pts[static_cast<std::size_t>(order[i - 1])],
                     pts[static_cast<std::size_t>(order[i])]);
  }
  return len;
}

// Indices of the points nearest the two anchors.  When the same point wins
// both, it keeps the start role and the runner-up for the finish anchor takes
// the last slot.
inline std::pair<int, int> pick_endpoints(const Environment& env,
                                          const std::vector<Point3>& pts,
                                          const Team& team) {
  auto nearest = [&](const Point3& anchor, int exclude) {
    double best = std::numeric_limits<double>::infinity();
    int arg = -1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (static_cast<int>(i) == exclude) continue;
      const double d = anchor_distance(env, anchor, pts[i]);
      if (d < best) {
        best = d;
        arg = static_cast<int>(i);
      }
    }
    return arg;
  };
  const int first = nearest(team.start, -1);
  int last = nearest(team.finish, -1);
  if (last == first && pts.size() >= 2) last = nearest(team.finish, first);
  return {first, last};
}

namespace detail {

// Open path through all points with pinned endpoints: spanning tree, greedy
// parity repair (endpoints forced odd), Euler walk from s, shortcut keeping
// first occurrences with t held for the end.
inline std::vector<int> tree_walk_path(const std::vector<Point3>& pts, int s,
                                       int t) {
  const int n = static_cast<int>(pts.size());
  auto w = [&](int i, int j) {
    return distance3(pts[static_cast<std::size_t>(i)],
                     pts[static_cast<std::size_t>(j)]);
  };

  // Prim spanning tree.
  std::vector<int> tree_parent(static_cast<std::size_t>(n), -1);
  std::vector<double> key(static_cast<std::size_t>(n),
                          std::numeric_limits<double>::infinity());
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  key[static_cast<std::size_t>(s)] = 0.0;
  for (int it = 0; it < n; ++it) {
    int u = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (!in_tree[static_cast<std::size_t>(i)] &&
          key[static_cast<std::size_t>(i)] < best) {
        best = key[static_cast<std::size_t>(i)];
        u = i;
      }
    }
    in_tree[static_cast<std::size_t>(u)] = 1;
    for (int v = 0; v < n; ++v) {
      if (!in_tree[static_cast<std::size_t>(v)] &&
          w(u, v) < key[static_cast<std::size_t>(v)]) {
        key[static_cast<std::size_t>(v)] = w(u, v);
        tree_parent[static_cast<std::size_t>(v)] = u;
      }
    }
  }
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const int u = tree_parent[static_cast<std::size_t>(v)];
    if (u >= 0) {
      adj[static_cast<std::size_t>(u)].push_back(v);
      adj[static_cast<std::size_t>(v)].push_back(u);
    }
  }

  // Vertices whose parity is wrong for an s->t Euler walk: interior vertices
  // must be even, the endpoints odd.
  std::vector<int> wrong;
  for (int v = 0; v < n; ++v) {
    const bool is_end = (v == s || v == t);
    const bool odd = adj[static_cast<std::size_t>(v)].size() % 2 == 1;
    if (odd != is_end) wrong.push_back(v);
  }
  std::vector<std::tuple<double, int, int>> pairs;
  for (std::size_t i = 0; i < wrong.size(); ++i) {
    for (std::size_t j = i + 1; j < wrong.size(); ++j) {
      pairs.emplace_back(w(wrong[i], wrong[j]), wrong[i], wrong[j]);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<char> matched(static_cast<std::size_t>(n), 0);
  for (const auto& [d, i, j] : pairs) {
    (void)d;
    if (matched[static_cast<std::size_t>(i)] ||
        matched[static_cast<std::size_t>(j)]) {
      continue;
    }
    matched[static_cast<std::size_t>(i)] = 1;
    matched[static_cast<std::size_t>(j)] = 1;
    adj[static_cast<std::size_t>(i)].push_back(j);
    adj[static_cast<std::size_t>(j)].push_back(i);
  }

  // Hierholzer Euler walk s -> t over the multigraph.
  std::vector<std::vector<int>> work = adj;
  std::vector<int> stack{s}, walk;
  while (!stack.empty()) {
    const int v = stack.back();
    auto& nb = work[static_cast<std::size_t>(v)];
    if (nb.empty()) {
      walk.push_back(v);
      stack.pop_back();
    } else {
      const int u = nb.back();
      nb.pop_back();
      auto& back = work[static_cast<std::size_t>(u)];
      for (std::size_t k = 0; k < back.size(); ++k) {
        if (back[k] == v) {
          back.erase(back.begin() + static_cast<std::ptrdiff_t>(k));
          break;
        }
      }
      stack.push_back(u);
    }
  }
  std::reverse(walk.begin(), walk.end());

  std::vector<int> path;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (const int v : walk) {
    if (v == t || used[static_cast<std::size_t>(v)]) continue;
    used[static_cast<std::size_t>(v)] = 1;
    path.push_back(v);
  }
  path.push_back(t);
  return path;
}

}  // namespace detail

inline std::vector<int> initial_path(const std::vector<Point3>& pts, int first,
                                     int last) {
  const int n = static_cast<int>(pts.size());
  if (n == 1) return {first};
  if (n == 2) return {first, last};
  return detail::tree_walk_path(pts, first, last);
}

// Endpoint-pinned 2-opt: reverse interior spans while that shortens the
// path.  Only improving moves are taken, so the length never increases.
// Returns the number of sweeps run.
inline int two_opt(const std::vector<Point3>& pts, std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  if (n < 4) return 0;
  auto d = [&](int a, int b) {
    return distance3(pts[static_cast<std::size_t>(order[static_cast<std::size_t>(a)])],
                     pts[static_cast<std::size_t>(order[static_cast<std::size_t>(b)])]);
  };
  int sweeps = 0;
  for (; sweeps < kTwoOptSweepCap; ++sweeps) {
    bool improved = false;
    for (int i = 1; i + 1 < n; ++i) {
      for (int j = i + 1; j + 1 <= n - 1; ++j) {
        const double delta =
            d(i - 1, j) + d(i, j + 1) - d(i - 1, i) - d(j, j + 1);
        if (delta < -1e-9) {
          std::reverse(order.begin() + i, order.begin() + j + 1);
          improved = true;
        }
      }
    }
    if (!improved) break;
  }
  return sweeps;
}

// Visit order for one team's points (indices into pts).
inline std::vector<int> plan_visit_sequence(const Environment& env,
                                            const std::vector<Point3>& pts,
                                            const Team& team) {
  if (pts.empty()) return {};
  const auto [first, last] = pick_endpoints(env, pts, team);
  std::vector<int> order = initial_path(pts, first, last);
  two_opt(pts, order);
  return order;
}

}  // namespace airferry
