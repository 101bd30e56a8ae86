#pragma once
// Independent shortest-ground-path reference for tests: 8-connected Dijkstra
// on a conservative occupancy grid, followed by optimal line-of-sight
// smoothing over the cell polyline.  Cells are open only when no obstacle
// footprint overlaps their square, and diagonal moves require both axial
// neighbours open, so every step of a grid path is provably clear; the
// result is a true upper bound on the exact shortest path, tight up to the
// grid resolution.  Shares no code path with the visibility-graph
// implementation beyond the segment-clearance predicate.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "airferry/geometry.hpp"

namespace airferry::testsupport {

inline double grid_path_length(const Environment& env, const Point3& a,
                               const Point3& b, double res) {
  const Point3& bounds = env.bounds();
  const int nx = static_cast<int>(std::floor(bounds.x / res)) + 1;
  const int ny = static_cast<int>(std::floor(bounds.y / res)) + 1;
  auto cell_pos = [&](int i, int j) {
    return Point3{std::min(i * res, bounds.x), std::min(j * res, bounds.y),
                  0.0};
  };

  // Conservative occupancy: closed when any footprint overlaps the cell's
  // square with positive area.
  std::vector<char> open(static_cast<std::size_t>(nx) * ny, 0);
  const double h = res / 2.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Point3 c = cell_pos(i, j);
      bool free_cell = env.is_feasible(c);
      for (const auto& box : env.obstacles()) {
        if (!free_cell) break;
        if (box.lo.x < c.x + h && box.hi.x > c.x - h && box.lo.y < c.y + h &&
            box.hi.y > c.y - h) {
          free_cell = false;
        }
      }
      open[static_cast<std::size_t>(j) * nx + i] = free_cell ? 1 : 0;
    }
  }
  auto is_open = [&](int i, int j) {
    return i >= 0 && i < nx && j >= 0 && j < ny &&
           open[static_cast<std::size_t>(j) * nx + i] != 0;
  };

  // Nearest open cell with a clear connector segment from the true endpoint.
  auto snap = [&](const Point3& p) {
    const int ci = std::clamp(static_cast<int>(std::round(p.x / res)), 0, nx - 1);
    const int cj = std::clamp(static_cast<int>(std::round(p.y / res)), 0, ny - 1);
    int best_i = -1, best_j = -1;
    double best_d = std::numeric_limits<double>::infinity();
    const int scan = std::max(nx, ny);
    for (int radius = 0; radius <= scan; ++radius) {
      for (int dj = -radius; dj <= radius; ++dj) {
        for (int di = -radius; di <= radius; ++di) {
          if (std::max(std::abs(di), std::abs(dj)) != radius) continue;
          const int i = ci + di, j = cj + dj;
          if (!is_open(i, j)) continue;
          if (!env.ground_segment_clear(p, cell_pos(i, j))) continue;
          const double d = horizontal_distance(p, cell_pos(i, j));
          if (d < best_d) {
            best_d = d;
            best_i = i;
            best_j = j;
          }
        }
      }
      if (best_i >= 0) break;
    }
    return std::pair<int, int>{best_i, best_j};
  };
  const Point3 ga{a.x, a.y, 0.0};
  const Point3 gb{b.x, b.y, 0.0};
  const auto sa = snap(ga);
  const auto sb = snap(gb);
  if (sa.first < 0 || sb.first < 0) {
    return std::numeric_limits<double>::infinity();
  }

  const std::size_t total = static_cast<std::size_t>(nx) * ny;
  std::vector<double> dist(total, std::numeric_limits<double>::infinity());
  std::vector<int> parent(total, -1);
  auto id = [&](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };
  using QE = std::pair<double, std::size_t>;
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
  dist[id(sa.first, sa.second)] = 0.0;
  pq.emplace(0.0, id(sa.first, sa.second));
  const std::size_t target = id(sb.first, sb.second);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    if (u == target) break;
    const int i = static_cast<int>(u) % nx;
    const int j = static_cast<int>(u) / nx;
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        if (di == 0 && dj == 0) continue;
        if (!is_open(i + di, j + dj)) continue;
        // Diagonal moves need both axial neighbours free so the segment
        // between centres stays inside open cells.
        if (di != 0 && dj != 0 &&
            (!is_open(i + di, j) || !is_open(i, j + dj))) {
          continue;
        }
        const std::size_t v = id(i + di, j + dj);
        const double w =
            res * std::sqrt(static_cast<double>(di * di + dj * dj));
        if (dist[u] + w < dist[v]) {
          dist[v] = dist[u] + w;
          parent[v] = static_cast<int>(u);
          pq.emplace(dist[v], v);
        }
      }
    }
  }
  if (!std::isfinite(dist[target])) {
    return std::numeric_limits<double>::infinity();
  }

  // Cell polyline with the true endpoints attached, then the shortest chain
  // over its vertices using only clear line-of-sight jumps.  Every
  // consecutive pair is clear by construction, so the chain always exists.
  std::vector<Point3> poly{ga};
  {
    std::vector<Point3> cells;
    for (int v = static_cast<int>(target); v != -1; v = parent[v]) {
      cells.push_back(cell_pos(v % nx, v / nx));
    }
    poly.insert(poly.end(), cells.rbegin(), cells.rend());
  }
  poly.push_back(gb);

  const std::size_t k = poly.size();
  std::vector<double> best(k, std::numeric_limits<double>::infinity());
  best[0] = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (!std::isfinite(best[i])) continue;
    for (std::size_t j = i + 1; j < k; ++j) {
      const double hop = best[i] + horizontal_distance(poly[i], poly[j]);
      if (hop < best[j] &&
          (j == i + 1 || env.ground_segment_clear(poly[i], poly[j]))) {
        best[j] = hop;
      }
    }
  }
  return best[k - 1];
}

}  // namespace airferry::testsupport
