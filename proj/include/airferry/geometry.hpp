#pragma once
// World geometry for ground/air mission planning.
//
// The workspace is a closed box [0,x]x[0,y]x[0,z] with axis-aligned box
// obstacles seated on the ground.  Obstacle tops stay at or below the cruise
// altitude, so flight legs at or above that altitude are never blocked; the
// ground vehicle has to route around obstacle footprints.  A solid blocks
// every point strictly inside its footprint from its base up to (but not
// including) its top face: side walls, footprint boundary, and the top face
// itself stay feasible, so grazing contact never blocks.
//
// Shortest ground paths are exact Euclidean shortest paths around the
// footprints, computed on a visibility graph over footprint corners plus the
// edge crossings of overlapping footprints (built once per environment, then
// shared by queries).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "airferry/errors.hpp"

namespace airferry {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline bool operator==(const Point3& a, const Point3& b) {
  return a.x == b.x && a.y == b.y && a.z == b.z;
}
inline bool operator!=(const Point3& a, const Point3& b) { return !(a == b); }

inline double horizontal_distance(const Point3& a, const Point3& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

inline double distance3(const Point3& a, const Point3& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double dz = b.z - a.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline bool same_point(const Point3& a, const Point3& b, double eps = 1e-9) {
  return std::abs(a.x - b.x) <= eps && std::abs(a.y - b.y) <= eps &&
         std::abs(a.z - b.z) <= eps;
}

struct BoxObstacle {
  Point3 lo;
  Point3 hi;

  bool valid() const {
    return lo.x <= hi.x && lo.y <= hi.y && lo.z <= hi.z;
  }
  // Whether the solid blocks point p: strictly inside the footprint and
  // below the top face.  The base plane is blocked too (nothing can sit
  // under a grounded solid), while side walls and the top remain feasible.
  bool blocks(const Point3& p) const {
    return p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y &&
           p.z >= lo.z && p.z < hi.z;
  }
  // Strict interior of the ground footprint.
  bool footprint_contains_open(double x, double y) const {
    return x > lo.x && x < hi.x && y > lo.y && y < hi.y;
  }
  bool footprint_contains_closed(double x, double y) const {
    return x >= lo.x && x <= hi.x && y >= lo.y && y <= hi.y;
  }
  double min_footprint_edge() const {
    return std::min(hi.x - lo.x, hi.y - lo.y);
  }
};

namespace detail {

// Parameter interval where segment coordinate a+t*(b-a) lies strictly inside
// (lo,hi).  Returns false when it never does.
inline bool open_slab_interval(double a, double b, double lo, double hi,
                               double& t0, double& t1) {
  const double d = b - a;
  if (std::abs(d) < 1e-15) {
    if (a <= lo || a >= hi) return false;
    t0 = -std::numeric_limits<double>::infinity();
    t1 = std::numeric_limits<double>::infinity();
    return true;
  }
  double u = (lo - a) / d;
  double v = (hi - a) / d;
  if (u > v) std::swap(u, v);
  t0 = u;
  t1 = v;
  return true;
}

// True when segment a->b passes through the open footprint interior of box.
// Grazing a face or corner does not count as crossing.
inline bool segment_crosses_footprint(const Point3& a, const Point3& b,
                                      const BoxObstacle& box) {
  double t0 = 0.0, t1 = 1.0, u0 = 0.0, u1 = 0.0;
  if (!open_slab_interval(a.x, b.x, box.lo.x, box.hi.x, u0, u1)) return false;
  t0 = std::max(t0, u0);
  t1 = std::min(t1, u1);
  if (!open_slab_interval(a.y, b.y, box.lo.y, box.hi.y, u0, u1)) return false;
  t0 = std::max(t0, u0);
  t1 = std::min(t1, u1);
  return t1 - t0 > 1e-12;
}

// 3D variant against the open solid interior.
inline bool segment_crosses_box(const Point3& a, const Point3& b,
                                const BoxObstacle& box) {
  double t0 = 0.0, t1 = 1.0, u0 = 0.0, u1 = 0.0;
  if (!open_slab_interval(a.x, b.x, box.lo.x, box.hi.x, u0, u1)) return false;
  t0 = std::max(t0, u0);
  t1 = std::min(t1, u1);
  if (!open_slab_interval(a.y, b.y, box.lo.y, box.hi.y, u0, u1)) return false;
  t0 = std::max(t0, u0);
  t1 = std::min(t1, u1);
  if (!open_slab_interval(a.z, b.z, box.lo.z, box.hi.z, u0, u1)) return false;
  t0 = std::max(t0, u0);
  t1 = std::min(t1, u1);
  return t1 - t0 > 1e-12;
}

struct Rect2 {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  bool empty() const { return x0 > x1 || y0 > y1; }
};

}  // namespace detail

struct GroundPath {
  double length = 0.0;
  std::vector<Point3> waypoints;
};

class Environment {
 public:
  Environment(Point3 bounds, double cruise_altitude,
              std::vector<BoxObstacle> obstacles)
      : bounds_(bounds),
        cruise_altitude_(cruise_altitude),
        obstacles_(std::move(obstacles)) {
    validate();
    build_corner_graph();
  }

  const Point3& bounds() const { return bounds_; }
  double cruise_altitude() const { return cruise_altitude_; }
  const std::vector<BoxObstacle>& obstacles() const { return obstacles_; }

  bool in_bounds(const Point3& p) const {
    return p.x >= 0.0 && p.x <= bounds_.x && p.y >= 0.0 && p.y <= bounds_.y &&
           p.z >= 0.0 && p.z <= bounds_.z;
  }

  // Inside the workspace and not blocked by any solid.  Footprint boundary,
  // side walls, and top faces are feasible; the blocked set is the open
  // footprint column below each top face.
  bool is_feasible(const Point3& p) const {
    if (!in_bounds(p)) return false;
    for (const auto& box : obstacles_) {
      if (box.blocks(p)) return false;
    }
    return true;
  }

  bool ground_segment_clear(const Point3& a, const Point3& b) const {
    for (const auto& box : obstacles_) {
      if (detail::segment_crosses_footprint(a, b, box)) return false;
    }
    return true;
  }

  bool air_segment_clear(const Point3& a, const Point3& b) const {
    for (const auto& box : obstacles_) {
      if (detail::segment_crosses_box(a, b, box)) return false;
    }
    return true;
  }

  // Exact Euclidean shortest ground path between two feasible ground points.
  // Throws DisconnectedGroundError when no route exists.
  GroundPath shortest_ground_path(const Point3& a_in, const Point3& b_in) const {
    const Point3 a{a_in.x, a_in.y, 0.0};
    const Point3 b{b_in.x, b_in.y, 0.0};
    if (!is_feasible(a) || !is_feasible(b)) {
      throw DisconnectedGroundError("ground path endpoint is not feasible");
    }
    if (ground_segment_clear(a, b)) {
      return GroundPath{horizontal_distance(a, b), {a, b}};
    }

    const std::size_t n = corners_.size();
    const std::size_t ia = n, ib = n + 1;
    std::vector<double> dist(n + 2, std::numeric_limits<double>::infinity());
    std::vector<int> parent(n + 2, -1);
    auto pos = [&](std::size_t i) -> const Point3& {
      if (i == ia) return a;
      if (i == ib) return b;
      return corners_[i];
    };

    // Visibility from the two query points to the corner set.
    std::vector<char> vis_a(n, 0), vis_b(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      vis_a[i] = ground_segment_clear(a, corners_[i]) ? 1 : 0;
      vis_b[i] = ground_segment_clear(b, corners_[i]) ? 1 : 0;
    }

    using QE = std::pair<double, std::size_t>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    dist[ia] = 0.0;
    pq.emplace(0.0, ia);
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      if (u == ib) break;
      auto relax = [&](std::size_t v, double w) {
        if (dist[u] + w < dist[v]) {
          dist[v] = dist[u] + w;
          parent[v] = static_cast<int>(u);
          pq.emplace(dist[v], v);
        }
      };
      if (u == ia) {
        for (std::size_t v = 0; v < n; ++v) {
          if (vis_a[v]) relax(v, horizontal_distance(a, corners_[v]));
        }
      } else {
        for (const auto& [v, w] : corner_adj_[u]) relax(v, w);
        if (vis_b[u]) relax(ib, horizontal_distance(corners_[u], b));
      }
    }
    if (!std::isfinite(dist[ib])) {
      throw DisconnectedGroundError("no ground path between feasible points");
    }
    GroundPath path;
    path.length = dist[ib];
    std::vector<Point3> rev;
    for (int v = static_cast<int>(ib); v != -1; v = parent[v]) {
      rev.push_back(pos(static_cast<std::size_t>(v)));
    }
    path.waypoints.assign(rev.rbegin(), rev.rend());
    return path;
  }

  double ground_path_length(const Point3& a, const Point3& b) const {
    const Point3 ga{a.x, a.y, 0.0};
    const Point3 gb{b.x, b.y, 0.0};
    if (ground_segment_clear(ga, gb)) return horizontal_distance(ga, gb);
    return shortest_ground_path(ga, gb).length;
  }

 private:
  Point3 bounds_;
  double cruise_altitude_;
  std::vector<BoxObstacle> obstacles_;
  std::vector<Point3> corners_;
  std::vector<std::vector<std::pair<std::size_t, double>>> corner_adj_;

  void validate() const {
    if (!(bounds_.x > 0.0) || !(bounds_.y > 0.0) || bounds_.z < 0.0) {
      throw std::invalid_argument("environment bounds must be positive");
    }
    if (cruise_altitude_ < 0.0 || cruise_altitude_ > bounds_.z) {
      throw std::invalid_argument(
          "cruise altitude must lie within the workspace height");
    }
    for (const auto& box : obstacles_) {
      if (!box.valid()) {
        throw std::invalid_argument("obstacle has inverted corners");
      }
      if (box.lo.z > 1e-9) {
        throw std::invalid_argument("obstacles must be seated on the ground");
      }
      if (box.hi.z > cruise_altitude_ + 1e-9) {
        throw std::invalid_argument(
            "obstacle extends above the cruise altitude");
      }
    }
    check_ground_connectivity();
  }

  // Coarse occupancy-grid flood fill; resolution follows the smallest
  // obstacle edge (quarter of it, floored at 5 m) so thin obstacles are not
  // skipped over.
  void check_ground_connectivity() const {
    if (obstacles_.empty()) return;
    double min_edge = std::numeric_limits<double>::infinity();
    for (const auto& box : obstacles_) {
      min_edge = std::min(min_edge, box.min_footprint_edge());
    }
    const double res = std::max(5.0, min_edge / 4.0);
    const int nx = std::max(1, static_cast<int>(std::ceil(bounds_.x / res)));
    const int ny = std::max(1, static_cast<int>(std::ceil(bounds_.y / res)));
    std::vector<char> open(static_cast<std::size_t>(nx) * ny, 0);
    auto center = [&](int i, int j) {
      return Point3{std::min((i + 0.5) * res, bounds_.x),
                    std::min((j + 0.5) * res, bounds_.y), 0.0};
    };
    int first = -1;
    int open_count = 0;
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        if (is_feasible(center(i, j))) {
          open[static_cast<std::size_t>(j) * nx + i] = 1;
          ++open_count;
          if (first < 0) first = j * nx + i;
        }
      }
    }
    if (open_count == 0) {
      throw DisconnectedGroundError("no feasible ground cells in workspace");
    }
    std::vector<int> stack{first};
    std::vector<char> seen(open.size(), 0);
    seen[static_cast<std::size_t>(first)] = 1;
    int reached = 0;
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      ++reached;
      const int i = c % nx, j = c / nx;
      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int ni = i + di[k], nj = j + dj[k];
        if (ni < 0 || ni >= nx || nj < 0 || nj >= ny) continue;
        const int nc = nj * nx + ni;
        if (!seen[static_cast<std::size_t>(nc)] &&
            open[static_cast<std::size_t>(nc)]) {
          seen[static_cast<std::size_t>(nc)] = 1;
          stack.push_back(nc);
        }
      }
    }
    if (reached != open_count) {
      throw DisconnectedGroundError(
          "feasible ground set is not connected (occupancy-grid check)");
    }
  }

  detail::Rect2 clipped_footprint(const BoxObstacle& box) const {
    detail::Rect2 r;
    r.x0 = std::max(box.lo.x, 0.0);
    r.y0 = std::max(box.lo.y, 0.0);
    r.x1 = std::min(box.hi.x, bounds_.x);
    r.y1 = std::min(box.hi.y, bounds_.y);
    return r;
  }

  void build_corner_graph() {
    corners_.clear();
    auto maybe_add = [&](double x, double y) {
      const Point3 c{x, y, 0.0};
      if (!is_feasible(c)) return;
      for (const auto& e : corners_) {
        if (same_point(e, c, 1e-9)) return;
      }
      corners_.push_back(c);
    };
    std::vector<detail::Rect2> rects;
    for (const auto& box : obstacles_) {
      const auto r = clipped_footprint(box);
      if (r.empty()) continue;
      rects.push_back(r);
      maybe_add(r.x0, r.y0);
      maybe_add(r.x0, r.y1);
      maybe_add(r.x1, r.y0);
      maybe_add(r.x1, r.y1);
    }
    // Composite corners: where the edges of two overlapping footprints
    // cross, the boundary of the union can turn, so those crossings are
    // turning candidates as well.
    for (std::size_t i = 0; i < rects.size(); ++i) {
      for (std::size_t j = i + 1; j < rects.size(); ++j) {
        const auto& r = rects[i];
        const auto& s = rects[j];
        for (const double x : {r.x0, r.x1}) {
          for (const double y : {s.y0, s.y1}) {
            if (x >= s.x0 && x <= s.x1 && y >= r.y0 && y <= r.y1) {
              maybe_add(x, y);
            }
          }
        }
        for (const double x : {s.x0, s.x1}) {
          for (const double y : {r.y0, r.y1}) {
            if (x >= r.x0 && x <= r.x1 && y >= s.y0 && y <= s.y1) {
              maybe_add(x, y);
            }
          }
        }
      }
    }
    corner_adj_.assign(corners_.size(), {});
    for (std::size_t i = 0; i < corners_.size(); ++i) {
      for (std::size_t j = i + 1; j < corners_.size(); ++j) {
        if (ground_segment_clear(corners_[i], corners_[j])) {
          const double w = horizontal_distance(corners_[i], corners_[j]);
          corner_adj_[i].emplace_back(j, w);
          corner_adj_[j].emplace_back(i, w);
        }
      }
    }
  }
};

inline bool is_feasible(const Environment& env, const Point3& p) {
  return env.is_feasible(p);
}

inline double ground_distance(const Environment& env, const Point3& a,
                              const Point3& b) {
  return env.ground_path_length(a, b);
}

inline GroundPath ground_shortest_path(const Environment& env, const Point3& a,
                                       const Point3& b) {
  return env.shortest_ground_path(a, b);
}

// Straight-line length of an unobstructed flight leg.
inline double air_leg_length(const Point3& a, const Point3& b) {
  return distance3(a, b);
}

// Nearest feasible ground point to p by straight-line distance.  Exact over
// the closed complement of the footprint union: the optimum is either the
// vertical drop point or lies on some footprint boundary edge, with segments
// covered by other footprints' open interiors excluded.  Ties break toward
// the smallest x, then the smallest y.
inline Point3 project_to_ground(const Environment& env, const Point3& p) {
  const Point3& b = env.bounds();
  const Point3 drop{std::clamp(p.x, 0.0, b.x), std::clamp(p.y, 0.0, b.y), 0.0};
  if (env.is_feasible(drop)) return drop;

  struct Cand {
    Point3 q;
    double d;
  };
  std::vector<Cand> cands;
  auto consider = [&](double x, double y) {
    const Point3 q{x, y, 0.0};
    if (!env.is_feasible(q)) return;
    cands.push_back({q, distance3(q, p)});
  };

  // Closest allowed point on an axis-aligned boundary edge, with the open
  // spans covered by other obstacles removed.
  auto scan_edge = [&](bool horizontal, double fixed, double lo, double hi,
                       std::size_t self) {
    if (lo > hi) return;
    std::vector<std::pair<double, double>> blocked;
    const auto& obstacles = env.obstacles();
    for (std::size_t k = 0; k < obstacles.size(); ++k) {
      if (k == self) continue;
      const auto& o = obstacles[k];
      if (horizontal) {
        if (fixed > o.lo.y && fixed < o.hi.y) {
          blocked.emplace_back(std::max(lo, o.lo.x), std::min(hi, o.hi.x));
        }
      } else {
        if (fixed > o.lo.x && fixed < o.hi.x) {
          blocked.emplace_back(std::max(lo, o.lo.y), std::min(hi, o.hi.y));
        }
      }
    }
    std::sort(blocked.begin(), blocked.end());
    const double want = horizontal ? p.x : p.y;
    double cursor = lo;
    auto emit_span = [&](double s0, double s1) {
      if (s0 > s1) return;
      const double t = std::clamp(want, s0, s1);
      if (horizontal) {
        consider(t, fixed);
      } else {
        consider(fixed, t);
      }
    };
    for (const auto& [b0, b1] : blocked) {
      if (b0 > b1) continue;
      emit_span(cursor, std::min(b0, hi));
      cursor = std::max(cursor, b1);
      if (cursor >= hi) break;
    }
    emit_span(cursor, hi);
  };

  const auto& obstacles = env.obstacles();
  for (std::size_t k = 0; k < obstacles.size(); ++k) {
    const auto& o = obstacles[k];
    const double x0 = std::max(o.lo.x, 0.0);
    const double x1 = std::min(o.hi.x, b.x);
    const double y0 = std::max(o.lo.y, 0.0);
    const double y1 = std::min(o.hi.y, b.y);
    if (x0 > x1 || y0 > y1) continue;
    scan_edge(true, y0, x0, x1, k);   // south edge
    scan_edge(true, y1, x0, x1, k);   // north edge
    scan_edge(false, x0, y0, y1, k);  // west edge
    scan_edge(false, x1, y0, y1, k);  // east edge
  }

  if (cands.empty()) {
    throw DisconnectedGroundError("no feasible ground point near projection");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : cands) best = std::min(best, c.d);
  const double tie = 1e-9 * (1.0 + best);
  const Cand* chosen = nullptr;
  for (const auto& c : cands) {
    if (c.d > best + tie) continue;
    if (chosen == nullptr || c.q.x < chosen->q.x - 1e-12 ||
        (std::abs(c.q.x - chosen->q.x) <= 1e-12 && c.q.y < chosen->q.y)) {
      chosen = &c;
    }
  }
  return chosen->q;
}

// Distance from a ground anchor to an arbitrary feasible point: the straight
// line when nothing blocks it, otherwise the drop-to-projection detour bound
// (ground route to the projection plus the vertical-ish hop up to p).
inline double anchor_distance(const Environment& env, const Point3& anchor,
                              const Point3& p) {
  const Point3 ga{anchor.x, anchor.y, 0.0};
  if (env.air_segment_clear(ga, p)) return distance3(ga, p);
  const Point3 proj = project_to_ground(env, p);
  return env.ground_path_length(ga, proj) + distance3(proj, p);
}

}  // namespace airferry
