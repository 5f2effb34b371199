#ifndef QBC_HULL_HPP
#define QBC_HULL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace qbc {

using Point2 = std::array<double, 2>;

inline double cross2(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Monotone-chain convex hull; returns vertices in counterclockwise order.
inline std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point2& a, const Point2& b) {
                          return std::abs(a[0] - b[0]) < 1e-12 &&
                                 std::abs(a[1] - b[1]) < 1e-12;
                        }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n <= 2) return pts;
  std::vector<Point2> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 1e-12) --k;
    h[k++] = pts[i];
  }
  int lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {
    while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= 1e-12) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// Downward-closed rate region in the nonnegative quadrant: hull of the
// achievable points together with their axis projections and the origin.
inline std::vector<Point2> downward_hull(const std::vector<Point2>& pts) {
  std::vector<Point2> aug;
  aug.push_back({0.0, 0.0});
  for (const auto& p : pts) {
    Point2 q = {std::max(0.0, p[0]), std::max(0.0, p[1])};
    aug.push_back(q);
    aug.push_back({q[0], 0.0});
    aug.push_back({0.0, q[1]});
  }
  return convex_hull(aug);
}

// Signed check: is p inside (or within slack of) the convex polygon?
inline bool hull_contains(const std::vector<Point2>& hull, const Point2& p,
                          double slack = 1e-9) {
  const int n = static_cast<int>(hull.size());
  if (n == 0) return false;
  if (n == 1)
    return std::hypot(p[0] - hull[0][0], p[1] - hull[0][1]) <= slack;
  for (int i = 0; i < n; ++i) {
    const Point2& a = hull[i];
    const Point2& b = hull[(i + 1) % n];
    double len = std::hypot(b[0] - a[0], b[1] - a[1]);
    if (len < 1e-15) continue;
    if (cross2(a, b, p) < -slack * len) return false;
  }
  return true;
}

inline double dist_point_segment(const Point2& p, const Point2& a, const Point2& b) {
  double dx = b[0] - a[0], dy = b[1] - a[1];
  double l2 = dx * dx + dy * dy;
  double t = l2 < 1e-30 ? 0.0
                        : std::clamp(((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / l2,
                                     0.0, 1.0);
  return std::hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy);
}

// Distance from a point to a filled convex polygon (0 when inside).
inline double dist_to_hull(const std::vector<Point2>& hull, const Point2& p) {
  if (hull.empty()) return std::numeric_limits<double>::infinity();
  if (hull_contains(hull, p, 0.0)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(hull.size());
  for (int i = 0; i < n; ++i)
    best = std::min(best, dist_point_segment(p, hull[i], hull[(i + 1) % n]));
  return best;
}

// Hausdorff distance between two filled convex regions; for convex sets the
// maximum is attained at vertices.
inline double hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  double d = 0.0;
  for (const auto& p : a) d = std::max(d, dist_to_hull(b, p));
  for (const auto& p : b) d = std::max(d, dist_to_hull(a, p));
  return d;
}

inline bool hull_included(const std::vector<Point2>& inner,
                          const std::vector<Point2>& outer, double slack = 1e-6) {
  for (const auto& p : inner)
    if (!hull_contains(outer, p, slack)) return false;
  return true;
}

// Vertices of {r0,r1 >= 0, r0 <= a, r1 <= b, r0+r1 <= c}.
inline std::vector<Point2> bound_triple_vertices(double a, double b, double c) {
  a = std::max(0.0, a);
  b = std::max(0.0, b);
  c = std::max(0.0, c);
  // intersections of the five constraint lines, filtered for feasibility
  std::vector<Point2> cand = {{0, 0},         {a, 0},     {0, b},    {a, b},
                              {c, 0},         {0, c},     {a, c - a}, {c - b, b}};
  std::vector<Point2> keep;
  for (const auto& p : cand) {
    if (p[0] < -1e-12 || p[1] < -1e-12) continue;
    if (p[0] > a + 1e-12 || p[1] > b + 1e-12) continue;
    if (p[0] + p[1] > c + 1e-12) continue;
    keep.push_back(p);
  }
  return keep;
}

inline double max_along(const std::vector<Point2>& hull, double wx, double wy) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : hull) best = std::max(best, wx * p[0] + wy * p[1]);
  return best;
}

// Largest r0 with (r0, 0) in the region.
inline double axis_intercept_x(const std::vector<Point2>& hull) {
  double best = 0.0;
  for (const auto& p : hull)
    if (std::abs(p[1]) < 1e-9) best = std::max(best, p[0]);
  return best;
}

inline std::vector<Point2> scale_hull(std::vector<Point2> hull, double s) {
  for (auto& p : hull) {
    p[0] *= s;
    p[1] *= s;
  }
  return hull;
}

}  // namespace qbc

#endif  // QBC_HULL_HPP
