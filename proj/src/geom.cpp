#include "minpower/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace minpower {

PointSet::PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
  if (pts_.empty()) throw std::invalid_argument("point set must be non-empty");
  for (const Point& p : pts_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw std::invalid_argument("point set has a non-finite coordinate");
  }
}

std::vector<int> distinct_indices(const PointSet& ps) {
  const int n = ps.size();
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const Point &a = ps[i], &b = ps[j];
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return i < j;
  });
  std::vector<int> keep;
  for (int k = 0; k < n; ++k) {
    if (k == 0 || !(ps[order[k]] == ps[order[k - 1]])) keep.push_back(order[k]);
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

Hull convex_hull(const PointSet& ps) {
  std::vector<int> idx = distinct_indices(ps);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) {
    const Point &a = ps[i], &b = ps[j];
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  const int m = static_cast<int>(idx.size());
  if (m <= 2) return Hull{idx};

  // Monotone chain; popping on orient <= 0 keeps strict extreme points only.
  std::vector<int> st;
  st.reserve(static_cast<size_t>(2 * m));
  for (int pass = 0; pass < 2; ++pass) {
    const size_t base = st.size();
    for (int k = 0; k < m; ++k) {
      const int i = pass == 0 ? idx[k] : idx[m - 1 - k];
      while (st.size() >= base + 2 &&
             orient(ps[st[st.size() - 2]], ps[st.back()], ps[i]) <= 0)
        st.pop_back();
      st.push_back(i);
    }
    st.pop_back();  // endpoint repeats as the start of the next chain
  }
  // Start CCW order at the lexicographically smallest vertex (= idx[0]).
  auto it = std::find(st.begin(), st.end(), idx[0]);
  std::rotate(st.begin(), it, st.end());
  return Hull{std::move(st)};
}

Point centroid(const PointSet& ps) {
  double sx = 0, sy = 0;
  for (const Point& p : ps) {
    sx += p.x;
    sy += p.y;
  }
  const double n = static_cast<double>(ps.size());
  return {sx / n, sy / n};
}

Circle circumcircle(const Point& a, const Point& b, const Point& c) {
  if (orient(a, b, c) == 0)
    throw CollinearInput("circumcircle of collinear points");
  const Point u = b - a, v = c - a;
  const double d = 2.0 * cross(u, v);
  const Point off{(v.y * norm2(u) - u.y * norm2(v)) / d,
                  (u.x * norm2(v) - v.x * norm2(u)) / d};
  return Circle{a + off, norm(off)};
}

namespace {

Circle circle_two(Point a, Point b) {
  const Point c = 0.5 * (a + b);
  return Circle{c, std::max(dist(c, a), dist(c, b))};
}

Circle circle_three(Point a, Point b, Point c) {
  if (orient(a, b, c) == 0) {
    // Degenerate support: span the farthest pair.
    Circle best = circle_two(a, b);
    if (dist(a, c) > 2 * best.radius) best = circle_two(a, c);
    if (dist(b, c) > 2 * best.radius) best = circle_two(b, c);
    return best;
  }
  return circumcircle(a, b, c);
}

bool inside(const Circle& c, Point p) {
  return dist(c.centre, p) <= c.radius * (1.0 + 1e-12) + 1e-300;
}

}  // namespace

Circle min_enclosing_circle(const PointSet& ps) {
  std::vector<Point> p;
  for (int i : distinct_indices(ps)) p.push_back(ps[i]);
  if (p.size() == 1) return Circle{p[0], 0.0};

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::shuffle(p.begin(), p.end(), rng);

  const int n = static_cast<int>(p.size());
  Circle c = circle_two(p[0], p[1]);
  for (int i = 2; i < n; ++i) {
    if (inside(c, p[i])) continue;
    c = circle_two(p[i], p[0]);
    for (int j = 1; j < i; ++j) {
      if (inside(c, p[j])) continue;
      c = circle_two(p[i], p[j]);
      for (int k = 0; k < j; ++k) {
        if (inside(c, p[k])) continue;
        c = circle_three(p[i], p[j], p[k]);
      }
    }
  }
  return c;
}

double convex_margin(const std::vector<Point>& pts, Point p) {
  const PointSet set(pts);
  const Hull h = convex_hull(set);
  const int m = h.size();
  if (m == 1) return -dist(p, set[h.vertices[0]]);
  if (m == 2) {
    const Point a = set[h.vertices[0]], b = set[h.vertices[1]];
    const double t = std::clamp(
        dot(p - a, b - a) / std::max(norm2(b - a), 1e-300), 0.0, 1.0);
    return -dist(p, a + t * (b - a));
  }
  double margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < m; ++k) {
    const Point a = set[h.vertices[static_cast<size_t>(k)]];
    const Point b = set[h.vertices[static_cast<size_t>((k + 1) % m)]];
    margin = std::min(margin,
                      cross(b - a, p - a) / std::max(norm(b - a), 1e-300));
  }
  return margin;
}

double diameter(const PointSet& ps) {
  const Hull h = convex_hull(ps);
  const int m = h.size();
  if (m == 1) return 0.0;
  if (m == 2) return dist(ps[h.vertices[0]], ps[h.vertices[1]]);

  auto pt = [&](int i) { return ps[h.vertices[i % m]]; };
  auto area2 = [&](int i, int j, int l) {
    return std::abs(cross(pt(j) - pt(i), pt(l) - pt(i)));
  };
  // Rotating calipers: for each edge, the farthest vertex advances
  // monotonically around the hull.
  double best = 0.0;
  int k = 1;
  for (int i = 0; i < m; ++i) {
    while (area2(i, i + 1, k + 1) > area2(i, i + 1, k)) k = (k + 1) % m;
    best = std::max(best, dist(pt(i), pt(k)));
    best = std::max(best, dist(pt(i + 1), pt(k)));
  }
  return best;
}

}  // namespace minpower
