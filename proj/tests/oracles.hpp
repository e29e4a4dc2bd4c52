#pragma once

// Brute-force reference implementations used to pin expected values. They
// deliberately avoid the library's solvers: the objective, circles and
// farthest sets are recomputed from scratch so agreement is meaningful.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "minpower/geom.hpp"

namespace oracle {

using minpower::Point;
using minpower::PointSet;

inline double objective(const std::vector<Point>& x, Point s, double alpha) {
  double sum = 0.0, far = 0.0;
  for (const Point& p : x) {
    const double v = std::pow(std::hypot(s.x - p.x, s.y - p.y), alpha);
    sum += v;
    far = std::max(far, v);
  }
  return sum + far;
}

struct GridMin {
  Point s;
  double value = 0.0;
};

// Exhaustive zoomed grid search; each round keeps a six-cell window around
// the best sample, so a convex objective cannot escape the window.
inline GridMin grid_minimize(const std::vector<Point>& x, double alpha,
                             int grid = 96, int rounds = 10) {
  double lox = x[0].x, hix = lox, loy = x[0].y, hiy = loy;
  for (const Point& p : x) {
    lox = std::min(lox, p.x);
    hix = std::max(hix, p.x);
    loy = std::min(loy, p.y);
    hiy = std::max(hiy, p.y);
  }
  Point c{0.5 * (lox + hix), 0.5 * (loy + hiy)};
  double span = 1.05 * std::max({hix - lox, hiy - loy, 1e-12});
  GridMin best{c, objective(x, c, alpha)};
  for (int r = 0; r < rounds; ++r) {
    for (int i = 0; i <= grid; ++i)
      for (int j = 0; j <= grid; ++j) {
        const Point t{c.x - 0.5 * span + span * i / grid,
                      c.y - 0.5 * span + span * j / grid};
        const double v = objective(x, t, alpha);
        if (v < best.value) best = {t, v};
      }
    c = best.s;
    span = span * 6.0 / grid;
  }
  return best;
}

// Smallest circle through exhaustive pair/triple enumeration.
inline minpower::Circle brute_mec(const std::vector<Point>& x) {
  const auto covers = [&](Point c, double r) {
    for (const Point& p : x)
      if (std::hypot(c.x - p.x, c.y - p.y) > r * (1.0 + 1e-12) + 1e-300)
        return false;
    return true;
  };
  minpower::Circle best{{x[0].x, x[0].y},
                        std::numeric_limits<double>::infinity()};
  const int n = static_cast<int>(x.size());
  if (n == 1) return {x[0], 0.0};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Point c{0.5 * (x[i].x + x[j].x), 0.5 * (x[i].y + x[j].y)};
      const double r = 0.5 * std::hypot(x[i].x - x[j].x, x[i].y - x[j].y);
      if (r < best.radius && covers(c, r)) best = {c, r};
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const double ux = x[j].x - x[i].x, uy = x[j].y - x[i].y;
        const double vx = x[k].x - x[i].x, vy = x[k].y - x[i].y;
        const double d = 2.0 * (ux * vy - uy * vx);
        if (d == 0.0) continue;
        const double u2 = ux * ux + uy * uy, v2 = vx * vx + vy * vy;
        const Point c{x[i].x + (vy * u2 - uy * v2) / d,
                      x[i].y + (ux * v2 - vx * u2) / d};
        const double r = std::hypot(c.x - x[i].x, c.y - x[i].y);
        if (r < best.radius && covers(c, r)) best = {c, r};
      }
  return best;
}

struct FarthestSet {
  std::vector<int> idx;  // all indices attaining the maximum (double compare)
  double dmax = 0.0;
  double gap = 0.0;  // dmax minus the best non-attaining distance
};

inline FarthestSet brute_farthest(const std::vector<Point>& x, Point s) {
  FarthestSet f;
  for (const Point& p : x)
    f.dmax = std::max(f.dmax, std::hypot(s.x - p.x, s.y - p.y));
  double second = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double d = std::hypot(s.x - x[i].x, s.y - x[i].y);
    if (d == f.dmax)
      f.idx.push_back(static_cast<int>(i));
    else
      second = std::max(second, d);
  }
  f.gap = f.dmax - second;
  return f;
}

// All CCW hull triples whose circumcircle holds every point inside or on the
// boundary (the full-circle property). Exactly the farthest-point
// triangulation when no four points are cocircular; a superset otherwise.
inline std::vector<std::array<int, 3>> brute_full_circle_triples(
    const PointSet& ps, bool* saw_cocircular = nullptr) {
  const minpower::Hull hull = minpower::convex_hull(ps);
  const std::vector<int>& h = hull.vertices;
  const auto distinct = minpower::distinct_indices(ps);
  std::vector<std::array<int, 3>> out;
  if (saw_cocircular) *saw_cocircular = false;
  for (size_t a = 0; a < h.size(); ++a)
    for (size_t b = a + 1; b < h.size(); ++b)
      for (size_t c = b + 1; c < h.size(); ++c) {
        int i = h[a], j = h[b], k = h[c];
        if (minpower::orient(ps[i], ps[j], ps[k]) < 0) std::swap(j, k);
        bool ok = true;
        for (int d : distinct) {
          if (d == i || d == j || d == k) continue;
          const int side = minpower::incircle(ps[i], ps[j], ps[k], ps[d]);
          if (side == 0 && saw_cocircular) *saw_cocircular = true;
          if (side < 0) {  // strictly outside the circumcircle
            ok = false;
            break;
          }
        }
        if (ok) {
          std::array<int, 3> t{i, j, k};
          std::sort(t.begin(), t.end());
          out.push_back(t);
        }
      }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Point> uniform_points(std::mt19937_64& rng, int n,
                                         double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    pts.push_back({x, y});
  }
  return pts;
}

}  // namespace oracle
