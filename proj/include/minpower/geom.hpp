#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "minpower/errors.hpp"

namespace minpower {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double t, Point p) { return {t * p.x, t * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point p) { return p.x * p.x + p.y * p.y; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline double dist2(Point a, Point b) { return norm2(a - b); }
inline Point rot90(Point p) { return {-p.y, p.x}; }

// A finite, non-empty planar point set. Duplicates are allowed: they matter
// for mass-weighted quantities (centroids) even though they collapse for
// hull-type structures.
class PointSet {
 public:
  explicit PointSet(std::vector<Point> pts);

  int size() const { return static_cast<int>(pts_.size()); }
  const Point& operator[](int i) const { return pts_[static_cast<size_t>(i)]; }
  const std::vector<Point>& points() const { return pts_; }

  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }

 private:
  std::vector<Point> pts_;
};

struct Circle {
  Point centre;
  double radius = 0.0;

  bool contains(Point p, double slack = 0.0) const {
    return dist(centre, p) <= radius + slack;
  }
};

// Convex hull as indices into the defining PointSet, counter-clockwise,
// strict extreme points only (no duplicates, no interior-of-edge points).
// Collinear input yields the two segment endpoints; a single distinct
// location yields one index.
struct Hull {
  std::vector<int> vertices;

  int size() const { return static_cast<int>(vertices.size()); }
};

// Exact sign of the signed area of triangle (a, b, c):
// +1 counter-clockwise, -1 clockwise, 0 collinear.
int orient(const Point& a, const Point& b, const Point& c);

// Exact position of d relative to the circle through CCW triangle (a, b, c):
// +1 strictly inside, -1 strictly outside, 0 on the circle.
// (For a CW triangle the sign flips.)
int incircle(const Point& a, const Point& b, const Point& c, const Point& d);

Hull convex_hull(const PointSet& ps);

Point centroid(const PointSet& ps);

// Circle through three non-collinear points. Throws CollinearInput.
Circle circumcircle(const Point& a, const Point& b, const Point& c);

// Smallest circle containing every point; randomized move-to-front
// construction, expected linear time. Result is exact up to floating
// arithmetic: every point is inside within 1e-12 * radius.
Circle min_enclosing_circle(const PointSet& ps);

// Maximum pairwise distance (0 for a single distinct location). Used to
// scale tolerances.
double diameter(const PointSet& ps);

// Indices of distinct locations, keeping the lowest index per location,
// in input order.
std::vector<int> distinct_indices(const PointSet& ps);

// Signed inward margin of p relative to conv(pts): positive strictly inside,
// negative outside, in distance units. Degenerate hulls (segment, single
// location) yield minus the distance to the set.
double convex_margin(const std::vector<Point>& pts, Point p);

}  // namespace minpower
