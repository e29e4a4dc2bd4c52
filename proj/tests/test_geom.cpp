#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "minpower/geom.hpp"
#include "oracles.hpp"

using namespace minpower;

namespace {

int sign_of(__int128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Exact integer orientation for coordinates small enough that the 2x2
// determinant fits in __int128.
int orient_int(long long ax, long long ay, long long bx, long long by,
               long long cx, long long cy) {
  const __int128 d = static_cast<__int128>(bx - ax) * (cy - ay) -
                     static_cast<__int128>(by - ay) * (cx - ax);
  return sign_of(d);
}

// Exact integer incircle sign via cofactor expansion of the lifted 3x3
// determinant. Safe for |coords| <= 2^15 or so.
int incircle_int(long long ax, long long ay, long long bx, long long by,
                 long long cx, long long cy, long long dx, long long dy) {
  const __int128 adx = ax - dx, ady = ay - dy;
  const __int128 bdx = bx - dx, bdy = by - dy;
  const __int128 cdx = cx - dx, cdy = cy - dy;
  const __int128 ad2 = adx * adx + ady * ady;
  const __int128 bd2 = bdx * bdx + bdy * bdy;
  const __int128 cd2 = cdx * cdx + cdy * cdy;
  const __int128 det = adx * (bdy * cd2 - cdy * bd2) -
                       ady * (bdx * cd2 - cdx * bd2) +
                       ad2 * (bdx * cdy - cdx * bdy);
  return sign_of(det);
}

Point pt(long long x, long long y) {
  return {static_cast<double>(x), static_cast<double>(y)};
}

}  // namespace

TEST_CASE("orient matches the exact integer determinant") {
  std::mt19937_64 rng(0xA11CE5);
  std::uniform_int_distribution<long long> coord(-(1 << 20), 1 << 20);
  for (int it = 0; it < 20000; ++it) {
    long long ax = coord(rng), ay = coord(rng);
    long long bx = coord(rng), by = coord(rng);
    long long cx = coord(rng), cy = coord(rng);
    if (it % 5 == 0) {  // force collinear: c = a + t (b - a), small t
      const long long t = (it / 5) % 7 - 3;
      cx = ax + t * (bx - ax);
      cy = ay + t * (by - ay);
    }
    const int want = orient_int(ax, ay, bx, by, cx, cy);
    CHECK(orient(pt(ax, ay), pt(bx, by), pt(cx, cy)) == want);
  }
}

TEST_CASE("orient resolves one-ulp perturbations off a long diagonal") {
  const Point a{0.0, 0.0};
  const Point b{1e17, 1e17};
  const double t = 3e16;
  CHECK(orient(a, b, {t, t}) == 0);
  CHECK(orient(a, b, {t, std::nextafter(t, 1e300)}) == 1);
  CHECK(orient(a, b, {t, std::nextafter(t, -1e300)}) == -1);
  CHECK(orient(a, b, {std::nextafter(t, 1e300), t}) == -1);
}

TEST_CASE("incircle matches the exact integer determinant") {
  std::mt19937_64 rng(0xC1C1E);
  std::uniform_int_distribution<long long> coord(-(1 << 10), 1 << 10);
  int zeros = 0;
  for (int it = 0; it < 20000; ++it) {
    long long ax = coord(rng), ay = coord(rng);
    long long bx = coord(rng), by = coord(rng);
    long long cx = coord(rng), cy = coord(rng);
    long long dx = coord(rng), dy = coord(rng);
    const int want = incircle_int(ax, ay, bx, by, cx, cy, dx, dy);
    if (want == 0) ++zeros;
    CHECK(incircle(pt(ax, ay), pt(bx, by), pt(cx, cy), pt(dx, dy)) == want);
  }
  // Exact cocircular: lattice points on the radius-5 circle.
  CHECK(incircle(pt(5, 0), pt(0, 5), pt(-5, 0), pt(3, -4)) == 0);
  CHECK(incircle(pt(5, 0), pt(0, 5), pt(-5, 0), pt(3, 4)) == 0);
  CHECK(incircle(pt(5, 0), pt(0, 5), pt(-5, 0), pt(3, 3)) == 1);
  CHECK(incircle(pt(5, 0), pt(0, 5), pt(-5, 0), pt(6, 0)) == -1);
  // CW triple flips the sign.
  CHECK(incircle(pt(-5, 0), pt(0, 5), pt(5, 0), pt(3, 3)) == -1);
  CHECK(zeros >= 0);  // collinear quadruples may or may not appear
}

TEST_CASE("incircle near-degenerate: tiny radial perturbations") {
  // d sits on the circle through a, b, c up to one ulp in one coordinate.
  const Point a{5, 0}, b{0, 5}, c{-5, 0};
  const double y = -4.0;
  CHECK(incircle(a, b, c, {3.0, std::nextafter(y, 0.0)}) == 1);
  CHECK(incircle(a, b, c, {3.0, std::nextafter(y, -10.0)}) == -1);
}

TEST_CASE("PointSet validation") {
  CHECK_THROWS_AS(PointSet({}), std::invalid_argument);
  CHECK_THROWS_AS(PointSet({{0.0, std::nan("")}}), std::invalid_argument);
  CHECK_THROWS_AS(PointSet({{std::numeric_limits<double>::infinity(), 0.0}}),
                  std::invalid_argument);
  const PointSet ok({{1, 2}});
  CHECK(ok.size() == 1);
  CHECK(ok[0] == Point{1, 2});
}

TEST_CASE("convex_hull: squares, collinear edge points, duplicates") {
  // Square plus edge midpoints plus centre plus duplicate corner: only the
  // four strict extremes survive, CCW from the lexicographic minimum.
  const PointSet ps({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0}, {1, 0.5},
                     {0.5, 1}, {0, 0.5}, {0.5, 0.5}, {0, 0}});
  const Hull h = convex_hull(ps);
  CHECK(h.vertices == std::vector<int>{0, 1, 2, 3});

  const PointSet line({{3, 3}, {1, 1}, {2, 2}, {5, 5}, {1, 1}});
  CHECK(convex_hull(line).vertices == std::vector<int>{1, 3});

  const PointSet single({{2, 7}, {2, 7}, {2, 7}});
  CHECK(convex_hull(single).vertices == std::vector<int>{0});
}

TEST_CASE("convex_hull: random sets satisfy hull axioms") {
  std::mt19937_64 rng(0x5EED);
  for (int it = 0; it < 200; ++it) {
    const int n = 3 + static_cast<int>(rng() % 48);
    auto pts = oracle::uniform_points(rng, n);
    const PointSet ps(pts);
    const Hull h = convex_hull(ps);
    REQUIRE(h.size() >= 1);
    const int m = h.size();
    if (m >= 3) {
      for (int i = 0; i < m; ++i) {
        const Point& a = ps[h.vertices[i]];
        const Point& b = ps[h.vertices[(i + 1) % m]];
        const Point& c = ps[h.vertices[(i + 2) % m]];
        CHECK(orient(a, b, c) == 1);  // strictly convex, CCW
        for (const Point& p : pts) CHECK(orient(a, b, p) >= 0);
      }
    }
    // Starts at the lexicographically smallest point.
    int lex = 0;
    for (int i = 1; i < n; ++i)
      if (pts[i].x < pts[lex].x ||
          (pts[i].x == pts[lex].x && pts[i].y < pts[lex].y))
        lex = i;
    CHECK(ps[h.vertices[0]] == pts[lex]);
  }
}

TEST_CASE("centroid, diameter, distinct_indices") {
  const PointSet ps({{0, 0}, {1, 0}, {4, 0}});
  const Point m = centroid(ps);
  CHECK(m.x == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(m.y == 0.0);
  CHECK(diameter(ps) == 4.0);

  const PointSet dup({{1, 1}, {2, 2}, {1, 1}, {3, 1}, {2, 2}});
  CHECK(distinct_indices(dup) == std::vector<int>{0, 1, 3});
  CHECK(diameter(PointSet({{5, 5}, {5, 5}})) == 0.0);

  std::mt19937_64 rng(0xD1A);
  for (int it = 0; it < 50; ++it) {
    auto pts = oracle::uniform_points(rng, 3 + static_cast<int>(rng() % 30));
    const PointSet rs(pts);
    double brute = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j)
        brute = std::max(brute, dist(pts[i], pts[j]));
    CHECK(diameter(rs) == doctest::Approx(brute).epsilon(1e-14));
  }
}

TEST_CASE("circumcircle: exact cases and collinear rejection") {
  const Circle c = circumcircle({5, 0}, {0, 5}, {-5, 0});
  CHECK(c.centre.x == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(c.centre.y) < 1e-12);
  CHECK(c.radius == doctest::Approx(5.0).epsilon(1e-14));
  CHECK_THROWS_AS(circumcircle({0, 0}, {1, 1}, {2, 2}), CollinearInput);
  const Circle eq = circumcircle({0, 0}, {1, 0}, {0.5, std::sqrt(3) / 2});
  CHECK(eq.radius == doctest::Approx(1.0 / std::sqrt(3)).epsilon(1e-14));
}

TEST_CASE("min_enclosing_circle equals exhaustive search") {
  std::mt19937_64 rng(0x3EC);
  for (int it = 0; it < 150; ++it) {
    const int n = 1 + static_cast<int>(rng() % 12);
    auto pts = oracle::uniform_points(rng, n);
    if (it % 7 == 0)  // exercise collinear configurations too
      for (auto& p : pts) p.y = 0.25;
    const PointSet ps(pts);
    const Circle got = min_enclosing_circle(ps);
    const Circle want = oracle::brute_mec(pts);
    CHECK(got.radius == doctest::Approx(want.radius).epsilon(1e-9));
    for (const Point& p : pts)
      CHECK(dist(got.centre, p) <= got.radius * (1 + 1e-12) + 1e-300);
  }
  const Circle one = min_enclosing_circle(PointSet({{3, 4}, {3, 4}}));
  CHECK(one.radius == 0.0);
  CHECK(one.centre == Point{3, 4});
  const Circle two = min_enclosing_circle(PointSet({{0, 0}, {2, 0}}));
  CHECK(two.centre == Point{1, 0});
  CHECK(two.radius == 1.0);
}

TEST_CASE("convex_margin sign convention") {
  const std::vector<Point> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(convex_margin(sq, {0.5, 0.5}) == doctest::Approx(0.5));
  CHECK(convex_margin(sq, {0.5, 0.9}) == doctest::Approx(0.1));
  CHECK(convex_margin(sq, {0.5, 1.25}) == doctest::Approx(-0.25));
  CHECK(convex_margin(sq, {0.5, 1.0}) == doctest::Approx(0.0));
  const std::vector<Point> seg{{0, 0}, {2, 0}};
  CHECK(convex_margin(seg, {1, 1}) == doctest::Approx(-1.0));
  CHECK(convex_margin(seg, {1, 0}) <= 0.0);  // degenerate hull: never inside
}
