#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "minpower/analysis.hpp"
#include "minpower/farthest.hpp"
#include "oracles.hpp"

using namespace minpower;

TEST_CASE("centroid ratio on the golden instance: 127/117 against 34/27") {
  const PointSet ps({{0, 0}, {1, 0}, {4, 0}});
  const RatioReport rep = approx_ratio(ps);
  CHECK(rep.p_star == 13.0);
  CHECK(rep.p_m == doctest::Approx(127.0 / 9.0).epsilon(1e-14));
  CHECK(rep.rho == doctest::Approx(127.0 / 117.0).epsilon(1e-12));
  CHECK(rep.k == 2);   // nodes 0 and 2 are both farthest from s* = (2, 0)
  CHECK(rep.n == 3);
  CHECK(rep.bound == doctest::Approx(34.0 / 27.0).epsilon(1e-14));
  CHECK(rep.slack > 0.17);
  CHECK_THROWS_AS(approx_ratio(PointSet({{1, 1}, {1, 1}})),
                  DegenerateInstance);
}

TEST_CASE("ratio is 1 when the centroid is optimal") {
  const RatioReport sq = approx_ratio(PointSet({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK(sq.rho == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sq.k == 4);
}

TEST_CASE("fuzzed instances never violate the proven cap") {
  std::mt19937_64 rng(0xB0B);
  double worst_slack = 1e9;
  for (int it = 0; it < 2500; ++it) {
    const int n = 3 + static_cast<int>(rng() % 38);
    const PointSet ps =
        random_instance(static_cast<InstanceKind>(it % 4), n, rng);
    const RatioReport rep = approx_ratio(ps);
    CHECK(rep.rho >= 1.0 - 1e-12);
    CHECK(rep.k >= 1);
    CHECK(rep.slack >= -1e-9);
    worst_slack = std::min(worst_slack, rep.slack);
  }
  MESSAGE("worst slack: ", worst_slack);
}

TEST_CASE("ratio experiment: deterministic, capped, tight cap at n = 100") {
  const std::vector<int> sizes{5, 20, 100};
  const auto rows = ratio_limit_experiment(7, sizes, 60);
  REQUIRE(rows.size() == 3);
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].n == sizes[i]);
    const double q = (rows[i].n + 1.0) / rows[i].n;
    CHECK(rows[i].bound == doctest::Approx(0.5 * q * q + 0.5).epsilon(1e-15));
    CHECK(rows[i].max_rho <= rows[i].bound + 1e-9);
    CHECK(rows[i].mean_rho <= rows[i].max_rho);
    CHECK(rows[i].mean_rho >= 1.0 - 1e-12);
  }
  CHECK(rows[2].max_rho <= 1.01005);
  const auto again = ratio_limit_experiment(7, sizes, 60);
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].max_rho == again[i].max_rho);
    CHECK(rows[i].mean_rho == again[i].mean_rho);
  }
  const auto other = ratio_limit_experiment(8, sizes, 60);
  bool any_diff = false;
  for (size_t i = 0; i < rows.size(); ++i)
    any_diff = any_diff || rows[i].max_rho != other[i].max_rho;
  CHECK(any_diff);
}

TEST_CASE("generator: edge target on the unit square") {
  const PointSet base({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const Point w{0.5, 0.7};
  const GeneratedInstance gi = generate_target_instance(base, w);
  CHECK(gi.m >= 1);
  CHECK(gi.result.size() == base.size() + gi.m);
  CHECK(gi.achieved_distance <= 1e-9);
  const MinPowerResult res = solve_quadratic(gi.result);
  CHECK(dist(res.s_star, w) <= 1e-9);
  // All appended copies coincide and sit strictly inside the hull.
  for (int i = base.size(); i < gi.result.size(); ++i) {
    CHECK(gi.result[i] == gi.y);
    CHECK(convex_margin({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, gi.result[i]) > 0);
  }
  // The hull is unchanged: same vertex locations.
  const Hull h = convex_hull(gi.result);
  REQUIRE(h.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(gi.result[h.vertices[i]] == base[i]);
}

TEST_CASE("generator: vertex target and the m = 0 shortcut") {
  const PointSet sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const GeneratedInstance vtx = generate_target_instance(sq, {0.5, 0.5});
  CHECK(vtx.m == 0);  // the centre is already optimal
  CHECK(vtx.achieved_distance <= 1e-12);

  const PointSet tri({{0, 0}, {1, 0}, {4, 0}});
  const GeneratedInstance mid = generate_target_instance(tri, {2, 0});
  CHECK(mid.m == 0);
  CHECK(mid.result.size() == 3);

  // Equilateral: target on the vertical diagram edge above the circumcentre.
  const double r3 = std::sqrt(3.0);
  const PointSet eq({{-1, 0}, {1, 0}, {0, r3}});
  const GeneratedInstance gv =
      generate_target_instance(eq, {0.0, 1.0 / r3 + 0.15});
  CHECK(gv.m >= 1);
  const MinPowerResult res = solve_quadratic(gv.result);
  CHECK(dist(res.s_star, {0.0, 1.0 / r3 + 0.15}) <= 1e-9);
}

TEST_CASE("generator rejections") {
  const PointSet sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  // Interior of a region, not on the 1-skeleton.
  CHECK_THROWS_AS(generate_target_instance(sq, {0.3, 0.2}),
                  TargetNotOnDiagram);
  // On the diagram but outside the hull: the flat triangle's 0-1 bisector
  // runs down to the circumcentre at (5, -24.75), far below the nodes.
  const PointSet obtuse({{0, 0}, {10, 0}, {5, 0.5}});
  CHECK_THROWS_AS(generate_target_instance(obtuse, {5.0, -10.0}), NoFeasibleM);
  // Far side of the circumcentre: the bisector stops being a diagram edge.
  CHECK_THROWS_AS(generate_target_instance(obtuse, {5.0, -30.0}),
                  TargetNotOnDiagram);
  // Collinear base: the bisector leaves the (degenerate) hull immediately.
  const PointSet line({{0, 0}, {1, 0}, {4, 0}});
  CHECK_THROWS_AS(generate_target_instance(line, {2.0, 0.5}), NoFeasibleM);
}

TEST_CASE("generator: seeded random edge targets hit exactly") {
  std::mt19937_64 rng(0x6E6);
  int done = 0;
  for (int attempt = 0; attempt < 300 && done < 6; ++attempt) {
    const PointSet base = random_instance(InstanceKind::kUniformSquare,
                                          5 + static_cast<int>(rng() % 15),
                                          rng);
    const auto fs = build_farthest_structures(base);
    if (fs.fpdt.size() == 0) continue;
    // Aim at the midpoint of a bounded diagram edge, or a nearby ray point.
    Point w{0, 0};
    bool found = false;
    for (const auto& e : fs.fpvd.edges) {
      const Point cand = e.unbounded
                             ? e.a + 0.05 * (e.b_or_dir)
                             : Point{0.5 * (e.a.x + e.b_or_dir.x),
                                     0.5 * (e.a.y + e.b_or_dir.y)};
      std::vector<Point> hull_pts;
      for (int hv : fs.fpvd.hull.vertices) hull_pts.push_back(base[hv]);
      if (convex_margin(hull_pts, cand) > 0.02 * diameter(base)) {
        w = cand;
        found = true;
        break;
      }
    }
    if (!found) continue;
    const GeneratedInstance gi = generate_target_instance(base, w);
    const double diam = diameter(gi.result);
    CHECK(gi.achieved_distance <= 1e-6 * diam);
    const Hull before = convex_hull(base);
    const Hull after = convex_hull(gi.result);
    REQUIRE(before.size() == after.size());
    for (int i = 0; i < before.size(); ++i)
      CHECK(base[before.vertices[i]] == gi.result[after.vertices[i]]);
    ++done;
  }
  CHECK(done == 6);
}

TEST_CASE("alpha sweep drifts from the centroid toward the 1-centre") {
  const PointSet ps({{0, 0}, {0.1, 0}, {-0.1, 0}, {10, 0}});
  const std::vector<double> alphas{2, 4, 8, 32};
  const auto rows = alpha_sweep(ps, alphas);
  REQUIRE(rows.size() == 4);
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].alpha == alphas[i]);
    CHECK(rows[i].certified_gap >= 0.0);
  }
  CHECK(rows[3].dist_to_one_centre < rows[0].dist_to_one_centre);
  // Monotone drift on this instance.
  for (size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].dist_to_one_centre < rows[i - 1].dist_to_one_centre);
  // alpha = 2 row is consistent with the combinatorial solution.
  CHECK(rows[0].dist_to_quadratic <= 1e-6 * diameter(ps));
}

TEST_CASE("random_instance: determinism and family guarantees") {
  std::mt19937_64 a(42), b(42);
  for (int kind = 0; kind < 4; ++kind) {
    const PointSet x = random_instance(static_cast<InstanceKind>(kind), 12, a);
    const PointSet y = random_instance(static_cast<InstanceKind>(kind), 12, b);
    CHECK(x.points() == y.points());
  }

  std::mt19937_64 rng(0xFA3);
  const PointSet col = random_instance(InstanceKind::kCollinear, 10, rng);
  for (int i = 0; i < col.size(); ++i)
    for (int j = i + 1; j < col.size(); ++j)
      for (int k = j + 1; k < col.size(); ++k)
        CHECK(orient(col[i], col[j], col[k]) == 0);
  std::set<std::pair<double, double>> uniq;
  for (const Point& p : col) uniq.insert({p.x, p.y});
  CHECK(uniq.size() == 10);

  const PointSet coc = random_instance(InstanceKind::kCocircular, 40, rng);
  const Circle mec = min_enclosing_circle(coc);
  for (const Point& p : coc)
    CHECK(dist(mec.centre, p) == doctest::Approx(mec.radius).epsilon(1e-9));

  CHECK_THROWS_AS(random_instance(InstanceKind::kUniformSquare, 0, rng),
                  std::invalid_argument);
}
