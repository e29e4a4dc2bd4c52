#include "minpower/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "minpower/errors.hpp"
#include "minpower/numeric.hpp"

namespace minpower {
namespace {

double sqr(double v) { return v * v; }

double ratio_cap(int n, int k) {
  return sqr((n + 1.0) / n) / (k + 1) + static_cast<double>(k) / (k + 1);
}

bool strictly_inside_hull(const PointSet& ps, const Hull& hull, Point y) {
  const int m = hull.size();
  if (m < 3) return false;
  for (int i = 0; i < m; ++i) {
    const Point& a = ps[hull.vertices[static_cast<size_t>(i)]];
    const Point& b = ps[hull.vertices[static_cast<size_t>((i + 1) % m)]];
    if (orient(a, b, y) <= 0) return false;
  }
  return true;
}

// Distance from p to an FPVD edge (segment, ray, or zero-length piece).
double edge_distance(const FpvdEdge& e, Point p) {
  if (e.unbounded) {
    const double t = std::max(0.0, dot(p - e.a, e.b_or_dir));
    return dist(p, e.a + t * e.b_or_dir);
  }
  const Point d = e.b_or_dir - e.a;
  const double len2 = norm2(d);
  if (len2 <= 0.0) return dist(p, e.a);
  const double u = std::clamp(dot(p - e.a, d) / len2, 0.0, 1.0);
  return dist(p, e.a + u * d);
}

}  // namespace

RatioReport approx_ratio(const PointSet& ps) {
  const MinPowerResult opt = solve_quadratic(ps);
  if (!(opt.objective > 0.0))
    throw DegenerateInstance(
        "approx_ratio: optimum power is zero (all nodes coincide)");
  RatioReport rep;
  rep.n = ps.size();
  rep.s_star = opt.s_star;
  rep.p_star = opt.objective;
  rep.m = centroid(ps);
  rep.p_m = power(rep.m, ps, 2.0);
  rep.rho = rep.p_m / rep.p_star;
  rep.k = static_cast<int>(locate_farthest(ps, opt.s_star).size());
  rep.bound = ratio_cap(rep.n, rep.k);
  rep.slack = rep.bound - rep.rho;
  return rep;
}

std::vector<RatioLimitRow> ratio_limit_experiment(uint64_t seed,
                                                  const std::vector<int>& sizes,
                                                  int trials) {
  if (trials < 1) throw std::invalid_argument("ratio_limit_experiment: trials");
  std::vector<RatioLimitRow> rows;
  rows.reserve(sizes.size());
  for (int n : sizes) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (n + 1)));
    RatioLimitRow row;
    row.n = n;
    row.bound = ratio_cap(n, 1);  // worst admissible k
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
      const PointSet ps = random_instance(InstanceKind::kUniformSquare, n, rng);
      const RatioReport rep = approx_ratio(ps);
      row.max_rho = std::max(row.max_rho, rep.rho);
      sum += rep.rho;
    }
    row.mean_rho = sum / trials;
    rows.push_back(row);
  }
  return rows;
}

GeneratedInstance generate_target_instance(const PointSet& base, Point w,
                                           double tol) {
  const double d = diameter(base);
  const double tol_abs = tol * std::max(d, 1e-300);

  // Nothing to add when w already is the centre.
  const MinPowerResult base_opt = solve_quadratic(base);
  if (dist(base_opt.s_star, w) <= 1e-12 * std::max(d, 1e-300)) {
    return GeneratedInstance{base, w, w, 0, base,
                             dist(base_opt.s_star, w)};
  }

  const FarthestStructures fs = build_farthest_structures(base);
  const Fpvd& vd = fs.fpvd;

  // Locate the diagram face under w: nearest vertex first, then nearest edge.
  std::vector<int> active;
  double best_vd = std::numeric_limits<double>::infinity();
  int best_v = -1;
  for (int i = 0; i < static_cast<int>(vd.vertices.size()); ++i) {
    const double dv = dist(vd.vertices[static_cast<size_t>(i)].pos, w);
    if (dv < best_vd) {
      best_vd = dv;
      best_v = i;
    }
  }
  if (best_v >= 0 && best_vd <= tol_abs) {
    const FpvdVertex& v = vd.vertices[static_cast<size_t>(best_v)];
    if (v.group >= 0)
      active = vd.cocircular_groups[static_cast<size_t>(v.group)];
    else
      active.assign(v.sites.begin(), v.sites.end());
  } else {
    double best_ed = std::numeric_limits<double>::infinity();
    int best_e = -1;
    for (int i = 0; i < static_cast<int>(vd.edges.size()); ++i) {
      const double de = edge_distance(vd.edges[static_cast<size_t>(i)], w);
      if (de < best_ed) {
        best_ed = de;
        best_e = i;
      }
    }
    if (best_e < 0 || best_ed > tol_abs)
      throw TargetNotOnDiagram(
          "generate_target_instance: target is not on the farthest-point "
          "diagram (nearest edge " +
          std::to_string(best_ed) + ", nearest vertex " +
          std::to_string(best_vd) + ", tolerance " + std::to_string(tol_abs) +
          ")");
    const auto& s = vd.edges[static_cast<size_t>(best_e)].sites;
    active.assign(s.begin(), s.end());
  }
  std::sort(active.begin(), active.end());

  if (!strictly_inside_hull(base, vd.hull, w))
    throw NoFeasibleM(
        "generate_target_instance: target must lie strictly inside the hull");

  const TwoCentroidSet tc = two_centroids(base);
  Point u{0.0, 0.0};
  for (int j : active) u = u + tc.Mj[static_cast<size_t>(j)];
  u = (1.0 / static_cast<double>(active.size())) * u;

  // y(m) = w + (n+1)/m * (w - u) walks toward w as m grows; feasibility
  // (strict interior) is monotone in m, so double then bisect for the
  // smallest feasible multiplicity.
  const int n = base.size();
  const auto feasible = [&](int64_t m) {
    const Point y = w + ((n + 1.0) / static_cast<double>(m)) * (w - u);
    return strictly_inside_hull(base, vd.hull, y);
  };
  int64_t hi = 1;
  while (!feasible(hi)) {
    hi *= 2;
    if (hi > (int64_t{1} << 40))
      throw NoFeasibleM(
          "generate_target_instance: no practical multiplicity keeps the "
          "added node inside the hull");
  }
  int64_t lo = hi / 2;  // infeasible (or 0)
  while (hi - lo > 1) {
    const int64_t mid = lo + (hi - lo) / 2;
    (feasible(mid) ? hi : lo) = mid;
  }
  const int m = static_cast<int>(hi);
  const Point y = w + ((n + 1.0) / m) * (w - u);

  std::vector<Point> pts = base.points();
  pts.insert(pts.end(), static_cast<size_t>(m), y);
  PointSet result(std::move(pts));
  const MinPowerResult opt = solve_quadratic(result);
  return GeneratedInstance{base, w, y, m, std::move(result),
                           dist(opt.s_star, w)};
}

std::vector<AlphaSweepRow> alpha_sweep(const PointSet& ps,
                                       const std::vector<double>& alphas) {
  const Point c1 = min_enclosing_circle(ps).centre;
  const Point s2 = solve_quadratic(ps).s_star;
  const Point m = centroid(ps);
  std::vector<AlphaSweepRow> rows;
  rows.reserve(alphas.size());
  for (double a : alphas) {
    const NumericSolution sol = solve_numeric(ps, a);
    AlphaSweepRow row;
    row.alpha = a;
    row.s_alpha = sol.s;
    row.dist_to_one_centre = dist(sol.s, c1);
    row.dist_to_quadratic = dist(sol.s, s2);
    row.dist_to_centroid = dist(sol.s, m);
    row.certified_gap = sol.certified_gap;
    rows.push_back(row);
  }
  return rows;
}

PointSet random_instance(InstanceKind kind, int n, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("random_instance: n must be >= 1");
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(n));
  switch (kind) {
    case InstanceKind::kUniformSquare: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (int i = 0; i < n; ++i) {
        const double x = u(rng);
        const double y = u(rng);
        pts.push_back({x, y});
      }
      break;
    }
    case InstanceKind::kCocircular: {
      // Keep the circle centre inside the hull (largest angular gap < pi) so
      // every node is equidistant from the 1-centre.
      std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
      std::vector<double> angles(static_cast<size_t>(n));
      for (int attempt = 0; attempt < 10000; ++attempt) {
        for (double& a : angles) a = ang(rng);
        if (n < 3) break;
        std::vector<double> sorted = angles;
        std::sort(sorted.begin(), sorted.end());
        double gap = sorted.front() + 2.0 * std::numbers::pi - sorted.back();
        for (size_t i = 1; i < sorted.size(); ++i)
          gap = std::max(gap, sorted[i] - sorted[i - 1]);
        if (gap < std::numbers::pi - 1e-6) break;
      }
      for (double a : angles) pts.push_back({std::cos(a), std::sin(a)});
      break;
    }
    case InstanceKind::kClusters: {
      std::uniform_real_distribution<double> cu(0.0, 10.0);
      std::normal_distribution<double> jitter(0.0, 0.3);
      Point c[3];
      for (auto& p : c) p = {cu(rng), cu(rng)};
      for (int i = 0; i < n; ++i) {
        const Point& b = c[i % 3];
        const double jx = jitter(rng);
        const double jy = jitter(rng);
        pts.push_back({b.x + jx, b.y + jy});
      }
      break;
    }
    case InstanceKind::kCollinear: {
      // Dyadic parameters on an integer direction: coordinates are exact and
      // the triple determinant vanishes identically, so collinearity is exact.
      std::uniform_int_distribution<int> dcomp(-4, 4);
      int dx = 0;
      int dy = 0;
      while (dx == 0 && dy == 0) {
        dx = dcomp(rng);
        dy = dcomp(rng);
      }
      std::uniform_int_distribution<int> bcomp(-64, 64);
      const Point base{bcomp(rng) / 64.0, bcomp(rng) / 64.0};
      const int span = std::max(4096, 2 * n);
      std::uniform_int_distribution<int> kdist(-span, span);
      std::unordered_set<int> used;
      while (static_cast<int>(used.size()) < n) used.insert(kdist(rng));
      std::vector<int> ks(used.begin(), used.end());
      std::sort(ks.begin(), ks.end());
      for (int k : ks) {
        const double t = k / 1024.0;
        pts.push_back({base.x + t * dx, base.y + t * dy});
      }
      break;
    }
  }
  return PointSet(std::move(pts));
}

}  // namespace minpower
