#include "minpower/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "minpower/errors.hpp"

namespace minpower {
namespace {

double hull_scale(const PointSet& ps, const Hull& hull) {
  double lox = ps[hull.vertices[0]].x, hix = lox;
  double loy = ps[hull.vertices[0]].y, hiy = loy;
  for (int h : hull.vertices) {
    lox = std::min(lox, ps[h].x);
    hix = std::max(hix, ps[h].x);
    loy = std::min(loy, ps[h].y);
    hiy = std::max(hiy, ps[h].y);
  }
  return std::hypot(hix - lox, hiy - loy);
}

struct Candidate {
  Point s;
  std::vector<int> active;
  std::vector<double> lambdas;
  int case_id = 0;
  std::string witness;
};

// Drops exact zeros from the support and renormalises; downgrades the
// witness if the support turns out smaller than the face that fired.
Candidate finish(Candidate c) {
  std::vector<int> act;
  std::vector<double> lam;
  double total = 0.0;
  for (size_t k = 0; k < c.lambdas.size(); ++k) {
    double l = c.lambdas[k];
    if (l < 0.0) l = 0.0;  // callers pre-screen; this clips rounding fuzz
    if (l == 0.0) continue;
    act.push_back(c.active[k]);
    lam.push_back(l);
    total += l;
  }
  for (double& l : lam) l /= total;
  c.active = std::move(act);
  c.lambdas = std::move(lam);
  c.case_id = static_cast<int>(c.active.size());
  if (c.case_id == 1) c.witness = "region:" + std::to_string(c.active[0]);
  return c;
}

std::optional<Candidate> try_edge(const PointSet& ps, const TwoCentroidSet& tc,
                                  const FpvdEdge& e, double tol) {
  const int i = e.sites[0], j = e.sites[1];
  const Point Mi = tc.Mj[static_cast<size_t>(i)];
  const Point Mj = tc.Mj[static_cast<size_t>(j)];
  const Point d = ps[j] - ps[i];
  const Point mid = 0.5 * (ps[i] + ps[j]);

  // The segment MiMj is parallel to d, so it crosses the bisector of
  // (x_i, x_j) perpendicularly; the parameter is always well conditioned.
  const double denom = dot(Mj - Mi, d);
  double u = dot(mid - Mi, d) / denom;
  const double len_m = norm(Mj - Mi);
  const double eps_u = tol / std::max(len_m, 1e-300);
  if (u < -eps_u || u > 1.0 + eps_u) return std::nullopt;
  u = std::clamp(u, 0.0, 1.0);
  const Point s = Mi + u * (Mj - Mi);

  // s must also fall within the extent of the diagram edge.
  if (e.unbounded) {
    const double t = dot(s - e.a, e.b_or_dir);
    if (t < -tol || t > 1e15) return std::nullopt;
  } else {
    const Point ab = e.b_or_dir - e.a;
    const double len2 = norm2(ab);
    if (len2 == 0.0) {
      if (dist(s, e.a) > tol) return std::nullopt;
    } else {
      const double w = dot(s - e.a, ab) / len2;
      const double eps_w = tol / std::sqrt(len2);
      if (w < -eps_w || w > 1.0 + eps_w) return std::nullopt;
    }
  }

  Candidate c;
  c.s = s;
  c.active = {i, j};
  c.lambdas = {1.0 - u, u};
  c.case_id = 2;
  c.witness = "edge:" + std::to_string(i) + "-" + std::to_string(j);
  return finish(std::move(c));
}

// Barycentric weights of p in triangle (a, b, c); null when p falls outside
// by more than tol in distance.
std::optional<std::array<double, 3>> bary_in(Point a, Point b, Point c,
                                             Point p, double tol) {
  const Point u = b - a, v = c - a;
  const double det = cross(u, v);
  if (det == 0.0) return std::nullopt;
  const Point w = p - a;
  const double lb = cross(w, v) / det;
  const double lc = cross(u, w) / det;
  const double la = 1.0 - lb - lc;
  // Convert a negative weight into its metric violation: distance from p to
  // the far side of the triangle is |weight| * (that vertex's height).
  const std::array<double, 3> lam{la, lb, lc};
  const std::array<double, 3> opp{dist(b, c), dist(c, a), dist(a, b)};
  for (int k = 0; k < 3; ++k) {
    if (lam[k] >= 0.0) continue;
    const double height = std::abs(det) / std::max(opp[k], 1e-300);
    if (-lam[k] * height > tol) return std::nullopt;
  }
  return lam;
}

std::optional<Candidate> try_vertex(const TwoCentroidSet& tc, const Fpvd& vd,
                                    int vid, double tol) {
  const FpvdVertex& v = vd.vertices[static_cast<size_t>(vid)];
  std::vector<int> sites(v.sites.begin(), v.sites.end());
  if (v.group >= 0)
    sites = vd.cocircular_groups[static_cast<size_t>(v.group)];
  std::sort(sites.begin(), sites.end());

  const int g = static_cast<int>(sites.size());
  for (int a = 0; a < g - 2; ++a)
    for (int b = a + 1; b < g - 1; ++b)
      for (int c = b + 1; c < g; ++c) {
        const int ia = sites[static_cast<size_t>(a)];
        const int ib = sites[static_cast<size_t>(b)];
        const int ic = sites[static_cast<size_t>(c)];
        auto lam = bary_in(tc.Mj[static_cast<size_t>(ia)],
                           tc.Mj[static_cast<size_t>(ib)],
                           tc.Mj[static_cast<size_t>(ic)], v.pos, tol);
        if (!lam) continue;
        Candidate cand;
        cand.s = v.pos;
        cand.active = {ia, ib, ic};
        cand.lambdas = {std::max((*lam)[0], 0.0), std::max((*lam)[1], 0.0),
                        std::max((*lam)[2], 0.0)};
        cand.case_id = 3;
        cand.witness = "vertex:" + std::to_string(vid);
        return finish(std::move(cand));
      }
  return std::nullopt;
}

std::optional<Candidate> scan(const PointSet& ps, const TwoCentroidSet& tc,
                              const FarthestStructures& fs, ScanOrder order,
                              double tol) {
  const Fpvd& vd = fs.fpvd;

  // Region test first: the optimum is the farthest node's shifted centroid
  // exactly when that centroid still sees its own node as farthest.
  int rh = tc.r;
  if (vd.region_of[static_cast<size_t>(rh)] < 0) {
    // The global argmax can round onto a non-extreme node; fall back to the
    // farthest hull vertex.
    double best = -1.0;
    rh = vd.hull.vertices[0];
    for (int h : vd.hull.vertices) {
      const double d2 = dist2(tc.M, ps[h]);
      if (d2 > best) {
        best = d2;
        rh = h;
      }
    }
  }
  const int rregion = vd.region_of[static_cast<size_t>(rh)];
  if (region_contains(ps, vd, rregion, tc.Mj[static_cast<size_t>(rh)], tol)) {
    Candidate c;
    c.s = tc.Mj[static_cast<size_t>(rh)];
    c.active = {rh};
    c.lambdas = {1.0};
    c.case_id = 1;
    c.witness = "region:" + std::to_string(rh);
    return finish(std::move(c));
  }

  std::vector<int> edge_order(vd.edges.size());
  std::iota(edge_order.begin(), edge_order.end(), 0);
  std::vector<int> vert_order(vd.vertices.size());
  std::iota(vert_order.begin(), vert_order.end(), 0);
  if (order == ScanOrder::kCentroidFirst) {
    auto edge_ref = [&](int e) {
      const FpvdEdge& ed = vd.edges[static_cast<size_t>(e)];
      return ed.unbounded ? ed.a : 0.5 * (ed.a + ed.b_or_dir);
    };
    std::stable_sort(edge_order.begin(), edge_order.end(), [&](int x, int y) {
      return dist2(edge_ref(x), tc.M) < dist2(edge_ref(y), tc.M);
    });
    std::stable_sort(vert_order.begin(), vert_order.end(), [&](int x, int y) {
      return dist2(vd.vertices[static_cast<size_t>(x)].pos, tc.M) <
             dist2(vd.vertices[static_cast<size_t>(y)].pos, tc.M);
    });
  }

  for (int e : edge_order) {
    auto c = try_edge(ps, tc, vd.edges[static_cast<size_t>(e)], tol);
    if (c) return c;
  }
  for (int v : vert_order) {
    auto c = try_vertex(tc, vd, v, tol);
    if (c) return c;
  }
  return std::nullopt;
}

MinPowerResult trivial_result(const PointSet& ps) {
  MinPowerResult res;
  res.s_star = ps[0];
  res.objective = 0.0;
  res.case_id = 1;
  res.active = {0};
  res.lambdas = {1.0};
  res.witness_face = "region:0";
  return res;
}

}  // namespace

TwoCentroidSet two_centroids(const PointSet& ps) {
  const int n = ps.size();
  Point sum{0, 0};
  for (const Point& p : ps) sum = sum + p;
  TwoCentroidSet tc;
  tc.M = (1.0 / n) * sum;
  tc.Mj.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    tc.Mj[static_cast<size_t>(j)] = (1.0 / (n + 1)) * (ps[j] + sum);
  tc.r = 0;
  double best = dist2(tc.M, ps[0]);
  for (int j = 1; j < n; ++j) {
    const double d2 = dist2(tc.M, ps[j]);
    if (d2 > best) {
      best = d2;
      tc.r = j;
    }
  }
  return tc;
}

double power(Point s, const PointSet& ps, double alpha) {
  if (!std::isfinite(alpha) || alpha <= 1.0)
    throw InvalidAlpha("alpha must be finite and > 1");
  double sum = 0.0, far = 0.0;
  if (alpha == 2.0) {
    for (const Point& p : ps) {
      const double d2 = dist2(s, p);
      sum += d2;
      far = std::max(far, d2);
    }
  } else {
    for (const Point& p : ps) {
      const double t = std::pow(dist(s, p), alpha);
      sum += t;
      far = std::max(far, t);
    }
  }
  return sum + far;
}

MinPowerResult solve_quadratic_prepared(const PointSet& ps,
                                        const TwoCentroidSet& tc,
                                        const FarthestStructures& fs,
                                        ScanOrder order) {
  const double scale = std::max(hull_scale(ps, fs.fpvd.hull), 1e-300);

  std::optional<Candidate> c = scan(ps, tc, fs, order, 1e-12 * scale);
  if (!c) c = scan(ps, tc, fs, order, 1e-8 * scale);  // relaxed retry
  if (!c)
    throw std::logic_error(
        "no diagram face hosts the optimum; this cannot happen for a valid "
        "build");

  MinPowerResult res;
  res.s_star = c->s;
  res.objective = power(c->s, ps, 2.0);
  res.case_id = c->case_id;
  res.active = c->active;
  res.lambdas = c->lambdas;
  res.witness_face = c->witness;
  return res;
}

MinPowerResult solve_quadratic(const PointSet& ps, ScanOrder order) {
  if (distinct_indices(ps).size() == 1) return trivial_result(ps);
  const FarthestStructures fs = build_farthest_structures(ps);
  const TwoCentroidSet tc = two_centroids(ps);
  return solve_quadratic_prepared(ps, tc, fs, order);
}

std::vector<double> recover_multipliers(const PointSet& ps, Point s,
                                        const std::vector<int>& active) {
  const TwoCentroidSet tc = two_centroids(ps);
  const size_t k = active.size();
  if (k == 0) throw NotInHull("empty active set");
  const double scale = std::max(diameter(ps), 1e-300);

  std::vector<double> lam;
  if (k == 1) {
    lam = {1.0};
    if (dist(s, tc.Mj[static_cast<size_t>(active[0])]) > 1e-6 * scale)
      throw NotInHull("point is not the active shifted centroid");
  } else if (k == 2) {
    const Point a = tc.Mj[static_cast<size_t>(active[0])];
    const Point b = tc.Mj[static_cast<size_t>(active[1])];
    const double u = dot(s - a, b - a) / std::max(norm2(b - a), 1e-300);
    lam = {1.0 - u, u};
  } else {
    // Some 3-subset of the active centroids carries the point; take the
    // first that works, refusing only clear outsiders.
    std::optional<std::array<double, 3>> best;
    std::array<size_t, 3> best_idx{};
    for (size_t a = 0; a + 2 < k && !best; ++a)
      for (size_t b = a + 1; b + 1 < k && !best; ++b)
        for (size_t c = b + 1; c < k && !best; ++c) {
          auto l = bary_in(tc.Mj[static_cast<size_t>(active[a])],
                           tc.Mj[static_cast<size_t>(active[b])],
                           tc.Mj[static_cast<size_t>(active[c])], s,
                           1e-9 * scale);
          if (l) {
            best = l;
            best_idx = {a, b, c};
          }
        }
    if (!best) throw NotInHull("point outside the active centroid hull");
    lam.assign(k, 0.0);
    for (int t = 0; t < 3; ++t) lam[best_idx[static_cast<size_t>(t)]] = (*best)[static_cast<size_t>(t)];
  }

  double total = 0.0;
  for (double& l : lam) {
    if (l < -1e-9) throw NotInHull("negative barycentric weight");
    if (l < 1e-12) l = 0.0;
    total += l;
  }
  if (total <= 0.0) throw NotInHull("degenerate weights");
  for (double& l : lam) l /= total;
  return lam;
}

int classify_case(const PointSet& ps, const MinPowerResult& res) {
  auto fail = [](const char* msg) { throw InconsistentResult(msg); };

  if (res.active.size() != res.lambdas.size() || res.active.empty() ||
      res.active.size() > 3)
    fail("active set and weights disagree");
  if (!std::is_sorted(res.active.begin(), res.active.end()))
    fail("active set is not sorted");

  int support = 0;
  double total = 0.0;
  for (double l : res.lambdas) {
    if (l <= 0.0 || l > 1.0 + 1e-9) fail("weight outside (0, 1]");
    ++support;
    total += l;
  }
  if (std::abs(total - 1.0) > 1e-9) fail("weights do not sum to 1");
  if (support != res.case_id) fail("case id does not match support size");

  const TwoCentroidSet tc = two_centroids(ps);
  Point rec{0, 0};
  for (size_t k = 0; k < res.active.size(); ++k)
    rec = rec + res.lambdas[k] * tc.Mj[static_cast<size_t>(res.active[k])];
  const double scale = std::max(diameter(ps), 1e-300);
  if (dist(rec, res.s_star) > 1e-9 * scale)
    fail("s* does not reproduce from its support");

  const char* prefix[] = {"region:", "edge:", "vertex:"};
  if (res.witness_face.rfind(prefix[res.case_id - 1], 0) != 0)
    fail("witness face kind does not match the case");

  if (std::abs(power(res.s_star, ps, 2.0) - res.objective) >
      1e-9 * std::max(res.objective, 1.0))
    fail("stored objective is stale");

  return res.case_id;
}

KktResiduals kkt_residuals(const PointSet& ps, const MinPowerResult& res) {
  const TwoCentroidSet tc = two_centroids(ps);
  KktResiduals r;
  Point rec{0, 0};
  double total = 0.0;
  for (size_t k = 0; k < res.active.size(); ++k) {
    rec = rec + res.lambdas[k] * tc.Mj[static_cast<size_t>(res.active[k])];
    total += res.lambdas[k];
  }
  r.stationarity = dist(res.s_star, rec);
  r.multiplier_sum = std::abs(total - 1.0);
  double dmax2 = 0.0;
  for (const Point& p : ps) dmax2 = std::max(dmax2, dist2(res.s_star, p));
  r.complementarity = 0.0;
  for (size_t k = 0; k < res.active.size(); ++k) {
    const double d2 = dist2(res.s_star, ps[res.active[k]]);
    r.complementarity =
        std::max(r.complementarity, res.lambdas[k] * std::abs(dmax2 - d2));
  }
  return r;
}

OneCentreReport one_centre_checks(const PointSet& ps) {
  OneCentreReport rep;
  if (distinct_indices(ps).size() == 1) {
    rep = {true, true, true, true, true};
    return rep;
  }

  const double scale = std::max(diameter(ps), 1e-300);
  const Circle mec = min_enclosing_circle(ps);
  const Point C = mec.centre;
  const MinPowerResult res = solve_quadratic(ps);
  const TwoCentroidSet tc = two_centroids(ps);
  const FarthestStructures fs = build_farthest_structures(ps);

  // (1) The sites farthest from C form a face of the triangulation.
  {
    std::vector<int> far;
    for (int i : locate_farthest(ps, C))
      if (fs.fpvd.region_of[static_cast<size_t>(i)] >= 0) far.push_back(i);
    if (far.size() <= 1) {
      rep.farthest_set_is_face = far.size() == 1;
    } else if (far.size() == 2) {
      const std::array<int, 2> want{far[0], far[1]};
      rep.farthest_set_is_face =
          fs.fpvd.hull.size() == 2 ||
          std::find(fs.fpdt.edges.begin(), fs.fpdt.edges.end(), want) !=
              fs.fpdt.edges.end();
    } else {
      // Some triangle must live entirely inside the farthest set.
      for (const auto& tv : fs.fpdt.triangles) {
        if (std::binary_search(far.begin(), far.end(), tv[0]) &&
            std::binary_search(far.begin(), far.end(), tv[1]) &&
            std::binary_search(far.begin(), far.end(), tv[2])) {
          rep.farthest_set_is_face = true;
          break;
        }
      }
    }
  }

  // (2) M inside the hull of the active shifted centroids forces s* = C.
  // The active set is the minimal support of s*, not the farthest set of C;
  // the converse implication does not hold in general.
  {
    std::vector<Point> act_m;
    for (int i : res.active)
      act_m.push_back(tc.Mj[static_cast<size_t>(i)]);
    const double margin = convex_margin(act_m, tc.M);
    rep.m_in_hull_implies_centre =
        margin < 1e-9 * scale || dist(res.s_star, C) <= 1e-6 * scale;
  }

  // (3) s* = M exactly when M = C.
  {
    const double a = dist(res.s_star, tc.M) / scale;
    const double b = dist(tc.M, C) / scale;
    rep.m_fixed_iff_m_is_c =
        !((a <= 1e-10 && b > 1e-7) || (b <= 1e-10 && a > 1e-7));
  }

  // (4) When C is equidistant from every node, s* = C iff C lies in the
  // hull of all shifted centroids.
  {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const Point& p : ps) {
      const double d = dist(C, p);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    if (hi - lo > 1e-10 * scale) {
      rep.equidistant_rule = true;  // vacuous
    } else {
      const double margin = convex_margin(tc.Mj, C);
      const double move = dist(res.s_star, C) / scale;
      rep.equidistant_rule = !((move <= 1e-10 && margin < -1e-7 * scale) ||
                               (margin >= 1e-10 * scale && move > 1e-7));
    }
  }

  // (5) The farthest node's shifted centroid never overshoots the optimum's
  // distance to that node.
  rep.mr_within_radius =
      dist(tc.Mj[static_cast<size_t>(tc.r)], ps[tc.r]) <=
      dist(res.s_star, ps[tc.r]) + 1e-9 * scale;

  if (!rep.farthest_set_is_face)
    throw ImplicationViolated("farthest set of the 1-centre is not a face");
  if (!rep.m_in_hull_implies_centre)
    throw ImplicationViolated("M in active hull but s* != C");
  if (!rep.m_fixed_iff_m_is_c)
    throw ImplicationViolated("s* = M does not coincide with M = C");
  if (!rep.equidistant_rule)
    throw ImplicationViolated("equidistant 1-centre rule failed");
  if (!rep.mr_within_radius)
    throw ImplicationViolated("shifted centroid exceeds the optimal radius");

  return rep;
}

}  // namespace minpower
