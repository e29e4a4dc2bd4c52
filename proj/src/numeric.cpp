#include "minpower/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "minpower/errors.hpp"
#include "minpower/solver.hpp"

namespace minpower {
namespace {

void check_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 1.0 || alpha > 64.0)
    throw InvalidAlpha("alpha must lie in (1, 64]");
}

// Working copy translated to the centroid and scaled to diameter 2, so
// powered distances stay well inside double range up to alpha = 64.
struct Scaled {
  std::vector<Point> y;
  Point shift;
  double factor = 1.0;  // original = shift + point / factor

  Point to_original(Point t) const { return shift + (1.0 / factor) * t; }
};

Scaled make_scaled(const PointSet& ps) {
  Scaled sc;
  sc.shift = centroid(ps);
  const double d = diameter(ps);
  sc.factor = d > 0 ? 2.0 / d : 1.0;
  sc.y.reserve(static_cast<size_t>(ps.size()));
  for (const Point& p : ps) sc.y.push_back(sc.factor * (p - sc.shift));
  return sc;
}

double pval(const std::vector<Point>& y, Point t, double alpha) {
  double sum = 0.0, far = 0.0;
  for (const Point& p : y) {
    const double v = std::pow(dist(t, p), alpha);
    sum += v;
    far = std::max(far, v);
  }
  return sum + far;
}

// Gradient of sum_i w_i |t-y_i|^alpha for node weights w (nullptr = all 1).
Point weighted_grad(const std::vector<Point>& y, const double* w, Point t,
                    double alpha) {
  Point g{0, 0};
  for (size_t i = 0; i < y.size(); ++i) {
    const double d = dist(t, y[i]);
    if (d == 0.0) continue;
    const double c = (w ? w[i] : 1.0) * alpha * std::pow(d, alpha - 2.0);
    g = g + c * (t - y[i]);
  }
  return g;
}

double weighted_val(const std::vector<Point>& y, const double* w, Point t,
                    double alpha) {
  double v = 0.0;
  for (size_t i = 0; i < y.size(); ++i)
    v += (w ? w[i] : 1.0) * std::pow(dist(t, y[i]), alpha);
  return v;
}

// Newton minimisation of the smooth weighted sum; backtracks on the value,
// falls back to a gradient step when the Hessian is poorly conditioned.
// Near the minimum the value plateaus at rounding noise while the gradient
// is still ~1e-8, so a few small full steps are taken on trust; alpha = 2
// short-circuits to the exact weighted centroid.
Point newton_weighted(const std::vector<Point>& y, const double* w, Point t0,
                      double alpha, int iters) {
  if (alpha == 2.0) {
    double W = 0.0;
    Point s{0, 0};
    for (size_t i = 0; i < y.size(); ++i) {
      const double wi = w ? w[i] : 1.0;
      W += wi;
      s = s + wi * y[i];
    }
    return (1.0 / W) * s;
  }
  Point t = t0;
  double ft = weighted_val(y, w, t, alpha);
  int trusted_left = 8;
  for (int it = 0; it < iters; ++it) {
    Point g{0, 0};
    double hxx = 0, hxy = 0, hyy = 0;
    for (size_t i = 0; i < y.size(); ++i) {
      const double wi = w ? w[i] : 1.0;
      const Point r = t - y[i];
      const double d = norm(r);
      if (d == 0.0) continue;
      const double da2 = std::pow(d, alpha - 2.0);
      const double c1 = wi * alpha * da2;
      g = g + c1 * r;
      const double c2 = wi * alpha * (alpha - 2.0) * da2 / (d * d);
      hxx += c1 + c2 * r.x * r.x;
      hyy += c1 + c2 * r.y * r.y;
      hxy += c2 * r.x * r.y;
    }
    const double gn = norm(g);
    if (gn < 1e-17 * (1.0 + std::abs(ft))) break;
    const double det = hxx * hyy - hxy * hxy;
    Point step;
    if (det > 1e-30 && hxx > 0) {
      step = {-(hyy * g.x - hxy * g.y) / det, -(hxx * g.y - hxy * g.x) / det};
    } else {
      step = (-1.0 / gn) * g;
    }
    double scale = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      const Point cand = t + scale * step;
      const double fc = weighted_val(y, w, cand, alpha);
      if (fc < ft) {
        t = cand;
        ft = fc;
        moved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!moved) {
      if (trusted_left > 0 && det > 1e-30 && hxx > 0 &&
          norm(step) <= 1e-4 * (1.0 + norm(t))) {
        --trusted_left;
        t = t + step;
        ft = weighted_val(y, w, t, alpha);
        continue;
      }
      break;
    }
  }
  return t;
}

std::vector<int> active_at(const std::vector<Point>& y, Point t,
                           double rel_band) {
  double dmax = 0.0;
  for (const Point& p : y) dmax = std::max(dmax, dist(t, p));
  const double lim = dmax * (1.0 - rel_band);
  std::vector<int> a;
  for (size_t i = 0; i < y.size(); ++i)
    if (dist(t, y[i]) >= lim) a.push_back(static_cast<int>(i));
  return a;
}

// Smoothed objective F_mu = sum_i v_i + mu log sum_i exp(v_i / mu) with
// v_i = |t - y_i|^alpha: smooth, strongly convex, and within mu log n of P.
// Both Hessian pieces carry d^(alpha-2), so nothing overflows for tiny d,
// and softmax weights of far nodes underflow to exact zeros, which keeps the
// (1/mu)-scaled crease curvature free of cancellation noise.
struct SmoothEval {
  double value = 0.0;
  Point grad;
  double hxx = 0.0, hxy = 0.0, hyy = 0.0;
};

SmoothEval smooth_eval(const std::vector<Point>& y, Point t, double alpha,
                       double mu) {
  const size_t n = y.size();
  std::vector<double> v(n), c1(n);
  std::vector<Point> gi(n);
  double vmax = 0.0, sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double d = dist(t, y[i]);
    v[i] = std::pow(d, alpha);
    sum += v[i];
    vmax = std::max(vmax, v[i]);
    c1[i] = d > 0.0 ? alpha * std::pow(d, alpha - 2.0) : 0.0;
    gi[i] = c1[i] * (t - y[i]);
  }
  std::vector<double> p(n);
  double z = 0.0;
  for (size_t i = 0; i < n; ++i) {
    p[i] = std::exp((v[i] - vmax) / mu);
    z += p[i];
  }
  for (double& q : p) q /= z;

  SmoothEval ev;
  ev.value = sum + mu * std::log(z) + vmax;
  Point gbar{0, 0};
  for (size_t i = 0; i < n; ++i) {
    ev.grad = ev.grad + gi[i];
    gbar = gbar + p[i] * gi[i];
    const double d = dist(t, y[i]);
    if (d == 0.0) continue;
    const Point u = (1.0 / d) * (t - y[i]);
    const double w = 1.0 + p[i];
    const double c2 = alpha * (alpha - 2.0) * std::pow(d, alpha - 2.0);
    ev.hxx += w * (c1[i] + c2 * u.x * u.x);
    ev.hyy += w * (c1[i] + c2 * u.y * u.y);
    ev.hxy += w * c2 * u.x * u.y;
  }
  ev.grad = ev.grad + gbar;
  for (size_t i = 0; i < n; ++i) {
    if (p[i] == 0.0) continue;
    const Point r = gi[i] - gbar;
    ev.hxx += p[i] / mu * r.x * r.x;
    ev.hyy += p[i] / mu * r.y * r.y;
    ev.hxy += p[i] / mu * r.x * r.y;
  }
  return ev;
}

// Damped Newton on F_mu from t; returns the minimiser found and counts
// iterations. Globally convergent: the objective is smooth and strictly
// convex, and steps backtrack on the value.
Point newton_smoothed(const std::vector<Point>& y, Point t, double alpha,
                      double mu, int* iters) {
  double ft = smooth_eval(y, t, alpha, mu).value;
  for (int it = 0; it < 60; ++it) {
    const SmoothEval ev = smooth_eval(y, t, alpha, mu);
    const double gn = norm(ev.grad);
    if (gn <= 1e-15 * (1.0 + std::abs(ev.value))) break;
    const double det = ev.hxx * ev.hyy - ev.hxy * ev.hxy;
    Point step;
    if (det > 0 && ev.hxx > 0) {
      step = {-(ev.hyy * ev.grad.x - ev.hxy * ev.grad.y) / det,
              -(ev.hxx * ev.grad.y - ev.hxy * ev.grad.x) / det};
    } else {
      step = (-0.1 / gn) * ev.grad;
    }
    ++*iters;
    double scale = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 50; ++bt) {
      const Point cand = t + scale * step;
      const double fc = smooth_eval(y, cand, alpha, mu).value;
      if (fc < ft) {
        t = cand;
        ft = fc;
        moved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!moved || norm(scale * step) <= 1e-17 * (1.0 + norm(t))) break;
  }
  return t;
}

// One-dimensional minimisation of P along the bisector of nodes a and b by
// derivative-sign bisection. On that line the farthest-of-(a,b) term is
// smooth, so the derivative is exact wherever (a,b) really are farthest.
Point bisector_polish(const std::vector<Point>& y, Point t, double alpha,
                      int a, int b) {
  const Point mid = 0.5 * (y[static_cast<size_t>(a)] + y[static_cast<size_t>(b)]);
  Point u = rot90(y[static_cast<size_t>(b)] - y[static_cast<size_t>(a)]);
  const double un = norm(u);
  if (un == 0.0) return t;
  u = (1.0 / un) * u;

  auto dphi = [&](double tau) {
    const Point s = mid + tau * u;
    double der = 0.0;
    for (size_t i = 0; i < y.size(); ++i) {
      const double d = dist(s, y[i]);
      if (d == 0.0) continue;
      der += alpha * std::pow(d, alpha - 2.0) * dot(s - y[i], u);
    }
    const double da = dist(s, y[static_cast<size_t>(a)]);
    if (da > 0.0)
      der += alpha * std::pow(da, alpha - 2.0) *
             dot(s - y[static_cast<size_t>(a)], u);
    return der;
  };

  double tau = dot(t - mid, u);
  double lo = tau, hi = tau;
  double dlo = dphi(lo), dhi = dphi(hi);
  double h = 0.25;
  for (int k = 0; k < 80 && dlo > 0; ++k, h *= 2) {
    lo -= h;
    dlo = dphi(lo);
  }
  h = 0.25;
  for (int k = 0; k < 80 && dhi < 0; ++k, h *= 2) {
    hi += h;
    dhi = dphi(hi);
  }
  if (dlo > 0 || dhi < 0) return t;
  for (int k = 0; k < 120; ++k) {
    const double mid_tau = 0.5 * (lo + hi);
    if (dphi(mid_tau) <= 0)
      lo = mid_tau;
    else
      hi = mid_tau;
  }
  return mid + (0.5 * (lo + hi)) * u;
}

Point circumcentre_of(const std::vector<Point>& y, int a, int b, int c,
                      Point fallback) {
  if (orient(y[static_cast<size_t>(a)], y[static_cast<size_t>(b)],
             y[static_cast<size_t>(c)]) == 0)
    return fallback;
  return circumcircle(y[static_cast<size_t>(a)], y[static_cast<size_t>(b)],
                      y[static_cast<size_t>(c)])
      .centre;
}

// Least squares of g + sum lambda_j h_j over the simplex, by enumerating the
// faces of the (at most 3-point) simplex.
std::vector<double> simplex_fit(Point g, const std::vector<Point>& h) {
  const int k = static_cast<int>(h.size());
  std::vector<double> best(static_cast<size_t>(k), 0.0);
  double best_val = std::numeric_limits<double>::infinity();

  auto consider = [&](const std::vector<double>& lam) {
    for (double l : lam)
      if (l < -1e-12 || l > 1.0 + 1e-12) return;
    Point r = g;
    for (int j = 0; j < k; ++j) r = r + lam[static_cast<size_t>(j)] * h[static_cast<size_t>(j)];
    const double v = norm2(r);
    if (v < best_val) {
      best_val = v;
      best = lam;
    }
  };

  // Vertices.
  for (int j = 0; j < k; ++j) {
    std::vector<double> lam(static_cast<size_t>(k), 0.0);
    lam[static_cast<size_t>(j)] = 1.0;
    consider(lam);
  }
  // Edges: lambda on {i, j} with weight t on j minimising the quadratic.
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const Point de = h[static_cast<size_t>(j)] - h[static_cast<size_t>(i)];
      const double dn = norm2(de);
      if (dn == 0.0) continue;
      const double t =
          std::clamp(-dot(g + h[static_cast<size_t>(i)], de) / dn, 0.0, 1.0);
      std::vector<double> lam(static_cast<size_t>(k), 0.0);
      lam[static_cast<size_t>(i)] = 1.0 - t;
      lam[static_cast<size_t>(j)] = t;
      consider(lam);
    }
  // Interior of a 3-face: solve the equality-constrained least squares.
  if (k == 3) {
    const Point d1 = h[1] - h[0], d2 = h[2] - h[0];
    const double a11 = dot(d1, d1), a12 = dot(d1, d2), a22 = dot(d2, d2);
    const Point r0 = g + h[0];
    const double b1 = -dot(r0, d1), b2 = -dot(r0, d2);
    const double det = a11 * a22 - a12 * a12;
    if (det > 1e-30) {
      const double l1 = (b1 * a22 - b2 * a12) / det;
      const double l2 = (a11 * b2 - a12 * b1) / det;
      consider({1.0 - l1 - l2, l1, l2});
    }
  }
  return best;
}

// The same fit over any number of nodes: project -g onto the convex hull of
// the h_j and read off barycentric weights, which have at most three
// positive entries. Any simplex lambda yields a valid lower bound, so
// clamping of rounding noise only weakens the certificate, never breaks it.
std::vector<double> simplex_fit_any(Point g, const std::vector<Point>& h) {
  const int k = static_cast<int>(h.size());
  if (k <= 3) return simplex_fit(g, h);
  std::vector<double> lam(static_cast<size_t>(k), 0.0);
  const Point target{-g.x, -g.y};
  const Hull hull = convex_hull(PointSet{std::vector<Point>(h)});
  const auto& v = hull.vertices;

  auto on_segment = [&](int ia, int ib) {
    const Point de = h[static_cast<size_t>(ib)] - h[static_cast<size_t>(ia)];
    const double dn = norm2(de);
    const double t =
        dn == 0.0
            ? 0.0
            : std::clamp(dot(target - h[static_cast<size_t>(ia)], de) / dn,
                         0.0, 1.0);
    std::vector<double> l(static_cast<size_t>(k), 0.0);
    l[static_cast<size_t>(ia)] = 1.0 - t;
    l[static_cast<size_t>(ib)] = t;
    return l;
  };
  auto resid = [&](const std::vector<double>& l) {
    Point r = g;
    for (int j = 0; j < k; ++j)
      r = r + l[static_cast<size_t>(j)] * h[static_cast<size_t>(j)];
    return norm2(r);
  };

  if (hull.size() == 1) {
    lam[static_cast<size_t>(v[0])] = 1.0;
    return lam;
  }
  if (hull.size() == 2) return on_segment(v[0], v[1]);

  // Walk the triangle fan; inside a triangle the barycentric solve is exact.
  for (size_t i = 1; i + 1 < v.size(); ++i) {
    const Point& a = h[static_cast<size_t>(v[0])];
    const Point& b = h[static_cast<size_t>(v[i])];
    const Point& c = h[static_cast<size_t>(v[i + 1])];
    if (orient(a, b, target) >= 0 && orient(b, c, target) >= 0 &&
        orient(c, a, target) >= 0) {
      const Point d1 = b - a, d2 = c - a, r = target - a;
      const double det = cross(d1, d2);
      if (det != 0.0) {
        const double l1 = std::clamp(cross(r, d2) / det, 0.0, 1.0);
        const double l2 = std::clamp(cross(d1, r) / det, 0.0, 1.0);
        const double l0 = std::clamp(1.0 - l1 - l2, 0.0, 1.0);
        const double sum = l0 + l1 + l2;
        lam[static_cast<size_t>(v[0])] = l0 / sum;
        lam[static_cast<size_t>(v[i])] = l1 / sum;
        lam[static_cast<size_t>(v[i + 1])] = l2 / sum;
        return lam;
      }
    }
  }
  // Outside the hull: best clamped projection over the boundary edges.
  std::vector<double> best = on_segment(v[0], v[1]);
  double bv = resid(best);
  for (size_t i = 1; i < v.size(); ++i) {
    const auto cand = on_segment(v[i], v[(i + 1) % v.size()]);
    const double cv = resid(cand);
    if (cv < bv) {
      bv = cv;
      best = cand;
    }
  }
  return best;
}

}  // namespace

ObjectiveEval eval_objective(const PointSet& ps, Point s, double alpha) {
  check_alpha(alpha);
  ObjectiveEval ev;
  double dmax = 0.0;
  for (const Point& p : ps) dmax = std::max(dmax, dist(s, p));
  const double lim = dmax * (1.0 - 1e-12);
  double sum = 0.0;
  for (int i = 0; i < ps.size(); ++i) {
    const double d = dist(s, ps[i]);
    sum += std::pow(d, alpha);
    if (d >= lim) ev.active.push_back(i);
  }
  ev.value = sum + std::pow(dmax, alpha);

  Point g{0, 0};
  for (const Point& p : ps) {
    const double d = dist(s, p);
    if (d == 0.0) continue;
    g = g + alpha * std::pow(d, alpha - 2.0) * (s - p);
  }
  const Point& xa = ps[ev.active[0]];
  const double da = dist(s, xa);
  if (da > 0.0) g = g + alpha * std::pow(da, alpha - 2.0) * (s - xa);
  ev.subgradient = g;
  return ev;
}

NumericSolution solve_numeric(const PointSet& ps, double alpha, double tol) {
  check_alpha(alpha);
  NumericSolution out;
  const double diam = diameter(ps);
  if (diam == 0.0) {
    out.s = ps[0];
    out.objective = 0.0;
    out.converged = true;
    return out;
  }

  const Scaled sc = make_scaled(ps);
  const std::vector<Point>& y = sc.y;
  const int n = static_cast<int>(y.size());

  // --- multi-start: centroid plus a 17x17 grid over the bounding box ---
  double lox = y[0].x, hix = y[0].x, loy = y[0].y, hiy = y[0].y;
  for (const Point& p : y) {
    lox = std::min(lox, p.x);
    hix = std::max(hix, p.x);
    loy = std::min(loy, p.y);
    hiy = std::max(hiy, p.y);
  }
  Point best{0, 0};
  double fbest = pval(y, best, alpha);
  for (int gx = 0; gx < 17; ++gx)
    for (int gy = 0; gy < 17; ++gy) {
      const Point t{lox + (hix - lox) * gx / 16.0,
                    loy + (hiy - loy) * gy / 16.0};
      const double f = pval(y, t, alpha);
      if (f < fbest) {
        fbest = f;
        best = t;
      }
    }

  // --- annealed smoothing: Newton on F_mu while mu shrinks to noise ---
  int iters = 0;
  Point t = best;
  double vmax0 = 0.0;
  for (const Point& p : y) vmax0 = std::max(vmax0, std::pow(dist(t, p), alpha));
  const double mu_min =
      std::max(tol * tol, 1e-16) * std::max(fbest, 1e-300);
  double mu = std::max(0.25 * std::max(vmax0, 1e-300), mu_min);
  for (;;) {
    t = newton_smoothed(y, t, alpha, mu, &iters);
    const double f = pval(y, t, alpha);
    if (f < fbest) {
      fbest = f;
      best = t;
    }
    if (mu <= mu_min) break;
    mu = std::max(mu * 0.0625, mu_min);
  }

  // --- active-set polish: try every local strategy, keep the best value ---
  // The strategies assume an active set of size 1, 2 or 3; wrong guesses are
  // harmless because candidates are accepted by value. Ties are accepted: at
  // the optimum the polished point is better in position even when the
  // values round to the same double.
  {
    std::vector<int> rank(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) rank[static_cast<size_t>(i)] = i;
    std::sort(rank.begin(), rank.end(), [&](int a, int b) {
      return dist(best, y[static_cast<size_t>(a)]) >
             dist(best, y[static_cast<size_t>(b)]);
    });
    std::vector<Point> cands;
    {
      std::vector<double> w(static_cast<size_t>(n), 1.0);
      w[static_cast<size_t>(rank[0])] = 2.0;
      cands.push_back(newton_weighted(y, w.data(), best, alpha, 40));
    }
    if (n >= 2) cands.push_back(bisector_polish(y, best, alpha, rank[0], rank[1]));
    if (n >= 3) cands.push_back(circumcentre_of(y, rank[0], rank[1], rank[2], best));
    for (const Point& cand : cands) {
      const double f = pval(y, cand, alpha);
      if (f <= fbest) {
        fbest = f;
        best = cand;
      }
    }
  }

  // --- duality certificate ---
  // q(lambda) = min_t sum w_i |t - y_i|^alpha lower-bounds the optimum for
  // any simplex lambda on any node subset, corrected for the inexact inner
  // minimisation via its gradient norm and a radius bound on the inner
  // minimiser (inside the scaled hull). The active set is guessed at
  // several widths and the best certificate kept: near a tie the distance
  // ranking alone can miss a partner node and leave a slack lambda.
  double gap = std::numeric_limits<double>::infinity();
  for (double band : {1e-12, 1e-9, 1e-7, 1e-5}) {
    const auto act = active_at(y, best, band);
    const int k = static_cast<int>(act.size());
    const Point gsum = weighted_grad(y, nullptr, best, alpha);
    std::vector<Point> h;
    for (int j = 0; j < k; ++j) {
      const Point& xa = y[static_cast<size_t>(act[static_cast<size_t>(j)])];
      const double d = dist(best, xa);
      h.push_back(d == 0.0 ? Point{0, 0}
                           : alpha * std::pow(d, alpha - 2.0) * (best - xa));
    }
    const std::vector<double> lam = simplex_fit_any(gsum, h);

    std::vector<double> w(static_cast<size_t>(n), 1.0);
    for (int j = 0; j < k; ++j)
      w[static_cast<size_t>(act[static_cast<size_t>(j)])] += lam[static_cast<size_t>(j)];

    const Point inner = newton_weighted(y, w.data(), best, alpha, 60);
    const double q = weighted_val(y, w.data(), inner, alpha) -
                     norm(weighted_grad(y, w.data(), inner, alpha)) * 4.0;
    gap = std::min(gap, std::max(fbest - q, 0.0));
  }

  const double unscale = std::pow(1.0 / sc.factor, alpha);
  out.s = sc.to_original(best);
  out.objective = power(out.s, ps, alpha);
  out.iterations = iters;
  out.certified_gap = gap * unscale;
  out.converged = gap <= 1e-9 * std::max(fbest, 1e-30);
  return out;
}

PointSet transform_points(const PointSet& ps, Point s, double alpha) {
  check_alpha(alpha);
  std::vector<Point> out;
  out.reserve(static_cast<size_t>(ps.size()));
  for (const Point& p : ps) {
    const double d = dist(s, p);
    out.push_back(d == 0.0 ? s : s + std::pow(d, alpha - 2.0) * (p - s));
  }
  return PointSet(std::move(out));
}

bool is_transform_fixed_point(const PointSet& ps, double alpha, Point s,
                              double tol) {
  const PointSet mapped = transform_points(ps, s, alpha);
  const MinPowerResult res = solve_quadratic(mapped);
  return dist(res.s_star, s) <= tol * std::max(diameter(ps), 1e-300);
}

FixedPointRun fixed_point_solve(const PointSet& ps, double alpha,
                                int max_iter) {
  check_alpha(alpha);
  FixedPointRun run;
  // Work on a normalised copy and renormalise each round: the quadratic
  // centre commutes with similarities about s, so fixed points are
  // unchanged, while raw distances (powered to alpha-1 per round) would
  // overflow or underflow within a few iterations.
  const Scaled sc = make_scaled(ps);
  const PointSet work{std::vector<Point>(sc.y)};
  Point s = sc.factor * (centroid(ps) - sc.shift);
  for (int k = 0; k < max_iter; ++k) {
    ++run.iterations;
    PointSet mapped = transform_points(work, s, alpha);
    const double dm = diameter(mapped);
    if (dm > 0.0 && std::isfinite(dm)) {
      std::vector<Point> renorm;
      renorm.reserve(static_cast<size_t>(mapped.size()));
      const double f = 2.0 / dm;
      for (const Point& p : mapped) renorm.push_back(s + f * (p - s));
      mapped = PointSet(std::move(renorm));
    }
    const Point next = solve_quadratic(mapped).s_star;
    const double step = dist(next, s);
    s = next;
    if (step <= 1e-10 * 2.0) {
      run.converged = true;
      break;
    }
  }
  run.s = sc.to_original(s);
  return run;
}

EquidistantReport check_equidistant_invariance(
    const PointSet& ps, const std::vector<double>& alphas) {
  EquidistantReport rep;
  const double scale = std::max(diameter(ps), 1e-300);
  const Circle mec = min_enclosing_circle(ps);
  const TwoCentroidSet tc = two_centroids(ps);
  const MinPowerResult quad = solve_quadratic(ps);

  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const Point& p : ps) {
    const double d = dist(mec.centre, p);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  rep.one_centre_equidistant = hi - lo <= 1e-9 * scale;

  double qlo = std::numeric_limits<double>::infinity(), qhi = 0.0;
  for (const Point& p : ps) {
    const double d = dist(quad.s_star, p);
    qlo = std::min(qlo, d);
    qhi = std::max(qhi, d);
  }
  rep.quadratic_equidistant = qhi - qlo <= 1e-9 * scale;

  // Scaling about an equidistant centre keeps hull membership unchanged, so
  // the transformed-centroid test reduces to the original centroids.
  std::vector<Point> mj(tc.Mj.begin(), tc.Mj.end());

  for (double a : alphas) {
    const NumericSolution sol = solve_numeric(ps, a);
    if (rep.one_centre_equidistant) {
      const double margin = convex_margin(mj, mec.centre);
      const double move = dist(sol.s, mec.centre);
      if ((move <= 1e-6 * scale && margin < -1e-6 * scale) ||
          (margin >= 1e-6 * scale && move > 1e-5 * scale))
        rep.centre_rule = false;
    }
    if (rep.quadratic_equidistant) {
      if (dist(sol.s, quad.s_star) > 1e-6 * scale) rep.quadratic_rule = false;
    }
  }

  if (!rep.centre_rule)
    throw PropertyViolated("equidistant 1-centre rule failed for some alpha");
  if (!rep.quadratic_rule)
    throw PropertyViolated(
        "equidistant quadratic centre is not the alpha-centre");
  return rep;
}

}  // namespace minpower
