#pragma once

#include <vector>

#include "minpower/geom.hpp"

namespace minpower {

struct ObjectiveEval {
  double value = 0.0;
  std::vector<int> active;  // farthest indices, relative tolerance 1e-12
  Point subgradient;        // valid subgradient using the lowest active index
};

// Value, active set and one subgradient of the objective
// P(s) = sum_i |s-x_i|^alpha + max_i |s-x_i|^alpha. A node coinciding with s
// contributes a zero gradient term (the powered norm is differentiable there
// for alpha > 1). Throws InvalidAlpha outside (1, 64].
ObjectiveEval eval_objective(const PointSet& ps, Point s, double alpha);

struct NumericSolution {
  Point s;
  double objective = 0.0;
  int iterations = 0;
  // Duality-certified upper bound on P(s) - min P, from a simplex-weighted
  // smoothed lower bound; always valid, tiny after a successful polish.
  double certified_gap = 0.0;
  bool converged = false;  // certified_gap small relative to the objective
};

// Convex solver for any alpha in (1, 64], independent of the combinatorial
// machinery: a coarse grid start, then damped Newton on the log-sum-exp
// smoothing of the max term with the smoothing parameter annealed down to
// value noise, then an exact polish (Newton on the smooth piece with the
// farthest node double-weighted, derivative bisection along a two-point
// bisector, or the circumcentre of the three farthest nodes), keeping the
// best value. Runs on a translated/rescaled copy so large alpha stays in
// floating range. `tol` sets the final smoothing level (tol^2 relative).
// Returns best-so-far with `converged = false` when the duality certificate
// never tightens.
NumericSolution solve_numeric(const PointSet& ps, double alpha,
                              double tol = 1e-8);

// Radial reweighting about s: each node moves to
// s + |s-x_i|^(alpha-2) (x_i - s), so its distance from s becomes
// |s-x_i|^(alpha-1). Nodes at s stay put.
PointSet transform_points(const PointSet& ps, Point s, double alpha);

// True when the quadratic centre of transform_points(ps, s, alpha) lands
// back on s within tol * diameter — the fixed-point description of the
// alpha-centre.
bool is_transform_fixed_point(const PointSet& ps, double alpha, Point s,
                              double tol = 1e-7);

struct FixedPointRun {
  Point s;
  int iterations = 0;
  bool converged = false;
};

// Experimental: iterate s <- quadratic_centre(transform(ps, s, alpha)) from
// the centroid; stops when a step falls below 1e-10 * diameter.
FixedPointRun fixed_point_solve(const PointSet& ps, double alpha,
                                int max_iter = 200);

struct EquidistantReport {
  // Premise flags (false premises make the matching invariant vacuous).
  bool one_centre_equidistant = false;  // every node on the enclosing circle
  bool quadratic_equidistant = false;   // s*_2 equidistant from every node
  // Invariant flags, true when the relation held for every alpha checked:
  // s*_alpha = C iff C is in the shifted-centroid hull; and an equidistant
  // s*_2 is the alpha-centre for every alpha.
  bool centre_rule = true;
  bool quadratic_rule = true;
};

// Verifies both equidistant-case invariants across the given alphas; throws
// PropertyViolated when one fails beyond tolerance.
EquidistantReport check_equidistant_invariance(const PointSet& ps,
                                               const std::vector<double>& alphas);

}  // namespace minpower
