#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "minpower/geom.hpp"
#include "minpower/solver.hpp"

namespace minpower {

// How much worse the centroid is than the true centre, against the proven
// cap (1/(k+1)) ((n+1)/n)^2 + k/(k+1), where k counts the nodes farthest
// from the optimum.
struct RatioReport {
  double rho = 1.0;    // P(M) / P(s*)
  int k = 0;
  int n = 0;
  double bound = 1.0;
  double slack = 0.0;  // bound - rho, must stay >= -1e-9
  Point m;
  Point s_star;
  double p_m = 0.0;
  double p_star = 0.0;
};

// Throws DegenerateInstance when every node coincides (P(s*) = 0).
RatioReport approx_ratio(const PointSet& ps);

struct RatioLimitRow {
  int n = 0;
  double max_rho = 1.0;
  double mean_rho = 1.0;
  double bound = 1.0;  // worst-case cap (k = 1)
};

// For each size, `trials` random uniform-square instances; records the worst
// and mean centroid ratio and the k=1 cap it must respect.
std::vector<RatioLimitRow> ratio_limit_experiment(uint64_t seed,
                                                  const std::vector<int>& sizes,
                                                  int trials = 200);

// Instance with a prescribed optimum: duplicates of one interior point y are
// appended to `base` until the target w becomes the exact quadratic centre.
struct GeneratedInstance {
  PointSet base;
  Point target;
  Point y;
  int m = 0;  // copies of y appended (0 when w was already optimal)
  PointSet result;
  double achieved_distance = 0.0;  // |s*(result) - w|
};

// w must lie on the farthest-point diagram of `base` (within tol * diameter;
// TargetNotOnDiagram otherwise) and strictly inside the hull (NoFeasibleM
// otherwise). The smallest feasible multiplicity m is chosen.
GeneratedInstance generate_target_instance(const PointSet& base, Point w,
                                           double tol = 1e-9);

struct AlphaSweepRow {
  double alpha = 0.0;
  Point s_alpha;
  double dist_to_one_centre = 0.0;
  double dist_to_quadratic = 0.0;
  double dist_to_centroid = 0.0;
  double certified_gap = 0.0;
};

// Numeric centre for each exponent, with distances to the three reference
// points (1-centre, quadratic centre, centroid).
std::vector<AlphaSweepRow> alpha_sweep(const PointSet& ps,
                                       const std::vector<double>& alphas);

enum class InstanceKind { kUniformSquare, kCocircular, kClusters, kCollinear };

// Seeded random families used by the experiments and the fuzz tests.
// Collinear instances are exactly collinear (dyadic parameters on a dyadic
// direction); cocircular ones sit on a circle up to rounding.
PointSet random_instance(InstanceKind kind, int n, std::mt19937_64& rng);

}  // namespace minpower
