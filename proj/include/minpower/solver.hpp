#pragma once

#include <string>
#include <vector>

#include "minpower/farthest.hpp"
#include "minpower/geom.hpp"

namespace minpower {

// The shifted centroids driving the quadratic optimality test: M is the
// plain centroid, Mj[j] = (x_j + sum(X)) / (n+1) divides the segment from M
// to x_j in ratio 1:n, and r is the index whose Mj lies farthest out
// (equivalently, the node farthest from M; ties go to the lowest index).
struct TwoCentroidSet {
  Point M;
  std::vector<Point> Mj;
  int r = 0;
};

TwoCentroidSet two_centroids(const PointSet& ps);

// Sum of powered distances plus the powered farthest distance. Throws
// InvalidAlpha unless alpha is finite and > 1.
double power(Point s, const PointSet& ps, double alpha);

enum class ScanOrder {
  kStructure,      // regions, then edges, then vertices, in index order
  kCentroidFirst,  // edges/vertices visited nearest-to-M first
};

// Solution of the quadratic (alpha = 2) problem.
//
// The optimum is characterised combinatorially: it is the unique point that
// lies simultaneously on a face of the farthest-point diagram and inside the
// convex hull of the corresponding shifted centroids. `case_id` records
// which face kind hosted it (1 = region, so s* = Mj[r]; 2 = edge; 3 =
// vertex) and always equals the support size of `lambdas`.
struct MinPowerResult {
  Point s_star;
  double objective = 0.0;
  int case_id = 0;
  std::vector<int> active;      // support indices, ascending
  std::vector<double> lambdas;  // aligned with active; positive, sums to 1
  std::string witness_face;     // e.g. "region:4", "edge:2-7", "vertex:3"
};

MinPowerResult solve_quadratic(const PointSet& ps,
                               ScanOrder order = ScanOrder::kStructure);

// Same scan on caller-provided structures (used to time the scan alone and
// to solve many targets over one diagram).
MinPowerResult solve_quadratic_prepared(const PointSet& ps,
                                        const TwoCentroidSet& tc,
                                        const FarthestStructures& fs,
                                        ScanOrder order = ScanOrder::kStructure);

// Barycentric weights of s over {Mj[j] : j in active}; throws NotInHull when
// s is outside that hull by more than 1e-9 (weights within [-1e-12, 0) are
// clamped to zero and the rest renormalised).
std::vector<double> recover_multipliers(const PointSet& ps, Point s,
                                        const std::vector<int>& active);

// Re-derives the case id from the multiplier support and cross-checks every
// field of the result (weights sum to 1, s* reproduces from the support,
// witness kind matches). Throws InconsistentResult on any mismatch.
int classify_case(const PointSet& ps, const MinPowerResult& res);

struct KktResiduals {
  double stationarity = 0.0;    // |s - sum lambda_j Mj|, length units
  double multiplier_sum = 0.0;  // |sum lambda - 1|
  double complementarity = 0.0;  // max_j lambda_j * |dmax^2 - d_j^2|
};

KktResiduals kkt_residuals(const PointSet& ps, const MinPowerResult& res);

// Relations between the quadratic centre s*, the 1-centre C (centre of the
// smallest enclosing circle), and the centroid M. Each flag reports one
// implication, true when it holds (vacuously or not) at tolerance
// 1e-9 * diameter. A false flag throws ImplicationViolated.
struct OneCentreReport {
  bool farthest_set_is_face = false;   // C's farthest sites form a dual face
  bool m_in_hull_implies_centre = false;  // M in conv(active Mj) => s* = C
  bool m_fixed_iff_m_is_c = false;        // s* = M  <=>  M = C
  bool equidistant_rule = false;  // C equidistant: s* = C <=> C in conv(Mj)
  bool mr_within_radius = false;  // |Mj[r] - x_r| <= |s* - x_r|
};

OneCentreReport one_centre_checks(const PointSet& ps);

}  // namespace minpower
