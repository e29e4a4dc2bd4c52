#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minpower/analysis.hpp"
#include "minpower/farthest.hpp"
#include "minpower/geom.hpp"
#include "minpower/io.hpp"
#include "minpower/numeric.hpp"
#include "minpower/solver.hpp"
#include "minpower/svg.hpp"

namespace py = pybind11;
namespace mp = minpower;

namespace {

using PyPoint = std::pair<double, double>;
using PyPoints = std::vector<PyPoint>;

mp::PointSet to_set(const PyPoints& pts) {
  std::vector<mp::Point> v;
  v.reserve(pts.size());
  for (const auto& [x, y] : pts) v.push_back({x, y});
  return mp::PointSet(std::move(v));
}

PyPoint to_pair(mp::Point p) { return {p.x, p.y}; }

PyPoints to_pairs(const std::vector<mp::Point>& pts) {
  PyPoints out;
  out.reserve(pts.size());
  for (mp::Point p : pts) out.push_back(to_pair(p));
  return out;
}

py::dict geo_dict(const mp::MinPowerResult& r) {
  py::dict d;
  d["s_star"] = to_pair(r.s_star);
  d["objective"] = r.objective;
  d["case"] = r.case_id;
  d["active"] = r.active;
  d["lambdas"] = r.lambdas;
  d["witness_face"] = r.witness_face;
  return d;
}

}  // namespace

PYBIND11_MODULE(_minpower, m) {
  m.doc() =
      "Exact quadratic min-power centre of planar point sets: minimises the "
      "sum of squared node distances plus the squared farthest distance.";

  m.def(
      "solve",
      [](const PyPoints& pts, double alpha, const std::string& method) {
        const mp::PointSet ps = to_set(pts);
        std::string mth = method;
        if (mth == "auto") mth = (alpha == 2.0) ? "both" : "numeric";
        if (mth != "geometric" && mth != "numeric" && mth != "both")
          throw std::invalid_argument("method must be geometric|numeric|both");
        if (mth != "numeric" && alpha != 2.0)
          throw std::invalid_argument(
              "the combinatorial solver handles alpha = 2 only");
        py::dict d;
        d["alpha"] = alpha;
        d["method"] = mth;
        std::optional<mp::MinPowerResult> geo;
        if (mth != "numeric") {
          geo = mp::solve_quadratic(ps);
          py::dict g = geo_dict(*geo);
          for (auto item : g) d[item.first] = item.second;
        }
        if (mth != "geometric") {
          const mp::NumericSolution ns = mp::solve_numeric(ps, alpha);
          py::dict nd;
          nd["s"] = to_pair(ns.s);
          nd["objective"] = ns.objective;
          nd["certified_gap"] = ns.certified_gap;
          nd["converged"] = ns.converged;
          d["numeric"] = nd;
          if (!geo) {
            d["s_star"] = to_pair(ns.s);
            d["objective"] = ns.objective;
          } else {
            d["cross_distance"] = mp::dist(geo->s_star, ns.s);
          }
        }
        return d;
      },
      py::arg("points"), py::arg("alpha") = 2.0, py::arg("method") = "auto",
      "Minimise sum(|s-x|^alpha) + max(|s-x|^alpha). Returns a dict with the "
      "centre, objective, and (for alpha=2) the face certificate.");

  m.def(
      "power",
      [](const PyPoint& s, const PyPoints& pts, double alpha) {
        return mp::power({s.first, s.second}, to_set(pts), alpha);
      },
      py::arg("s"), py::arg("points"), py::arg("alpha") = 2.0,
      "Objective value at s.");

  m.def(
      "two_centroids",
      [](const PyPoints& pts) {
        const mp::TwoCentroidSet tc = mp::two_centroids(to_set(pts));
        py::dict d;
        d["M"] = to_pair(tc.M);
        d["Mj"] = to_pairs(tc.Mj);
        d["r"] = tc.r;
        return d;
      },
      py::arg("points"),
      "Centroid M and the shifted centroids Mj = (x_j + sum X)/(n+1).");

  m.def(
      "min_enclosing_circle",
      [](const PyPoints& pts) {
        const mp::Circle c = mp::min_enclosing_circle(to_set(pts));
        return std::make_pair(to_pair(c.centre), c.radius);
      },
      py::arg("points"), "((cx, cy), radius) of the smallest enclosing circle.");

  m.def(
      "convex_hull",
      [](const PyPoints& pts) { return mp::convex_hull(to_set(pts)).vertices; },
      py::arg("points"), "CCW indices of the strict hull vertices.");

  m.def(
      "approx_ratio",
      [](const PyPoints& pts) {
        const mp::RatioReport r = mp::approx_ratio(to_set(pts));
        py::dict d;
        d["rho"] = r.rho;
        d["k"] = r.k;
        d["n"] = r.n;
        d["bound"] = r.bound;
        d["slack"] = r.slack;
        d["centroid"] = to_pair(r.m);
        d["s_star"] = to_pair(r.s_star);
        return d;
      },
      py::arg("points"),
      "How much worse the centroid is than the centre, with the proven cap.");

  m.def(
      "transform",
      [](const PyPoints& pts, double alpha, const PyPoint& s) {
        return to_pairs(
            mp::transform_points(to_set(pts), {s.first, s.second}, alpha)
                .points());
      },
      py::arg("points"), py::arg("alpha"), py::arg("s"),
      "Radial map x -> s + |s-x|^(alpha-2) (x-s) that linearises the "
      "alpha-problem around s.");

  m.def(
      "alpha_sweep",
      [](const PyPoints& pts, const std::vector<double>& alphas) {
        const auto rows = mp::alpha_sweep(to_set(pts), alphas);
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["alpha"] = r.alpha;
          d["s"] = to_pair(r.s_alpha);
          d["dist_to_one_centre"] = r.dist_to_one_centre;
          d["dist_to_quadratic"] = r.dist_to_quadratic;
          d["dist_to_centroid"] = r.dist_to_centroid;
          d["certified_gap"] = r.certified_gap;
          out.append(d);
        }
        return out;
      },
      py::arg("points"), py::arg("alphas"),
      "Numeric centre for each exponent with reference distances.");

  m.def(
      "generate_target",
      [](const PyPoints& pts, const PyPoint& target, double tol) {
        const mp::GeneratedInstance gi = mp::generate_target_instance(
            to_set(pts), {target.first, target.second}, tol);
        py::dict d;
        d["points"] = to_pairs(gi.result.points());
        d["added_node"] = to_pair(gi.y);
        d["multiplicity"] = gi.m;
        d["achieved_distance"] = gi.achieved_distance;
        return d;
      },
      py::arg("points"), py::arg("target"), py::arg("tol") = 1e-9,
      "Append copies of one interior node so the centre lands on `target` "
      "(target must lie on the farthest-point diagram).");

  m.def(
      "validate",
      [](const PyPoints& pts) {
        const mp::PointSet ps = to_set(pts);
        const mp::FarthestStructures fs = mp::build_farthest_structures(ps);
        return mp::check_structures(ps, fs.fpdt, fs.fpvd);
      },
      py::arg("points"),
      "Structural invariant violations (empty list when consistent).");

  m.def(
      "structures_json",
      [](const PyPoints& pts) {
        const mp::PointSet ps = to_set(pts);
        return mp::structures_to_json(ps, mp::build_farthest_structures(ps));
      },
      py::arg("points"), "Debug dump of both farthest-point structures.");

  m.def(
      "render_svg",
      [](const PyPoints& pts) {
        const mp::PointSet ps = to_set(pts);
        const mp::FarthestStructures fs = mp::build_farthest_structures(ps);
        const mp::MinPowerResult res = mp::solve_quadratic(ps);
        return mp::render_svg(ps, fs, &res);
      },
      py::arg("points"), "SVG picture of the instance, diagram and centre.");
}
