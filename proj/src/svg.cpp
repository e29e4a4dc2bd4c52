#include "minpower/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "minpower/io.hpp"

namespace minpower {
namespace {

constexpr double kCanvas = 1000.0;  // pixel width of the world box

struct Mapper {
  double x0, y0, scale, height;

  double px(double x) const { return (x - x0) * scale; }
  double py(double y) const { return height - (y - y0) * scale; }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Liang-Barsky clip of p + t*d, t in [t0, t1], against [0,w]x[0,h] in pixel
// space. Returns false when the piece misses the box.
bool clip_param(Point p, Point d, double& t0, double& t1, double w, double h) {
  const double lo[2] = {0.0, 0.0};
  const double hi[2] = {w, h};
  const double pc[2] = {p.x, p.y};
  const double dc[2] = {d.x, d.y};
  for (int axis = 0; axis < 2; ++axis) {
    if (dc[axis] == 0.0) {
      if (pc[axis] < lo[axis] || pc[axis] > hi[axis]) return false;
      continue;
    }
    double ta = (lo[axis] - pc[axis]) / dc[axis];
    double tb = (hi[axis] - pc[axis]) / dc[axis];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

void add_line(std::string& out, const Mapper& m, Point a, Point b,
              const char* cls, double w, double h) {
  const Point pa{m.px(a.x), m.py(a.y)};
  const Point pb{m.px(b.x), m.py(b.y)};
  const Point d = pb - pa;
  double t0 = 0.0;
  double t1 = 1.0;
  if (norm2(d) == 0.0 || !clip_param(pa, d, t0, t1, w, h)) return;
  const Point qa = pa + t0 * d;
  const Point qb = pa + t1 * d;
  out += "  <line class=\"" + std::string(cls) + "\" x1=\"" + fmt(qa.x) +
         "\" y1=\"" + fmt(qa.y) + "\" x2=\"" + fmt(qb.x) + "\" y2=\"" +
         fmt(qb.y) + "\"/>\n";
}

void add_circle(std::string& out, const Mapper& m, Point c, double r,
                const char* cls) {
  out += "  <circle class=\"" + std::string(cls) + "\" cx=\"" +
         fmt(m.px(c.x)) + "\" cy=\"" + fmt(m.py(c.y)) + "\" r=\"" + fmt(r) +
         "\"/>\n";
}

}  // namespace

std::string render_svg(const PointSet& ps, const FarthestStructures& fs,
                       const MinPowerResult* res) {
  const Fpvd& vd = fs.fpvd;

  // Viewbox: 3x the hull bounding box, centred on it.
  double xmin = ps[vd.hull.vertices[0]].x, xmax = xmin;
  double ymin = ps[vd.hull.vertices[0]].y, ymax = ymin;
  for (int h : vd.hull.vertices) {
    xmin = std::min(xmin, ps[h].x);
    xmax = std::max(xmax, ps[h].x);
    ymin = std::min(ymin, ps[h].y);
    ymax = std::max(ymax, ps[h].y);
  }
  double w = xmax - xmin;
  double hgt = ymax - ymin;
  const double side = std::max({w, hgt, 1e-9});
  const double cx = 0.5 * (xmin + xmax);
  const double cy = 0.5 * (ymin + ymax);
  const double half = 1.5 * side;  // 3x box
  const double scale = kCanvas / (2.0 * half);
  const double width = kCanvas;
  const double height = kCanvas;
  const Mapper m{cx - half, cy - half, scale, height};

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
         fmt(width) + " " + fmt(height) + "\">\n";
  out +=
      "  <style>\n"
      "    .node { fill: #000000; }\n"
      "    .centroid2 { fill: #999999; }\n"
      "    .sstar { fill: #ffffff; stroke: #000000; stroke-width: 1.5; }\n"
      "    .fpvd { stroke: #000000; stroke-width: 1.5; fill: none; }\n"
      "    .fpdt { stroke: #777777; stroke-width: 1; stroke-dasharray: 6 4; "
      "fill: none; }\n"
      "  </style>\n";

  // Dashed dual: triangulation edges, or the lone hull segment when the
  // hull has only two vertices.
  if (!fs.fpdt.edges.empty()) {
    for (const auto& e : fs.fpdt.edges)
      add_line(out, m, ps[e[0]], ps[e[1]], "fpdt", width, height);
  } else if (vd.hull.size() == 2) {
    add_line(out, m, ps[vd.hull.vertices[0]], ps[vd.hull.vertices[1]], "fpdt",
             width, height);
  }

  // Solid diagram edges. A two-site diagram is one full bisector line: its
  // two opposite rays are drawn as a single clipped segment.
  const double reach = 4.0 * (2.0 * half);  // world length safely past the box
  if (vd.hull.size() == 2 && vd.edges.size() == 2) {
    const Point a = vd.edges[0].a;
    const Point d = vd.edges[0].b_or_dir;
    add_line(out, m, a - reach * d, a + reach * d, "fpvd", width, height);
  } else {
    for (const auto& e : vd.edges) {
      if (e.unbounded)
        add_line(out, m, e.a, e.a + reach * e.b_or_dir, "fpvd", width, height);
      else
        add_line(out, m, e.a, e.b_or_dir, "fpvd", width, height);
    }
  }

  const TwoCentroidSet tc = two_centroids(ps);
  for (const Point& mj : tc.Mj) add_circle(out, m, mj, 3.0, "centroid2");
  for (const Point& p : ps) add_circle(out, m, p, 4.0, "node");
  if (res) add_circle(out, m, res->s_star, 5.0, "sstar");

  out += "</svg>\n";
  return out;
}

void emit_svg(const PointSet& ps, const FarthestStructures& fs,
              const MinPowerResult* res, const std::string& path) {
  write_text_file(path, render_svg(ps, fs, res));
}

}  // namespace minpower
