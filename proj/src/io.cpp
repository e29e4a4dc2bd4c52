#include "minpower/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "minpower/errors.hpp"

namespace minpower {
namespace {

std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Accepts any double literal, including "nan"/"inf" (needed so a non-finite
// value is a reported error rather than a mistaken header).
bool parse_any_double(const std::string& tok, double& out) {
  const std::string t = trim(tok);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc{} && res.ptr == last;
}

PointSet finish_points(std::vector<Point> pts) {
  if (pts.empty()) throw EmptyInput("no points in input");
  return PointSet(std::move(pts));
}

PointSet parse_csv(const std::string& text) {
  std::vector<Point> pts;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool first_data_line = true;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const size_t comma = line.find(',');
    double x = 0.0;
    double y = 0.0;
    const bool numeric_line =
        comma != std::string::npos &&
        line.find(',', comma + 1) == std::string::npos &&
        parse_any_double(line.substr(0, comma), x) &&
        parse_any_double(line.substr(comma + 1), y);
    if (!numeric_line) {
      // A header is only a line whose first field is not a number; a line
      // like "1,2,3" is malformed data, not a header.
      double probe = 0.0;
      const bool starts_numeric =
          parse_any_double(line.substr(0, std::min(comma, line.size())),
                           probe);
      if (first_data_line && !starts_numeric) {  // optional header
        first_data_line = false;
        continue;
      }
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected two numbers \"x,y\", got \"" + line + "\"");
    }
    first_data_line = false;
    if (!std::isfinite(x) || !std::isfinite(y))
      throw ParseError("line " + std::to_string(lineno) +
                       ": non-finite coordinate in \"" + line + "\"");
    pts.push_back({x, y});
  }
  return finish_points(std::move(pts));
}

PointSet parse_json_points(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    // Also covers number overflow (out_of_range), not just syntax errors.
    throw ParseError(std::string("JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("points")) doc = doc["points"];
  if (!doc.is_array())
    throw ParseError("JSON: expected an array of [x,y] pairs");
  std::vector<Point> pts;
  pts.reserve(doc.size());
  for (size_t i = 0; i < doc.size(); ++i) {
    const auto& e = doc[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number())
      throw ParseError("JSON: element " + std::to_string(i) +
                       " is not an [x,y] number pair");
    const double x = e[0].get<double>();
    const double y = e[1].get<double>();
    if (!std::isfinite(x) || !std::isfinite(y))
      throw ParseError("JSON: element " + std::to_string(i) +
                       " has a non-finite coordinate");
    pts.push_back({x, y});
  }
  return finish_points(std::move(pts));
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw IoError(std::string("refusing to serialize non-finite ") + what);
}

std::string num(double v) {
  require_finite(v, "number");
  return format_double(v);
}

std::string pair_json(Point p) { return "[" + num(p.x) + "," + num(p.y) + "]"; }

template <typename T, typename F>
std::string join_json(const std::vector<T>& v, F f) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += f(v[i]);
  }
  return out + "]";
}

}  // namespace

PointSet parse_points_text(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '[' || c == '{') return parse_json_points(text);
    return parse_csv(text);
  }
  throw EmptyInput("input is blank");
}

PointSet parse_points(const std::string& path) {
  if (path == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)),
                     std::istreambuf_iterator<char>());
    return parse_points_text(text);
  }
  return parse_points_text(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path);
  return text;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string points_to_csv(const PointSet& ps) {
  std::string out = "x,y\n";
  for (const Point& p : ps) out += format_double(p.x) + "," + format_double(p.y) + "\n";
  return out;
}

std::string result_to_json(const SolveArtifacts& art) {
  const MinPowerResult* g = art.geometric;
  const NumericSolution* nu = art.numeric;
  if (!g && !nu) throw IoError("result_to_json: no solution to serialize");
  std::string out = "{\n";
  const Point s = g ? g->s_star : nu->s;
  const double obj = g ? g->objective : nu->objective;
  out += "  \"s_star\": " + pair_json(s) + ",\n";
  out += "  \"objective\": " + num(obj) + ",\n";
  if (g) {
    out += "  \"case\": " + std::to_string(g->case_id) + ",\n";
    out += "  \"active_indices\": " +
           join_json(g->active, [](int i) { return std::to_string(i); }) +
           ",\n";
    out += "  \"lambdas\": " +
           join_json(g->lambdas, [](double l) { return num(l); }) + ",\n";
    out += "  \"witness_face\": \"" + g->witness_face + "\",\n";
  } else {
    out += "  \"case\": null,\n";
    out += "  \"active_indices\": null,\n";
    out += "  \"lambdas\": null,\n";
    out += "  \"witness_face\": null,\n";
  }
  out += "  \"method\": \"" + art.method + "\",\n";
  out += "  \"alpha\": " + num(art.alpha) + ",\n";
  if (g && nu) {
    out += "  \"cross_check\": {\"numeric_s\": " + pair_json(nu->s) +
           ", \"distance\": " + num(art.cross_distance) +
           ", \"certified_gap\": " + num(nu->certified_gap) + "}\n";
  } else {
    out += "  \"cross_check\": null\n";
  }
  out += "}\n";
  return out;
}

std::string ratio_report_to_json(const RatioReport& rep) {
  std::string out = "{\n";
  out += "  \"rho\": " + num(rep.rho) + ",\n";
  out += "  \"k\": " + std::to_string(rep.k) + ",\n";
  out += "  \"n\": " + std::to_string(rep.n) + ",\n";
  out += "  \"bound\": " + num(rep.bound) + ",\n";
  out += "  \"slack\": " + num(rep.slack) + ",\n";
  out += "  \"centroid\": " + pair_json(rep.m) + ",\n";
  out += "  \"s_star\": " + pair_json(rep.s_star) + ",\n";
  out += "  \"power_centroid\": " + num(rep.p_m) + ",\n";
  out += "  \"power_star\": " + num(rep.p_star) + "\n";
  out += "}\n";
  return out;
}

std::string ratio_rows_to_csv(const std::vector<RatioLimitRow>& rows) {
  std::string out = "n,max_rho,mean_rho,bound\n";
  for (const auto& r : rows)
    out += std::to_string(r.n) + "," + format_double(r.max_rho) + "," +
           format_double(r.mean_rho) + "," + format_double(r.bound) + "\n";
  return out;
}

std::string sweep_rows_to_csv(const std::vector<AlphaSweepRow>& rows) {
  std::string out =
      "alpha,s_x,s_y,dist_to_one_centre,dist_to_quadratic,dist_to_centroid,"
      "certified_gap\n";
  for (const auto& r : rows)
    out += format_double(r.alpha) + "," + format_double(r.s_alpha.x) + "," +
           format_double(r.s_alpha.y) + "," +
           format_double(r.dist_to_one_centre) + "," +
           format_double(r.dist_to_quadratic) + "," +
           format_double(r.dist_to_centroid) + "," +
           format_double(r.certified_gap) + "\n";
  return out;
}

std::string generated_to_json(const GeneratedInstance& gi) {
  std::string out = "{\n";
  out += "  \"target\": " + pair_json(gi.target) + ",\n";
  out += "  \"added_node\": " + pair_json(gi.y) + ",\n";
  out += "  \"multiplicity\": " + std::to_string(gi.m) + ",\n";
  out += "  \"base_size\": " + std::to_string(gi.base.size()) + ",\n";
  out += "  \"result_size\": " + std::to_string(gi.result.size()) + ",\n";
  out += "  \"achieved_distance\": " + num(gi.achieved_distance) + "\n";
  out += "}\n";
  return out;
}

std::string structures_to_json(const PointSet& ps,
                               const FarthestStructures& fs) {
  nlohmann::json j;
  j["points"] = nlohmann::json::array();
  for (const Point& p : ps) j["points"].push_back({p.x, p.y});
  j["hull"] = fs.fpvd.hull.vertices;

  nlohmann::json dt;
  dt["triangles"] = fs.fpdt.triangles;
  dt["neighbors"] = fs.fpdt.neighbors;
  dt["edges"] = fs.fpdt.edges;
  dt["edge_triangles"] = fs.fpdt.edge_tris;
  dt["cocircular_groups"] = fs.fpdt.cocircular_groups;
  dt["triangle_group"] = fs.fpdt.tri_group;
  j["fpdt"] = std::move(dt);

  nlohmann::json vd;
  vd["vertices"] = nlohmann::json::array();
  for (const auto& v : fs.fpvd.vertices)
    vd["vertices"].push_back({{"pos", {v.pos.x, v.pos.y}},
                              {"sites", v.sites},
                              {"group", v.group}});
  vd["edges"] = nlohmann::json::array();
  for (const auto& e : fs.fpvd.edges) {
    nlohmann::json je = {{"sites", e.sites},
                         {"verts", e.verts},
                         {"a", {e.a.x, e.a.y}},
                         {"unbounded", e.unbounded}};
    je[e.unbounded ? "dir" : "b"] = {e.b_or_dir.x, e.b_or_dir.y};
    vd["edges"].push_back(std::move(je));
  }
  vd["regions"] = nlohmann::json::array();
  for (const auto& r : fs.fpvd.regions)
    vd["regions"].push_back({{"site", r.site},
                             {"edges", r.edge_ids},
                             {"neighbor_sites", r.neighbor_sites}});
  vd["region_of"] = fs.fpvd.region_of;
  j["fpvd"] = std::move(vd);
  return j.dump(2) + "\n";
}

}  // namespace minpower
