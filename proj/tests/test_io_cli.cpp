#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "minpower/io.hpp"
#include "minpower/numeric.hpp"
#include "minpower/solver.hpp"

using namespace minpower;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(MINPOWER_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

// Shell pipeline so stdin-reading can be exercised through popen.
RunResult run_shell(const std::string& pipeline) {
  RunResult r;
  FILE* p = popen((pipeline + " 2>&1").c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "minpower_t_XXXXXX").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    REQUIRE(mkdtemp(buf.data()) != nullptr);
    path = buf.data();
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

int count_occurrences(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++n;
  return n;
}

// Structural validation of one JSON value against the subset of JSON Schema
// our checked-in schema uses: type (string or list), required, properties,
// items, enum, pattern is skipped (covered by the python suite).
bool type_matches(const json& v, const std::string& t) {
  if (t == "null") return v.is_null();
  if (t == "number") return v.is_number();
  if (t == "integer") return v.is_number_integer();
  if (t == "string") return v.is_string();
  if (t == "array") return v.is_array();
  if (t == "object") return v.is_object();
  if (t == "boolean") return v.is_boolean();
  return false;
}

void check_against_schema(const json& v, const json& schema,
                          const std::string& where) {
  INFO("at ", where);
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string())
      ok = type_matches(v, t.get<std::string>());
    else
      for (const auto& ti : t) ok = ok || type_matches(v, ti.get<std::string>());
    CHECK(ok);
    if (!ok) return;
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& e : schema["enum"]) ok = ok || e == v;
    CHECK(ok);
  }
  if (v.is_object()) {
    if (schema.contains("required"))
      for (const auto& k : schema["required"]) {
        INFO("missing key ", k.get<std::string>());
        CHECK(v.contains(k.get<std::string>()));
      }
    if (schema.contains("properties"))
      for (auto it = schema["properties"].begin();
           it != schema["properties"].end(); ++it)
        if (v.contains(it.key()))
          check_against_schema(v[it.key()], it.value(), where + "." + it.key());
    if (schema.contains("additionalProperties") &&
        schema["additionalProperties"] == false &&
        schema.contains("properties"))
      for (auto it = v.begin(); it != v.end(); ++it) {
        INFO("unexpected key ", it.key());
        CHECK(schema["properties"].contains(it.key()));
      }
  }
  if (v.is_array() && schema.contains("items"))
    for (size_t i = 0; i < v.size(); ++i)
      check_against_schema(v[i], schema["items"],
                           where + "[" + std::to_string(i) + "]");
}

}  // namespace

TEST_CASE("CSV parsing: headers, comments, CRLF, whitespace") {
  const PointSet a = parse_points_text("0,0\n1,0\n4,0\n");
  CHECK(a.size() == 3);
  CHECK(a[2] == Point{4, 0});

  const PointSet b = parse_points_text("x,y\r\n# comment\r\n0.5,-1\r\n\r\n2,3\r\n");
  CHECK(b.size() == 2);
  CHECK(b[0] == Point{0.5, -1});
  CHECK(b[1] == Point{2, 3});

  const PointSet c = parse_points_text("  1 , 2 \n 3\t,\t4 ");
  CHECK(c.size() == 2);

  // Scientific notation and extreme-but-finite values.
  const PointSet d = parse_points_text("1e-300,2.5E+10\n-0.0,0\n");
  CHECK(d[0].x == 1e-300);
  CHECK(d[1].x == 0.0);
  CHECK(std::signbit(d[1].x));
}

TEST_CASE("CSV parsing: precise rejections") {
  CHECK_THROWS_AS(parse_points_text(""), EmptyInput);
  CHECK_THROWS_AS(parse_points_text("   \n \n"), EmptyInput);
  CHECK_THROWS_AS(parse_points_text("x,y\n# only comments\n"), EmptyInput);

  // A parseable-but-non-finite first line is an error, not a header.
  CHECK_THROWS_WITH_AS(parse_points_text("0,NaN\n1,1\n"),
                       doctest::Contains("line 1"), ParseError);
  CHECK_THROWS_WITH_AS(parse_points_text("0,0\ninf,2\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_points_text("0,0\noops,2\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_AS(parse_points_text("1\n2\n"), ParseError);
  CHECK_THROWS_AS(parse_points_text("1,2,3\n"), ParseError);
  // Two header-looking lines: only the first can be skipped.
  CHECK_THROWS_AS(parse_points_text("x,y\na,b\n1,2\n"), ParseError);
}

TEST_CASE("JSON points input") {
  const PointSet a = parse_points_text("[[0,0],[1,0],[4,0]]");
  CHECK(a.size() == 3);
  const PointSet b = parse_points_text(R"({"points": [[1, 2], [3, 4]]})");
  CHECK(b.size() == 2);
  CHECK(b[1] == Point{3, 4});
  CHECK_THROWS_AS(parse_points_text("[[0,0],[1]]"), ParseError);
  CHECK_THROWS_AS(parse_points_text("[[0,0],"), ParseError);
  CHECK_THROWS_AS(parse_points_text("[]"), EmptyInput);
  CHECK_THROWS_AS(parse_points_text("[[1e999,0]]"), ParseError);
  CHECK_THROWS_AS(parse_points_text(R"({"nodes": [[1,2]]})"), ParseError);
}

TEST_CASE("CSV round trip is bit exact") {
  std::vector<Point> pts{{0.1, 1.0 / 3.0},
                         {1e-300, -0.0},
                         {4503599627370497.0, -2.5e-17},
                         {3.141592653589793, 2.718281828459045}};
  const PointSet ps(pts);
  const std::string csv = points_to_csv(ps);
  CHECK(csv.substr(0, 4) == "x,y\n");
  const PointSet back = parse_points_text(csv);
  REQUIRE(back.size() == ps.size());
  for (int i = 0; i < ps.size(); ++i) {
    CHECK(std::memcmp(&back[i].x, &ps[i].x, sizeof(double)) == 0);
    CHECK(std::memcmp(&back[i].y, &ps[i].y, sizeof(double)) == 0);
  }
}

TEST_CASE("format_double survives strtod round trip") {
  for (double v : {0.1, -1.0 / 3.0, 1e308, 5e-324, -0.0, 123456789.123456789}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("result JSON: shape, nulls, determinism, schema conformance") {
  const PointSet ps({{0, 0}, {1, 0}, {4, 0}});
  const MinPowerResult geo = solve_quadratic(ps);
  const NumericSolution num = solve_numeric(ps, 2.0);

  SolveArtifacts both;
  both.method = "both";
  both.geometric = &geo;
  both.numeric = &num;
  both.cross_distance = dist(geo.s_star, num.s);
  const std::string text = result_to_json(both);
  CHECK(result_to_json(both) == text);  // deterministic
  const json doc = json::parse(text);
  CHECK(doc["s_star"] == json::array({2.0, 0.0}));
  CHECK(doc["objective"] == 13.0);
  CHECK(doc["case"] == 2);
  CHECK(doc["active_indices"] == json::array({0, 2}));
  CHECK(doc["witness_face"] == "edge:0-2");
  CHECK(doc["method"] == "both");
  CHECK(doc["alpha"] == 2.0);
  CHECK(doc["cross_check"].is_object());
  CHECK(doc["cross_check"]["distance"].get<double>() >= 0.0);

  SolveArtifacts numeric_only;
  numeric_only.method = "numeric";
  numeric_only.alpha = 3.0;
  numeric_only.numeric = &num;
  const json nd = json::parse(result_to_json(numeric_only));
  CHECK(nd["case"].is_null());
  CHECK(nd["active_indices"].is_null());
  CHECK(nd["lambdas"].is_null());
  CHECK(nd["witness_face"].is_null());
  CHECK(nd["cross_check"].is_null());

  SolveArtifacts empty;
  CHECK_THROWS_AS(result_to_json(empty), IoError);

  MinPowerResult broken = geo;
  broken.objective = std::numeric_limits<double>::infinity();
  SolveArtifacts bad;
  bad.method = "geometric";
  bad.geometric = &broken;
  CHECK_THROWS_AS(result_to_json(bad), IoError);

  const json schema = json::parse(slurp(MINPOWER_SCHEMA_PATH));
  check_against_schema(doc, schema, "$");
  check_against_schema(nd, schema, "$");
}

TEST_CASE("structures JSON dump carries both structures") {
  const PointSet ps({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto fs2 = build_farthest_structures(ps);
  const json doc = json::parse(structures_to_json(ps, fs2));
  CHECK(doc["points"].size() == 4);
  CHECK(doc["hull"] == json::array({0, 1, 2, 3}));
  CHECK(doc["fpdt"]["triangles"].size() == 2);
  CHECK(doc["fpdt"]["cocircular_groups"].size() == 1);
  CHECK(doc["fpvd"]["vertices"].size() == 2);
  CHECK(doc["fpvd"]["regions"].size() == 4);
}

TEST_CASE("cli: solve golden instance end to end") {
  TempDir td;
  spit(td.file("g.csv"), "0,0\n1,0\n4,0\n");
  const auto r = run_cli("solve --input " + td.file("g.csv") + " --json " +
                         td.file("out.json") + " --svg " + td.file("out.svg") +
                         " --csv " + td.file("pts.csv"));
  CHECK(r.code == 0);
  CHECK(r.out.find("s* = (2, 0)") != std::string::npos);
  CHECK(r.out.find("case 2") != std::string::npos);
  CHECK(r.out.find("cross-check distance") != std::string::npos);

  const json doc = json::parse(slurp(td.file("out.json")));
  CHECK(doc["s_star"] == json::array({2.0, 0.0}));
  CHECK(doc["objective"] == 13.0);
  CHECK(doc["cross_check"]["distance"].get<double>() < 1e-6);

  const std::string svg = slurp(td.file("out.svg"));
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("class=\"fpvd\"") != std::string::npos);

  const PointSet back = parse_points_text(slurp(td.file("pts.csv")));
  CHECK(back.size() == 3);

  // Determinism: byte-identical artifacts on a rerun.
  const auto r2 = run_cli("solve --input " + td.file("g.csv") + " --json " +
                          td.file("out2.json") + " --svg " + td.file("out2.svg"));
  CHECK(r2.code == 0);
  CHECK(slurp(td.file("out.json")) == slurp(td.file("out2.json")));
  CHECK(slurp(td.file("out.svg")) == slurp(td.file("out2.svg")));
}

TEST_CASE("cli: stdin, scan orders, method and alpha validation") {
  const auto r = run_shell("printf '0,0\\n2,0\\n' | " +
                           std::string(MINPOWER_CLI_PATH) + " solve -i -");
  CHECK(r.code == 0);
  CHECK(r.out.find("s* = (1, 0)") != std::string::npos);

  TempDir td;
  spit(td.file("g.csv"), "0,0\n1,0\n4,0\n");
  for (const std::string order : {"paper", "centroid-first"}) {
    const auto ro =
        run_cli("solve -i " + td.file("g.csv") + " --scan-order " + order);
    CHECK(ro.code == 0);
    CHECK(ro.out.find("s* = (2, 0)") != std::string::npos);
  }
  CHECK(run_cli("solve -i " + td.file("g.csv") + " --scan-order bogus").code !=
        0);

  // The combinatorial path refuses alpha != 2.
  const auto bad = run_cli("solve -i " + td.file("g.csv") +
                           " --alpha 3 --method geometric");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("alpha = 2 only") != std::string::npos);
  // Numeric handles it.
  const auto ok = run_cli("solve -i " + td.file("g.csv") + " --alpha 3");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("method = numeric") != std::string::npos);
  // Out-of-domain alpha.
  CHECK(run_cli("solve -i " + td.file("g.csv") + " --alpha 1").code == 1);
  CHECK(run_cli("solve -i " + td.file("g.csv") + " --alpha 65").code == 1);
}

TEST_CASE("cli: input failure modes exit with code 1") {
  TempDir td;
  CHECK(run_cli("solve -i " + td.file("missing.csv")).code == 1);
  spit(td.file("bad.csv"), "0,NaN\n");
  const auto r = run_cli("solve -i " + td.file("bad.csv"));
  CHECK(r.code == 1);
  CHECK(r.out.find("line 1") != std::string::npos);
  spit(td.file("empty.csv"), "\n");
  CHECK(run_cli("solve -i " + td.file("empty.csv")).code == 1);
  CHECK(run_cli("nonsense -i x").code != 0);
  CHECK(run_cli("solve").code != 0);  // --input is required
}

TEST_CASE("cli: validate reports structure and solution checks") {
  TempDir td;
  spit(td.file("sq.csv"), "0,0\n1,0\n1,1\n0,1\n");
  const auto r = run_cli("validate -i " + td.file("sq.csv") + " --json " +
                         td.file("st.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("invariants hold") != std::string::npos);
  CHECK(r.out.find("one-centre relations hold") != std::string::npos);
  const json doc = json::parse(slurp(td.file("st.json")));
  CHECK(doc.contains("fpdt"));
  CHECK(doc.contains("fpvd"));

  spit(td.file("line.csv"), "0,0\n1,0\n2,0\n");
  const auto rl = run_cli("validate -i " + td.file("line.csv"));
  CHECK(rl.code == 0);  // degenerate hull is still internally consistent
}

TEST_CASE("cli: svg diagram line counts for known shapes") {
  TempDir td;
  spit(td.file("eq.csv"), "-1,0\n1,0\n0,1.7320508075688772\n");
  const auto r = run_cli("solve -i " + td.file("eq.csv") + " --svg " +
                         td.file("eq.svg"));
  CHECK(r.code == 0);
  const std::string svg = slurp(td.file("eq.svg"));
  CHECK(count_occurrences(svg, "class=\"fpvd\"") == 3);
  CHECK(count_occurrences(svg, "class=\"fpdt\"") == 3);
  CHECK(count_occurrences(svg, "class=\"node\"") == 3);
  CHECK(count_occurrences(svg, "class=\"sstar\"") == 1);

  spit(td.file("two.csv"), "0,0\n2,0\n");
  const auto r2 = run_cli("solve -i " + td.file("two.csv") + " --svg " +
                          td.file("two.svg"));
  CHECK(r2.code == 0);
  const std::string svg2 = slurp(td.file("two.svg"));
  CHECK(count_occurrences(svg2, "class=\"fpvd\"") == 1);
  CHECK(count_occurrences(svg2, "class=\"fpdt\"") == 1);
}

TEST_CASE("cli: ratio, sweep, generate round trips") {
  TempDir td;
  spit(td.file("g.csv"), "0,0\n1,0\n4,0\n");

  const auto rr = run_cli("ratio -i " + td.file("g.csv"));
  CHECK(rr.code == 0);
  CHECK(rr.out.find("rho = 1.08547008547") != std::string::npos);
  CHECK(rr.out.find("k = 2") != std::string::npos);

  const auto re = run_cli("ratio --sizes 5,10 --trials 10 --seed 3 --csv " +
                          td.file("rows.csv"));
  CHECK(re.code == 0);
  const std::string rows = slurp(td.file("rows.csv"));
  CHECK(rows.substr(0, rows.find('\n')) == "n,max_rho,mean_rho,bound");
  CHECK(count_occurrences(rows, "\n") == 3);  // header + 2 rows

  const auto rs = run_cli("sweep -i " + td.file("g.csv") +
                          " --alphas 2,8 --csv " + td.file("sweep.csv"));
  CHECK(rs.code == 0);
  const std::string sweep = slurp(td.file("sweep.csv"));
  CHECK(sweep.find("alpha,") == 0);
  CHECK(count_occurrences(sweep, "\n") == 3);

  spit(td.file("sq.csv"), "0,0\n1,0\n1,1\n0,1\n");
  const auto rg = run_cli("generate -i " + td.file("sq.csv") +
                          " --target 0.5,0.7 --csv " + td.file("gen.csv") +
                          " --json " + td.file("gen.json"));
  CHECK(rg.code == 0);
  const PointSet gen = parse_points_text(slurp(td.file("gen.csv")));
  CHECK(gen.size() > 4);
  const MinPowerResult res = solve_quadratic(gen);
  CHECK(dist(res.s_star, {0.5, 0.7}) <= 1e-9);
  const json gj = json::parse(slurp(td.file("gen.json")));
  CHECK(gj["multiplicity"].get<int>() >= 1);
  CHECK(gj["target"] == json::array({0.5, 0.7}));

  const auto rbad = run_cli("generate -i " + td.file("sq.csv") +
                            " --target 0.3,0.2");
  CHECK(rbad.code == 1);
}

TEST_CASE("cli: log level gates stderr diagnostics") {
  TempDir td;
  spit(td.file("g.csv"), "0,0\n1,0\n4,0\n");
  const auto quiet = run_shell("MINPOWER_LOG=error " +
                               std::string(MINPOWER_CLI_PATH) + " solve -i " +
                               td.file("g.csv"));
  CHECK(quiet.code == 0);
  CHECK(quiet.out.find("[minpower:") == std::string::npos);
  const auto loud = run_shell("MINPOWER_LOG=info " +
                              std::string(MINPOWER_CLI_PATH) + " solve -i " +
                              td.file("g.csv"));
  CHECK(loud.code == 0);
  CHECK(loud.out.find("[minpower:info]") != std::string::npos);
  CHECK(loud.out.find("geometric centre") != std::string::npos);
}
