#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "minpower/analysis.hpp"
#include "minpower/errors.hpp"
#include "minpower/farthest.hpp"
#include "minpower/geom.hpp"
#include "minpower/io.hpp"
#include "minpower/log.hpp"
#include "minpower/numeric.hpp"
#include "minpower/solver.hpp"
#include "minpower/svg.hpp"

namespace mp = minpower;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;       // parse / config / io
constexpr int kExitCrossCheck = 2;  // solver disagreement or failed validation
constexpr int kExitNumeric = 3;     // numeric solver failure

std::string pt(mp::Point p) {
  return "(" + mp::format_double(p.x) + ", " + mp::format_double(p.y) + ")";
}

mp::ScanOrder parse_scan_order(const std::string& s) {
  if (s == "paper" || s == "structure") return mp::ScanOrder::kStructure;
  if (s == "centroid-first") return mp::ScanOrder::kCentroidFirst;
  throw CLI::ValidationError("--scan-order",
                             "expected paper|centroid-first, got " + s);
}

std::vector<double> parse_alpha_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw mp::ParseError("--alphas: not a number: " + tok);
    }
  }
  if (out.empty()) throw mp::ParseError("--alphas: empty list");
  return out;
}

mp::Point parse_point_arg(const std::string& s) {
  const size_t comma = s.find(',');
  if (comma == std::string::npos)
    throw mp::ParseError("--target: expected \"x,y\", got " + s);
  try {
    const double x = std::stod(s.substr(0, comma));
    const double y = std::stod(s.substr(comma + 1));
    if (!std::isfinite(x) || !std::isfinite(y))
      throw mp::ParseError("--target: non-finite coordinate");
    return {x, y};
  } catch (const mp::ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw mp::ParseError("--target: expected \"x,y\", got " + s);
  }
}

struct CommonOpts {
  std::string input;
  double alpha = 2.0;
  std::string method = "auto";  // geometric | numeric | both | auto
  double tol = 1e-8;
  std::string json_path;
  std::string svg_path;
  std::string csv_path;
  std::string scan_order = "paper";
};

int run_solve(const CommonOpts& o) {
  const mp::PointSet ps = mp::parse_points(o.input);
  const double diam = mp::diameter(ps);
  std::string method = o.method;
  if (method == "auto") method = (o.alpha == 2.0) ? "both" : "numeric";
  if (method != "geometric" && method != "numeric" && method != "both")
    throw mp::ParseError("--method: expected geometric|numeric|both");
  if (method != "numeric" && o.alpha != 2.0)
    throw mp::ParseError(
        "the combinatorial solver handles alpha = 2 only; use --method "
        "numeric for other exponents");
  const mp::ScanOrder order = parse_scan_order(o.scan_order);

  std::optional<mp::MinPowerResult> geo;
  std::optional<mp::NumericSolution> num;
  std::optional<mp::FarthestStructures> fs;
  const bool multi_site = mp::distinct_indices(ps).size() >= 2;
  if (multi_site && (method != "numeric" || !o.svg_path.empty()))
    fs = mp::build_farthest_structures(ps);

  if (method != "numeric") {
    const mp::TwoCentroidSet tc = mp::two_centroids(ps);
    geo = fs ? mp::solve_quadratic_prepared(ps, tc, *fs, order)
             : mp::solve_quadratic(ps, order);
    mp::log_info("geometric centre at " + pt(geo->s_star) + " via " +
                 geo->witness_face);
  }
  if (method != "geometric") {
    num = mp::solve_numeric(ps, o.alpha, o.tol);
    mp::log_info("numeric centre at " + pt(num->s) + " certified gap " +
                 mp::format_double(num->certified_gap));
    if (!num->converged) {
      std::cerr << "numeric solver failed to certify convergence (gap "
                << mp::format_double(num->certified_gap) << ")\n";
      return kExitNumeric;
    }
  }

  mp::SolveArtifacts art;
  art.method = method;
  art.alpha = o.alpha;
  art.geometric = geo ? &*geo : nullptr;
  art.numeric = num ? &*num : nullptr;
  if (geo && num) art.cross_distance = mp::dist(geo->s_star, num->s);

  const mp::Point s = geo ? geo->s_star : num->s;
  std::cout << "n = " << ps.size() << ", alpha = " << mp::format_double(o.alpha)
            << ", method = " << method << "\n";
  std::cout << "s* = " << pt(s) << "\n";
  std::cout << "objective = "
            << mp::format_double(geo ? geo->objective : num->objective) << "\n";
  if (geo) {
    std::cout << "case " << geo->case_id << ", witness " << geo->witness_face
              << ", active = [";
    for (size_t i = 0; i < geo->active.size(); ++i)
      std::cout << (i ? ", " : "") << geo->active[i];
    std::cout << "], lambdas = [";
    for (size_t i = 0; i < geo->lambdas.size(); ++i)
      std::cout << (i ? ", " : "") << mp::format_double(geo->lambdas[i]);
    std::cout << "]\n";
  }
  if (geo && num)
    std::cout << "cross-check distance = "
              << mp::format_double(art.cross_distance) << " (tolerance "
              << mp::format_double(1e-5 * diam) << ")\n";

  if (!o.json_path.empty())
    mp::write_text_file(o.json_path, mp::result_to_json(art));
  if (!o.csv_path.empty())
    mp::write_text_file(o.csv_path, mp::points_to_csv(ps));
  if (!o.svg_path.empty()) {
    if (!fs)
      throw mp::IoError("cannot render a diagram for a single location");
    mp::emit_svg(ps, *fs, geo ? &*geo : nullptr, o.svg_path);
  }

  if (geo && num && art.cross_distance > 1e-5 * diam) {
    std::cerr << "cross-check failure: solvers disagree by "
              << mp::format_double(art.cross_distance) << "\n";
    return kExitCrossCheck;
  }
  return kExitOk;
}

int run_ratio(const CommonOpts& o, const std::string& sizes_csv, int trials,
              uint64_t seed) {
  if (!o.input.empty()) {
    const mp::PointSet ps = mp::parse_points(o.input);
    const mp::RatioReport rep = mp::approx_ratio(ps);
    std::cout << "rho = " << mp::format_double(rep.rho) << " (k = " << rep.k
              << ", n = " << rep.n
              << ", bound = " << mp::format_double(rep.bound)
              << ", slack = " << mp::format_double(rep.slack) << ")\n";
    if (!o.json_path.empty())
      mp::write_text_file(o.json_path, mp::ratio_report_to_json(rep));
    return rep.slack >= -1e-9 ? kExitOk : kExitCrossCheck;
  }
  if (sizes_csv.empty())
    throw mp::ParseError("ratio: need --input FILE or --sizes LIST");
  std::vector<int> sizes;
  for (double v : parse_alpha_list(sizes_csv))
    sizes.push_back(static_cast<int>(v));
  const auto rows = mp::ratio_limit_experiment(seed, sizes, trials);
  const std::string csv = mp::ratio_rows_to_csv(rows);
  if (!o.csv_path.empty())
    mp::write_text_file(o.csv_path, csv);
  else
    std::cout << csv;
  for (const auto& r : rows)
    if (r.max_rho > r.bound + 1e-9) {
      std::cerr << "bound violated at n = " << r.n << "\n";
      return kExitCrossCheck;
    }
  return kExitOk;
}

int run_sweep(const CommonOpts& o, const std::string& alphas_csv) {
  const mp::PointSet ps = mp::parse_points(o.input);
  const std::vector<double> alphas = parse_alpha_list(alphas_csv);
  const auto rows = mp::alpha_sweep(ps, alphas);
  const std::string csv = mp::sweep_rows_to_csv(rows);
  if (!o.csv_path.empty())
    mp::write_text_file(o.csv_path, csv);
  else
    std::cout << csv;
  return kExitOk;
}

int run_generate(const CommonOpts& o, const std::string& target_str) {
  const mp::PointSet base = mp::parse_points(o.input);
  const mp::Point w = parse_point_arg(target_str);
  const mp::GeneratedInstance gi =
      mp::generate_target_instance(base, w, o.tol > 0 ? o.tol : 1e-9);
  std::cout << "added node " << pt(gi.y) << " x" << gi.m << ", |s* - target| = "
            << mp::format_double(gi.achieved_distance) << "\n";
  if (!o.csv_path.empty())
    mp::write_text_file(o.csv_path, mp::points_to_csv(gi.result));
  if (!o.json_path.empty())
    mp::write_text_file(o.json_path, mp::generated_to_json(gi));
  return kExitOk;
}

int run_validate(const CommonOpts& o) {
  const mp::PointSet ps = mp::parse_points(o.input);
  const mp::FarthestStructures fs = mp::build_farthest_structures(ps);
  const std::vector<std::string> violations =
      mp::check_structures(ps, fs.fpdt, fs.fpvd);
  for (const auto& v : violations) std::cerr << "violation: " << v << "\n";

  int rc = violations.empty() ? kExitOk : kExitCrossCheck;
  try {
    const mp::MinPowerResult res = mp::solve_quadratic(ps);
    mp::classify_case(ps, res);
    const mp::KktResiduals kkt = mp::kkt_residuals(ps, res);
    const double diam = mp::diameter(ps);
    std::cout << "solution checks: case " << res.case_id << ", stationarity "
              << mp::format_double(kkt.stationarity) << ", sum "
              << mp::format_double(kkt.multiplier_sum) << ", slackness "
              << mp::format_double(kkt.complementarity) << "\n";
    if (kkt.stationarity > 1e-9 * diam ||
        kkt.multiplier_sum > 1e-9 ||
        kkt.complementarity > 1e-9 * diam * diam) {
      std::cerr << "violation: KKT residuals exceed tolerance\n";
      rc = kExitCrossCheck;
    }
    mp::one_centre_checks(ps);
    std::cout << "one-centre relations hold\n";
  } catch (const mp::InconsistentResult& e) {
    std::cerr << "violation: " << e.what() << "\n";
    rc = kExitCrossCheck;
  } catch (const mp::ImplicationViolated& e) {
    std::cerr << "violation: " << e.what() << "\n";
    rc = kExitCrossCheck;
  }

  std::cout << "structures: " << fs.fpdt.size() << " triangles, "
            << fs.fpvd.vertices.size() << " diagram vertices, "
            << fs.fpvd.edges.size() << " edges, "
            << (violations.empty() ? "invariants hold" : "INVALID") << "\n";
  if (!o.json_path.empty())
    mp::write_text_file(o.json_path, mp::structures_to_json(ps, fs));
  if (!o.svg_path.empty()) mp::emit_svg(ps, fs, nullptr, o.svg_path);
  return rc;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool input_required = true) {
  auto* in = cmd->add_option("--input,-i", o.input, "point set (CSV or JSON; - for stdin)");
  if (input_required) in->required();
  cmd->add_option("--json", o.json_path, "write result JSON here");
  cmd->add_option("--svg", o.svg_path, "write an SVG picture here");
  cmd->add_option("--csv", o.csv_path, "write CSV output here");
  cmd->add_option("--tol", o.tol, "numeric tolerance")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "minpower: exact quadratic min-power centre of a planar point set\n"
      "(sum of squared distances plus the squared farthest distance)"};
  app.require_subcommand(1);

  CommonOpts so;
  auto* solve = app.add_subcommand("solve", "compute the centre");
  add_common(solve, so);
  solve->add_option("--alpha", so.alpha, "distance exponent in (1, 64]")
      ->capture_default_str();
  solve->add_option("--method", so.method,
                    "geometric | numeric | both (default: both for alpha 2, "
                    "numeric otherwise)");
  solve->add_option("--scan-order", so.scan_order,
                    "face scan order: paper | centroid-first")
      ->capture_default_str();

  CommonOpts ro;
  std::string sizes_csv;
  int trials = 200;
  uint64_t seed = 1;
  auto* ratio = app.add_subcommand(
      "ratio", "centroid approximation ratio (one instance or an experiment)");
  add_common(ratio, ro, /*input_required=*/false);
  ratio->add_option("--sizes", sizes_csv, "experiment sizes, e.g. 10,100,1000");
  ratio->add_option("--trials", trials, "instances per size")
      ->capture_default_str();
  ratio->add_option("--seed", seed, "experiment seed")->capture_default_str();

  CommonOpts wo;
  std::string alphas_csv = "1.5,2,4,8,16,32";
  auto* sweep = app.add_subcommand("sweep", "numeric centre across exponents");
  add_common(sweep, wo);
  sweep->add_option("--alphas", alphas_csv, "comma-separated exponents")
      ->capture_default_str();

  CommonOpts go;
  std::string target_str;
  auto* gen = app.add_subcommand(
      "generate", "instance whose centre is a prescribed diagram point");
  add_common(gen, go);
  gen->add_option("--target", target_str, "target point \"x,y\"")->required();

  CommonOpts vo;
  auto* validate =
      app.add_subcommand("validate", "run the structural invariant suite");
  add_common(validate, vo);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(so);
    if (ratio->parsed()) return run_ratio(ro, sizes_csv, trials, seed);
    if (sweep->parsed()) return run_sweep(wo, alphas_csv);
    if (gen->parsed()) return run_generate(go, target_str);
    if (validate->parsed()) return run_validate(vo);
  } catch (const mp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const mp::EmptyInput& e) {
    std::cerr << "empty input: " << e.what() << "\n";
    return kExitInput;
  } catch (const mp::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitInput;
  } catch (const mp::InvalidAlpha& e) {
    std::cerr << "invalid alpha: " << e.what() << "\n";
    return kExitInput;
  } catch (const mp::TargetNotOnDiagram& e) {
    std::cerr << "generate: " << e.what() << "\n";
    return kExitInput;
  } catch (const mp::NoFeasibleM& e) {
    std::cerr << "generate: " << e.what() << "\n";
    return kExitInput;
  } catch (const mp::SingletonInput& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kExitInput;
  } catch (const mp::DegenerateHull& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
