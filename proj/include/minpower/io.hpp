#pragma once

#include <string>
#include <vector>

#include "minpower/analysis.hpp"
#include "minpower/farthest.hpp"
#include "minpower/geom.hpp"
#include "minpower/numeric.hpp"
#include "minpower/solver.hpp"

namespace minpower {

// Text -> points. The first non-space character picks the format: '[' or '{'
// means a JSON array of [x,y] pairs, anything else CSV lines "x,y" (optional
// non-numeric header on the first data line, '#' comments). Non-finite
// coordinates are rejected. Throws ParseError (with a line number for CSV)
// or EmptyInput.
PointSet parse_points_text(const std::string& text);

// File -> points ("-" reads stdin). Throws IoError on unreadable paths.
PointSet parse_points(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// 17 significant digits: parses back to the identical double.
std::string format_double(double v);

// "x,y" header plus one row per node; parses back to the identical set.
std::string points_to_csv(const PointSet& ps);

// Solve report with whichever halves ran. `cross_distance` is meaningful
// only when both pointers are set.
struct SolveArtifacts {
  std::string method;  // "geometric" | "numeric" | "both"
  double alpha = 2.0;
  const MinPowerResult* geometric = nullptr;
  const NumericSolution* numeric = nullptr;
  double cross_distance = 0.0;
};

// {s_star, objective, case, active_indices, lambdas, witness_face, method,
//  alpha, cross_check:{numeric_s, distance}} — combinatorial fields are null
// for purely numeric runs, cross_check is null unless both halves ran.
// Throws IoError if any number to be written is not finite.
std::string result_to_json(const SolveArtifacts& art);

std::string ratio_report_to_json(const RatioReport& rep);
std::string ratio_rows_to_csv(const std::vector<RatioLimitRow>& rows);
std::string sweep_rows_to_csv(const std::vector<AlphaSweepRow>& rows);
std::string generated_to_json(const GeneratedInstance& gi);

// Debug dump of both farthest-point structures (the `validate --json` body).
std::string structures_to_json(const PointSet& ps, const FarthestStructures& fs);

}  // namespace minpower
