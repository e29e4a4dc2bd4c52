#pragma once

#include <string>

#include "minpower/farthest.hpp"
#include "minpower/geom.hpp"
#include "minpower/solver.hpp"

namespace minpower {

// Deterministic SVG picture of an instance: nodes as black circles, shifted
// centroids as gray circles, the optimum (when given) as a white circle with
// a black stroke; farthest-point Voronoi edges solid (class "fpvd"), its
// dual triangulation dashed (class "fpdt"). Rays are clipped to a viewbox
// three times the hull bounding box.
std::string render_svg(const PointSet& ps, const FarthestStructures& fs,
                       const MinPowerResult* res);

// render_svg written to a file. Throws IoError.
void emit_svg(const PointSet& ps, const FarthestStructures& fs,
              const MinPowerResult* res, const std::string& path);

}  // namespace minpower
