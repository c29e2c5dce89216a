#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vext/sequences.hpp"
#include "vext/set_expr.hpp"

namespace vext {

struct PlotOptions {
  double x_min = -2.0, x_max = 12.0, y_min = -2.0, y_max = 12.0;
  int cells = 160;        // membership shading resolution
  int seq_points = 12;    // markers per sequence
  int width = 640, height = 640;
};

struct PlotArrow {
  Point from;
  Point to;
};

/// Deterministic SVG of 2-D sets (shaded), sequence points (indexed markers)
/// and witness shifts (arrows). Throws DimensionMismatch for non-2-D input.
std::string render_svg(const std::vector<SetExpr>& sets,
                       const std::vector<SequenceSpec>& sequences,
                       const std::vector<PlotArrow>& arrows, const PlotOptions& opts);

void save_svg(const std::string& path, const std::string& svg);

}  // namespace vext
