#pragma once

#include <string>

#include "gcurves/curve.hpp"

namespace gcurves {

struct PlotOptions {
  bool hull = true;
  bool involute = false;
  int size = 800;  // pixels, square canvas
};

/// Static SVG of the chart image of a curve. Output depends only on the
/// curve and the options, so identical inputs give identical bytes.
std::string render_svg(const Curve& curve, const PlotOptions& options = {});

}  // namespace gcurves
