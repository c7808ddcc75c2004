#pragma once

#include <string>

#include "givp/pslg.hpp"
#include "givp/solver.hpp"
#include "givp/verify.hpp"

namespace givp {

struct RenderOptions {
  double width = 800.0;       // SVG pixel width; height follows the aspect ratio
  double margin_frac = 0.05;  // padding around the drawing, fraction of the larger span
};

// Layered SVG picture of a tesselation, optionally overlaid with a guard
// solution (vertex circles, cover circles, sites) and a Voronoi diagram.
// Pass nullptr to skip an overlay. Output is deterministic for fixed inputs;
// all coordinates are printed with 6 decimals.
std::string render_svg(const Pslg& g, const Solution* sol, const VoronoiDiagram* vd,
                       const RenderOptions& opt = {});

}  // namespace givp
