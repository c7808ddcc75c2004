#pragma once

#include <cstdint>

#include "givp/geom.hpp"
#include "givp/pslg.hpp"

namespace givp {

struct TessGenConfig {
  std::uint64_t seed = 1;
  int n_points = 2;
  int n_edge_attempts = 0;
  Box box{{0.0, 0.0}, {100.0, 100.0}};
};

// Random tesselation: n_points uniform vertices in the box, then
// n_edge_attempts random vertex pairs inserted with full intersection
// splitting (crossings become new vertices), then a post-pass that connects
// components and raises every vertex to degree >= 2 where geometrically
// possible. Deterministic for a fixed config; the RNG algorithm is recorded
// in the output header. Degenerate candidates (collinear overlaps, grazing
// passes) are rejected and resampled.
Pslg generate(const TessGenConfig& cfg);

}  // namespace givp
