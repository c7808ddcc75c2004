#pragma once

#include <string>
#include <vector>

#include "givp/geom.hpp"
#include "givp/pslg.hpp"
#include "givp/solver.hpp"

namespace givp {

// Input bounding box inflated by twice the longest edge length on each side,
// large enough that every Voronoi edge relevant to the input stays interior.
Box verification_box(const Pslg& g);

// Closed half-plane: keep * signed_dist(boundary, p) >= 0.
struct HalfPlane {
  LineEq boundary;
  int keep;
};

bool half_plane_contains(const HalfPlane& h, Point p, double tol);

// Half-plane of points at least as close to p as to q; contains p.
HalfPlane bisector_half_plane(Point p, Point q);

struct VoronoiCell {
  int site;
  std::vector<Point> polygon;  // convex, counterclockwise
  std::vector<int> side_site;  // per side t -> t+1: neighbor site index, -1 on the box
};

struct VoronoiEdge {
  int site_a;  // always < site_b
  int site_b;
  Segment seg;
};

struct VoronoiDiagram {
  Box box;
  std::vector<Point> sites;
  std::vector<VoronoiCell> cells;
  std::vector<VoronoiEdge> edges;  // interior edges only, deduplicated
};

// O(n^2) half-plane clipping construction used as the verification oracle.
// Throws on an empty site list, sites outside the box, or duplicate sites.
VoronoiDiagram brute_force_voronoi(const std::vector<Point>& sites, const Box& box);

// Signed shoelace area, positive for counterclockwise polygons.
double polygon_area(const std::vector<Point>& poly);
bool polygon_contains(const std::vector<Point>& poly, Point p, double tol);

struct EdgeCheckResult {
  int edge;
  bool pass;
  std::string message;
};

struct CheckReport {
  bool pass = true;
  std::vector<EdgeCheckResult> edges;  // sorted by edge id
  // first counterexample; meaningful only when pass is false
  int fail_edge = -1;
  Point fail_point{0.0, 0.0};
  Point fail_site{0.0, 0.0};
  Point fail_circle_center{0.0, 0.0};
  double fail_circle_radius = 0.0;
  std::string message = "PASS";
};

// Exact certificate that every input edge appears in the Voronoi diagram of
// sol.sites. Along an edge, squared distance to a fixed mirrored pair and to
// any other site differ by a function linear in the edge parameter, so the
// check evaluates endpoints of envelope pieces only; no sampling involved.
// Also requires the plan circles' chords to cover [w1, w2] without gaps.
CheckReport exact_guard_check(const Pslg& g, const Solution& sol);

// Directed Hausdorff check, input edge -> union of Voronoi edges of vd whose
// generating sites mirror across that input edge, sampled densely. eps_hint
// sets the sampling density; when zero it is derived from the smallest site
// spacing in the diagram.
CheckReport edge_coverage_check(const Pslg& g, const VoronoiDiagram& vd, double tol,
                                double eps_hint = 0.0);

// Fast probabilistic cross-check: at sampled points of every edge the
// nearest sites form a mirrored pair of that edge, equidistant within
// tolerance. samples_per_interval must be at least 2.
CheckReport sampled_nearest_pair_check(const Pslg& g, const Solution& sol,
                                       int samples_per_interval);

}  // namespace givp
