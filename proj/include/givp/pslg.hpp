#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "givp/geom.hpp"

namespace givp {

struct HalfEdge {
  int origin = -1;  // vertex id
  int twin = -1;
  int next = -1;
  int prev = -1;
  int face = -1;
  int edge = -1;    // undirected edge id
};

struct Face {
  int half_edge = -1;  // one incident half-edge (-1 for an empty unbounded face)
  bool bounded = false;
};

// Provenance of a generated tesselation, carried through save/load untouched.
struct GenInfo {
  bool present = false;
  std::uint64_t seed = 0;
  int n_points = 0;
  int n_edge_attempts = 0;
  Point box_lo, box_hi;
  std::string rng_id;
};

// Planar straight-line graph over a half-edge structure. Edges are stored
// with first < second and sorted lexicographically, so ids are canonical for
// a given (vertices, edge set) input. Edge k owns half-edges 2k (lo->hi) and
// 2k+1. Face 0 is the unbounded face; with nested disconnected components the
// hole cycles also attach to face 0, which keeps every count (and the Euler
// relation) correct even though hole containment is not resolved.
struct Pslg {
  std::vector<Point> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<HalfEdge> half;
  std::vector<Face> faces;
  std::vector<std::vector<int>> out;  // outgoing half-edges per vertex, CCW by angle
  int components = 0;
  Point bbox_lo, bbox_hi;
  double bbox_diag = 0.0;
  GenInfo gen;

  int degree(int v) const { return static_cast<int>(out[v].size()); }
  Segment segment(int e) const { return {vertices[edges[e].first], vertices[edges[e].second]}; }
  int target(int h) const { return half[half[h].twin].origin; }
  int num_bounded_faces() const {
    int n = 0;
    for (const Face& f : faces) n += f.bounded ? 1 : 0;
    return n;
  }
};

// Builds the subdivision; throws std::invalid_argument naming the offending
// vertices/edges on out-of-range indices, self loops, duplicate vertices or
// edges, zero-length edges, and edges that meet anywhere but a shared vertex.
Pslg build_pslg(std::vector<Point> vertices, std::vector<std::pair<int, int>> edge_list);

struct ValidationReport {
  std::vector<std::string> violations;      // empty means valid
  std::vector<int> nonconvex_faces;         // audit only, not a violation
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Pslg& g);

struct PslgMetrics {
  double alpha = 0.0;               // min angle over cyclically consecutive incident edges
  double delta = 0.0;               // longest edge length
  std::vector<double> lambda;       // per-vertex shortest incident edge (inf if isolated)
  Point bbox_lo, bbox_hi;
  double bbox_diag = 0.0;
};

// Smallest angular gap around any vertex of degree >= 2; nullopt if none.
std::optional<double> min_angle(const Pslg& g);

// Throws std::invalid_argument when alpha is undefined (no vertex of degree >= 2).
PslgMetrics metrics(const Pslg& g);

Pslg load_pslg(const std::string& path);
void save_pslg(const Pslg& g, const std::string& path);

}  // namespace givp
