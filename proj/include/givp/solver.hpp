#pragma once

#include <optional>
#include <string>
#include <vector>

#include "givp/geom.hpp"
#include "givp/pslg.hpp"

namespace givp {

enum class Variant { naive, sequential, recursive };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

struct SolverConfig {
  Variant variant = Variant::sequential;
  // Multiplied into every radius/clearance bound so all the strict
  // inequalities of the guard certificate hold with real margin. Must be in
  // (0, 1).
  double safety = 0.995;
  // Relative tolerance (scaled by the bbox diagonal) for degeneracy checks.
  double tol = 1e-9;
  // Replaces the computed epsilon. Rejected unless 0 < value <= the computed
  // sound bound; a larger offset would break the guard invariants.
  std::optional<double> epsilon_override;
};

// Vertex circle: every edge incident to `vertex` receives a mirrored site
// pair on this circle's boundary.
struct InitialCircle {
  int vertex = -1;
  double radius = 0.0;
};

// Mirrored site pair guarding one edge: p and q are reflections of each
// other across the edge line, at distance `offset` from their common foot.
// foot_param is the foot's arclength along the edge, measured from the
// lexicographically smaller endpoint.
struct SentinelPair {
  Point p, q;
  int edge = -1;
  Point foot;
  double offset = 0.0;
  double foot_param = 0.0;
};

// One covering circle of an edge plan. Centers lie on the edge; the listed
// pairs (indices into EdgeCoverPlan::pairs, 1 or 2 of them) lie on its
// boundary.
struct CoverCircle {
  Circle circle;
  std::vector<int> pair_index;
};

// Complete guard layout for one edge. pairs is ordered by foot_param and
// starts/ends with the two vertex-circle pairs, whose feet sit at arclength
// w1 and w2; circles cover the middle segment [w1, w2] with closed chords.
struct EdgeCoverPlan {
  int edge = -1;
  double w1 = 0.0, w2 = 0.0, delta = 0.0;
  std::vector<SentinelPair> pairs;
  std::vector<CoverCircle> circles;
};

struct SolveCounts {
  int sites = 0;
  int pairs = 0;
  int initial_circles = 0;
  int cover_circles = 0;
};

struct SolveReport {
  double alpha = 0.0;       // smallest angle between incident edges (pi if none)
  double rho0 = 0.0;        // smallest vertex-circle radius
  double epsilon = 0.0;
  double d_feat = 0.0;      // min distance between edges sharing no vertex (inf if none)
  double safety = 0.0;
  Variant variant = Variant::sequential;
  SolveCounts counts;
  std::vector<EdgeCoverPlan> plans;
};

struct Solution {
  std::vector<Point> sites;  // lexicographic by (x, y), deduplicated
  SolveReport report;
};

// Vertex circles before epsilon is known: radius = safety * min(lambda/2,
// distance to the nearest non-incident edge). Throws std::invalid_argument
// if a vertex (nearly) touches a non-incident edge.
std::vector<InitialCircle> initial_circles(const Pslg& g, const SolverConfig& cfg);

// Picks the pair offset and shrinks the vertex circles to the joint
// fixpoint that keeps every site strictly clear of every foreign guard
// circle. On return both bounds hold:
//   epsilon <= safety * rho0 * sin(alpha/2)
//   epsilon <= safety * d_feat / 2
// Throws std::runtime_error when epsilon underflows the tolerance (input too
// degenerate) and std::invalid_argument for a rejected epsilon_override.
double choose_epsilon(const Pslg& g, std::vector<InitialCircle>& circles,
                      const SolverConfig& cfg);

// The 2*deg(u) pairs per vertex u, one pair per incident edge, feet at
// distance sqrt(rho^2 - eps^2) from u. Ordered by (vertex, outgoing
// half-edge order).
std::vector<SentinelPair> place_initial_sentinels(const Pslg& g,
                                                  const std::vector<InitialCircle>& circles,
                                                  double eps);

// Cover the middle segment of one edge. `edge_seg` runs from the lower-id
// vertex to the higher-id one, u_pair/v_pair are the vertex-circle pairs on
// its two ends, and `obstacles` holds every other edge of the graph (world
// coordinates). tol is absolute (already scaled).
EdgeCoverPlan cover_edge_naive(const Segment& edge_seg, int edge_id,
                               const SentinelPair& u_pair, const SentinelPair& v_pair,
                               double eps, double tol);
EdgeCoverPlan cover_edge_sequential(const Segment& edge_seg, int edge_id,
                                    const SentinelPair& u_pair, const SentinelPair& v_pair,
                                    double eps, const std::vector<Segment>& obstacles,
                                    double tol);
EdgeCoverPlan cover_edge_recursive(const Segment& edge_seg, int edge_id,
                                   const SentinelPair& u_pair, const SentinelPair& v_pair,
                                   double eps, const std::vector<Segment>& obstacles,
                                   double tol);

// Full pipeline. Deterministic for a fixed (g, cfg); relabeling-invariant up
// to the site multiset.
Solution solve(const Pslg& g, const SolverConfig& cfg);

void save_solution(const Solution& sol, const std::string& path);
Solution load_solution(const std::string& path);

}  // namespace givp
