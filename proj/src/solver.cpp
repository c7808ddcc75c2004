#include "givp/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace givp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

// Offsets above safety * min(sin(alpha/2), 2/sqrt(5)) * rho0 or above
// safety * (sqrt(2)-1) * d_feat break the clearance budget: the first factor
// keeps every pair foot at least eps/2 away from its vertex (which bounds
// every non-certified cover circle by sqrt(2)*eps), the second keeps sites of
// vertex-disjoint edges strictly outside circles of that size. Edges that do
// share a vertex put their site band only w*sin(phi) - eps from a cover
// circle center sitting w along the other edge (phi acute; for obtuse phi the
// shared vertex itself is the closest approach), so the foot distance
// w = sqrt(rho^2 - eps^2) must also clear (1+sqrt(2))*eps against the
// sharpest such angle.
const double kFootFactor = 2.0 / std::sqrt(5.0);
const double kFeatureFactor = std::sqrt(2.0) - 1.0;
const double kAdjacentFactor = 1.0 + std::sqrt(2.0);

bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

// All feet and sites of an edge are derived from this frame. Its origin is
// the lexicographically smaller endpoint, so equal geometry produces
// bit-equal sites no matter how the vertices are numbered.
struct EdgeFrame {
  Point origin;
  Point dir;   // unit vector toward the other endpoint
  Point npos;  // unit normal on the positive side of the edge line
  LineEq line;
  double len = 0.0;
};

EdgeFrame make_frame(const Segment& s) {
  Segment c = lex_less(s.a, s.b) ? s : Segment{s.b, s.a};
  LineEq l = line_through(c.a, c.b);
  return {c.a, normalized(c.b - c.a), {l.a, l.b}, l, length(c)};
}

Point at(const EdgeFrame& fr, double t) { return fr.origin + t * fr.dir; }

SentinelPair pair_at(const EdgeFrame& fr, int edge, double t, double off) {
  Point foot = at(fr, t);
  return {foot + off * fr.npos, foot - off * fr.npos, edge, foot, off, t};
}

CoverCircle circle_at(const EdgeFrame& fr, double t, double r, std::vector<int> pair_index) {
  return {{at(fr, t), r}, std::move(pair_index)};
}

// Smallest distance between the feet of a vertex pair (at distance w from
// its vertex) and a pair whose offset equals that distance, such that the
// latter stays outside the vertex circle.
double min_foot_shift(double w, double eps) {
  return eps * eps / (std::sqrt(w * w + 2.0 * eps * eps) + w);
}

// Sort pairs along the edge and renumber the circle references accordingly.
void normalize_plan(const EdgeFrame& fr, EdgeCoverPlan& plan) {
  std::vector<int> order(plan.pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return plan.pairs[i].foot_param < plan.pairs[j].foot_param;
  });
  std::vector<int> where(order.size());
  std::vector<SentinelPair> sorted;
  sorted.reserve(order.size());
  for (int n = 0; n < static_cast<int>(order.size()); ++n) {
    where[order[n]] = n;
    sorted.push_back(plan.pairs[order[n]]);
  }
  plan.pairs = std::move(sorted);
  for (CoverCircle& c : plan.circles)
    for (int& idx : c.pair_index) idx = where[idx];
  std::stable_sort(plan.circles.begin(), plan.circles.end(),
                   [&](const CoverCircle& a, const CoverCircle& b) {
                     return dot(a.circle.center - fr.origin, fr.dir) <
                            dot(b.circle.center - fr.origin, fr.dir);
                   });
}

EdgeCoverPlan start_plan(int edge_id, const SentinelPair& u_pair, const SentinelPair& v_pair,
                         double eps) {
  EdgeCoverPlan plan;
  plan.edge = edge_id;
  plan.w1 = u_pair.foot_param;
  plan.w2 = v_pair.foot_param;
  plan.delta = plan.w2 - plan.w1;
  if (!(eps > 0.0) || !(plan.delta > 0.0))
    throw std::invalid_argument("cover_edge: need eps > 0 and w1 < w2");
  plan.pairs.push_back(u_pair);  // index 0
  plan.pairs.push_back(v_pair);  // index 1
  return plan;
}

// Earliest center parameter t > x0 at which the circle through the anchor
// pair (foot x0, offset eps), centered at parameter t on the edge, comes
// within eps of an obstacle segment. Infinity when growth is unobstructed.
// Best effort only: every accepted circle is re-checked directly.
double first_event(const EdgeFrame& fr, double x0, double eps,
                   const std::vector<Segment>& obstacles, double tol) {
  double best = kInf;
  Point foot = at(fr, x0);
  Point anchor = foot + eps * fr.npos;
  for (const Segment& f : obstacles) {
    LineEq lf = line_through(f.a, f.b);
    // Tangency against the segment interior: grow until the circle reaches
    // the eps-offset of f's line, valid if the contact projects into f.
    if (signed_dist(lf, foot) != 0.0) {
      LineEq off = offset_line(lf, eps, foot);
      if (auto c = grow_circle_on_edge(fr.line, fr.origin, fr.dir, anchor, off)) {
        double t = dot(c->center - fr.origin, fr.dir);
        double u = dot(project_onto(lf, c->center) - f.a, f.b - f.a) / norm2(f.b - f.a);
        if (t > x0 + tol && u >= 0.0 && u <= 1.0) best = std::min(best, t);
      }
    }
    // Tangency against an endpoint P: |center - P| = radius + eps, valid if
    // P is the segment's closest point to the center.
    for (Point P : {f.a, f.b}) {
      double px = dot(P - fr.origin, fr.dir);
      double py = dot(P - fr.origin, fr.npos);
      double A = 2.0 * (x0 - px);
      double B = px * px + py * py - x0 * x0 - 2.0 * eps * eps;
      double qa = A * A - 4.0 * eps * eps;
      double qb = 2.0 * A * B + 8.0 * eps * eps * x0;
      double qc = B * B - 4.0 * eps * eps * (x0 * x0 + eps * eps);
      std::array<double, 2> roots{kInf, kInf};
      if (std::abs(qa) < 1e-14 * std::max({std::abs(qb), std::abs(qc), 1.0})) {
        if (qb != 0.0) roots[0] = -qc / qb;
      } else {
        double disc = qb * qb - 4.0 * qa * qc;
        if (disc < 0.0) continue;
        double sq = std::sqrt(disc);
        double q = -(qb + (qb >= 0.0 ? sq : -sq)) / 2.0;
        roots[0] = q / qa;
        if (q != 0.0) roots[1] = qc / q;
      }
      for (double t : roots) {
        if (!std::isfinite(t) || t <= x0 + tol) continue;
        if (A * t + B < 0.0) continue;  // wrong branch of the squared equation
        Point c = at(fr, t);
        double u = dot(c - f.a, f.b - f.a) / norm2(f.b - f.a);
        bool is_a = P == f.a;
        if ((is_a && u <= 0.0) || (!is_a && u >= 1.0)) best = std::min(best, t);
      }
    }
  }
  return best;
}

double feature_distance(const Pslg& g) {
  double d = kInf;
  int ne = static_cast<int>(g.edges.size());
  for (int e = 0; e < ne; ++e) {
    auto [ea, eb] = g.edges[e];
    Segment se = g.segment(e);
    for (int f = e + 1; f < ne; ++f) {
      auto [fa, fb] = g.edges[f];
      if (ea == fa || ea == fb || eb == fa || eb == fb) continue;
      d = std::min(d, dist_segment_segment(se, g.segment(f)));
    }
  }
  return d;
}

void check_config(const char* fn, const SolverConfig& cfg) {
  if (!(cfg.safety > 0.0 && cfg.safety < 1.0))
    throw std::invalid_argument(std::string(fn) + ": safety must be in (0, 1)");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument(std::string(fn) + ": tol must be positive");
}

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::naive: return "naive";
    case Variant::sequential: return "sequential";
    case Variant::recursive: return "recursive";
  }
  throw std::invalid_argument("to_string: bad variant value");
}

Variant variant_from_string(const std::string& s) {
  if (s == "naive") return Variant::naive;
  if (s == "sequential") return Variant::sequential;
  if (s == "recursive") return Variant::recursive;
  throw std::invalid_argument("variant_from_string: unknown variant '" + s + "'");
}

std::vector<InitialCircle> initial_circles(const Pslg& g, const SolverConfig& cfg) {
  check_config("initial_circles", cfg);
  if (g.edges.empty()) throw std::invalid_argument("initial_circles: graph has no edges");
  double touch = cfg.tol * g.bbox_diag;
  std::vector<InitialCircle> out;
  int nv = static_cast<int>(g.vertices.size());
  int ne = static_cast<int>(g.edges.size());
  for (int u = 0; u < nv; ++u) {
    if (g.degree(u) == 0) continue;  // an isolated vertex constrains nothing
    double lam = kInf;
    for (int h : g.out[u]) lam = std::min(lam, length(g.segment(g.half[h].edge)));
    double d = kInf;
    for (int e = 0; e < ne; ++e) {
      if (g.edges[e].first == u || g.edges[e].second == u) continue;
      double de = dist_point_segment(g.vertices[u], g.segment(e));
      if (de <= touch)
        throw std::invalid_argument("initial_circles: vertex " + std::to_string(u) +
                                    " touches edge " + std::to_string(e));
      d = std::min(d, de);
    }
    out.push_back({u, cfg.safety * std::min(lam / 2.0, d)});
  }
  return out;
}

double choose_epsilon(const Pslg& g, std::vector<InitialCircle>& circles,
                      const SolverConfig& cfg) {
  check_config("choose_epsilon", cfg);
  if (circles.empty()) throw std::invalid_argument("choose_epsilon: no vertex circles");
  int nc = static_cast<int>(circles.size());
  int ne = static_cast<int>(g.edges.size());

  // Per vertex: half the shortest incident edge, plus the nearest
  // non-incident edge split into two clearance classes. An edge that shares
  // a vertex with every edge through u only needs room for u's own pairs
  // (slack eps); any other edge may also carry cover pairs approaching the
  // shared region, which costs 2.5 eps.
  std::vector<double> lam2(nc), d_near(nc, kInf), d_far(nc, kInf);
  for (int i = 0; i < nc; ++i) {
    int u = circles[i].vertex;
    double lam = kInf;
    std::vector<int> nb;
    for (int h : g.out[u]) {
      lam = std::min(lam, length(g.segment(g.half[h].edge)));
      nb.push_back(g.target(h));
    }
    lam2[i] = lam / 2.0;
    for (int e = 0; e < ne; ++e) {
      auto [a, b] = g.edges[e];
      if (a == u || b == u) continue;
      bool covers = nb.size() <= 2;
      for (int v : nb) covers = covers && (v == a || v == b);
      double d = dist_point_segment(g.vertices[u], g.segment(e));
      (covers ? d_near[i] : d_far[i]) = std::min(covers ? d_near[i] : d_far[i], d);
    }
  }

  // Per vertex: the sine of the sharpest acute angle between two incident
  // edges, or 1 when at least two edges meet there but none acutely (the
  // shared vertex itself is then the closest approach). Degree-one vertices
  // have no adjacent band to guard against.
  std::vector<double> adj_sin(nc, kInf);
  for (int i = 0; i < nc; ++i) {
    int u = circles[i].vertex;
    std::vector<Point> dirs;
    for (int h : g.out[u]) dirs.push_back(normalized(g.vertices[g.target(h)] - g.vertices[u]));
    if (dirs.size() < 2) continue;
    double s = 1.0;
    for (size_t a = 0; a + 1 < dirs.size(); ++a)
      for (size_t b = a + 1; b < dirs.size(); ++b)
        if (dot(dirs[a], dirs[b]) > 0.0) s = std::min(s, std::abs(cross(dirs[a], dirs[b])));
    adj_sin[i] = s;
  }

  double alpha = min_angle(g).value_or(kPi);
  double K = std::min(std::sin(alpha / 2.0), kFootFactor);
  double d_feat = feature_distance(g);

  auto rho = [&](int i, double e) {
    double r = lam2[i];
    if (std::isfinite(d_near[i])) r = std::min(r, d_near[i] - e);
    if (std::isfinite(d_far[i])) r = std::min(r, d_far[i] - 2.5 * e);
    return cfg.safety * r;
  };
  auto bound = [&](double e) {
    double r0 = kInf;
    double adj = kInf;
    for (int i = 0; i < nc; ++i) {
      double r = rho(i, e);
      r0 = std::min(r0, r);
      if (adj_sin[i] <= 1.0) {
        double w = std::sqrt(std::max(0.0, r * r - e * e));
        adj = std::min(adj, w * adj_sin[i] / kAdjacentFactor);
      }
    }
    double h = std::min(r0 * K, adj);
    if (std::isfinite(d_feat)) h = std::min(h, kFeatureFactor * d_feat);
    return cfg.safety * h;
  };

  // bound() is non-increasing and the radii shrink as eps grows, so the
  // largest self-consistent offset is the root of bound(e) - e; bisect it.
  double hi = bound(0.0);
  if (!(hi > 0.0))
    throw std::runtime_error("choose_epsilon: input too degenerate, no positive offset exists");
  double lo = 0.0;
  if (bound(hi) >= hi) {
    lo = hi;
  } else {
    for (int it = 0; it < 200; ++it) {
      double mid = (lo + hi) / 2.0;
      (bound(mid) >= mid ? lo : hi) = mid;
    }
  }
  double eps = lo;
  double rho0 = kInf;
  for (int i = 0; i < nc; ++i) {
    circles[i].radius = rho(i, eps);
    rho0 = std::min(rho0, circles[i].radius);
  }
  eps = std::min(eps, cfg.safety * K * rho0);
  if (std::isfinite(d_feat)) eps = std::min(eps, cfg.safety * kFeatureFactor * d_feat);
  for (int i = 0; i < nc; ++i)
    if (adj_sin[i] <= 1.0) {
      double r = circles[i].radius;
      double w = std::sqrt(std::max(0.0, r * r - eps * eps));
      eps = std::min(eps, cfg.safety * w * adj_sin[i] / kAdjacentFactor);
    }
  if (eps <= cfg.tol * g.bbox_diag)
    throw std::runtime_error("choose_epsilon: epsilon underflow, input too degenerate");
  if (cfg.epsilon_override) {
    double o = *cfg.epsilon_override;
    if (!(o > 0.0) || o > eps * (1.0 + 1e-12))
      throw std::invalid_argument("choose_epsilon: epsilon_override outside (0, computed bound]");
    eps = std::min(o, eps);
  }
  return eps;
}

std::vector<SentinelPair> place_initial_sentinels(const Pslg& g,
                                                  const std::vector<InitialCircle>& circles,
                                                  double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("place_initial_sentinels: eps must be positive");
  std::vector<SentinelPair> out;
  for (const InitialCircle& c : circles) {
    if (!(c.radius > eps))
      throw std::invalid_argument("place_initial_sentinels: eps must be below circle radius at vertex " +
                                  std::to_string(c.vertex));
    double w = std::sqrt(c.radius * c.radius - eps * eps);
    for (int h : g.out[c.vertex]) {
      int e = g.half[h].edge;
      EdgeFrame fr = make_frame(g.segment(e));
      double t = g.vertices[c.vertex] == fr.origin ? w : fr.len - w;
      out.push_back(pair_at(fr, e, t, eps));
    }
  }
  return out;
}

EdgeCoverPlan cover_edge_naive(const Segment& edge_seg, int edge_id, const SentinelPair& u_pair,
                               const SentinelPair& v_pair, double eps, double tol) {
  (void)tol;
  EdgeFrame fr = make_frame(edge_seg);
  EdgeCoverPlan plan = start_plan(edge_id, u_pair, v_pair, eps);
  int k = static_cast<int>(std::floor(plan.delta / (2.0 * eps))) + 1;
  for (int i = 0; i + 1 < k; ++i) {
    double t = plan.w1 + (2.0 * i + 1.0) * eps;
    plan.pairs.push_back(pair_at(fr, edge_id, t, eps));
    plan.circles.push_back(circle_at(fr, t, eps, {static_cast<int>(plan.pairs.size()) - 1}));
  }
  double w_u = plan.w1;           // the vertices sit at parameters 0 and len
  double w_v = fr.len - plan.w2;
  if (k == 1) {
    double mu = plan.delta / 2.0;
    if (mu >= std::max(min_foot_shift(w_u, eps), min_foot_shift(w_v, eps))) {
      plan.pairs.push_back(pair_at(fr, edge_id, plan.w1 + mu, mu));
      plan.circles.push_back(
          circle_at(fr, plan.w1 + mu, mu, {static_cast<int>(plan.pairs.size()) - 1}));
    } else {
      // A pair with offset mu this close to a vertex circle would sit inside
      // it; span the whole middle with a circle through the vertex pairs.
      plan.circles.push_back(circle_at(fr, plan.w1 + mu, std::sqrt(mu * mu + eps * eps), {0, 1}));
    }
  } else {
    double rem = plan.delta - 2.0 * (k - 1) * eps;  // in [0, 2 eps)
    double p = plan.w1 + (2.0 * k - 3.0) * eps;     // foot of the last full pair
    int pi = static_cast<int>(plan.pairs.size()) - 1;
    if (rem / 2.0 >= min_foot_shift(w_v, eps)) {
      double mu = rem / 2.0;
      plan.pairs.push_back(pair_at(fr, edge_id, plan.w2 - mu, mu));
      plan.circles.push_back(
          circle_at(fr, plan.w2 - mu, mu, {static_cast<int>(plan.pairs.size()) - 1}));
    } else {
      double half = (plan.w2 - p) / 2.0;
      plan.circles.push_back(
          circle_at(fr, p + half, std::sqrt(half * half + eps * eps), {pi, 1}));
    }
  }
  normalize_plan(fr, plan);
  return plan;
}

EdgeCoverPlan cover_edge_sequential(const Segment& edge_seg, int edge_id,
                                    const SentinelPair& u_pair, const SentinelPair& v_pair,
                                    double eps, const std::vector<Segment>& obstacles,
                                    double tol) {
  EdgeFrame fr = make_frame(edge_seg);
  EdgeCoverPlan plan = start_plan(edge_id, u_pair, v_pair, eps);
  double band = 1e-7 * eps;
  auto band_ok = [&](Point center, double r) {
    for (const Segment& f : obstacles)
      if (dist_point_segment(center, f) < r + eps - band) return false;
    return true;
  };
  int anchor = 0;
  double x0 = plan.w1;
  while (true) {
    double span = plan.w2 - x0;
    if (span <= 2.0 * eps + tol) {
      // close the edge with a circle through the anchor and the far pair
      plan.circles.push_back(circle_at(fr, x0 + span / 2.0,
                                       std::sqrt(span * span / 4.0 + eps * eps), {anchor, 1}));
      break;
    }
    bool feasible = true;
    for (const Segment& f : obstacles)
      if (dist_point_segment(at(fr, x0), f) < 2.0 * eps) { feasible = false; break; }
    double t_clamp = x0 + span / 2.0;
    double t_star = feasible ? first_event(fr, x0, eps, obstacles, tol) : x0;
    if (feasible && t_star >= t_clamp) {
      double r = std::sqrt(span * span / 4.0 + eps * eps);
      if (band_ok(at(fr, t_clamp), r)) {
        plan.circles.push_back(circle_at(fr, t_clamp, r, {anchor, 1}));
        break;
      }
    }
    bool stepped = false;
    if (feasible && t_star < t_clamp && 2.0 * (t_star - x0) >= 2.0 * eps) {
      double r = std::sqrt((t_star - x0) * (t_star - x0) + eps * eps);
      if (band_ok(at(fr, t_star), r)) {
        double xb = 2.0 * t_star - x0;
        plan.pairs.push_back(pair_at(fr, edge_id, xb, eps));
        int ni = static_cast<int>(plan.pairs.size()) - 1;
        plan.circles.push_back(circle_at(fr, t_star, r, {anchor, ni}));
        anchor = ni;
        x0 = xb;
        stepped = true;
      }
    }
    if (!stepped) {
      // bubble step: a sqrt(2) eps circle through the anchor that advances
      // the frontier by exactly 2 eps, valid regardless of obstacles
      double xb = x0 + 2.0 * eps;
      plan.pairs.push_back(pair_at(fr, edge_id, xb, eps));
      int ni = static_cast<int>(plan.pairs.size()) - 1;
      plan.circles.push_back(circle_at(fr, x0 + eps, std::sqrt(2.0) * eps, {anchor, ni}));
      anchor = ni;
      x0 = xb;
    }
  }
  normalize_plan(fr, plan);
  return plan;
}

namespace {

void cover_rec(const EdgeFrame& fr, int edge_id, double a, double b, int pair_a, int pair_b,
               double eps, const std::vector<Segment>& obstacles, double tol,
               EdgeCoverPlan& plan) {
  double len = b - a;
  if (len <= tol) return;
  double m = (a + b) / 2.0;
  double d_obs = kInf;
  for (const Segment& f : obstacles) d_obs = std::min(d_obs, dist_point_segment(at(fr, m), f));
  double r_span = std::sqrt(len * len / 4.0 + eps * eps);
  if (d_obs - eps >= r_span) {
    plan.circles.push_back(circle_at(fr, m, r_span, {pair_a, pair_b}));
    return;
  }
  if (len <= 2.0 * eps) {
    plan.pairs.push_back(pair_at(fr, edge_id, m, eps));
    plan.circles.push_back(circle_at(fr, m, eps, {static_cast<int>(plan.pairs.size()) - 1}));
    return;
  }
  double r = std::max(eps, d_obs - eps);  // below r_span here
  double h = std::sqrt(std::max(0.0, r * r - eps * eps));
  if (h <= tol) {
    plan.pairs.push_back(pair_at(fr, edge_id, m, eps));
    int pm = static_cast<int>(plan.pairs.size()) - 1;
    plan.circles.push_back(circle_at(fr, m, eps, {pm}));
    cover_rec(fr, edge_id, a, m, pair_a, pm, eps, obstacles, tol, plan);
    cover_rec(fr, edge_id, m, b, pm, pair_b, eps, obstacles, tol, plan);
  } else {
    plan.pairs.push_back(pair_at(fr, edge_id, m - h, eps));
    int pl = static_cast<int>(plan.pairs.size()) - 1;
    plan.pairs.push_back(pair_at(fr, edge_id, m + h, eps));
    int pr = static_cast<int>(plan.pairs.size()) - 1;
    plan.circles.push_back(circle_at(fr, m, r, {pl, pr}));
    cover_rec(fr, edge_id, a, m - h, pair_a, pl, eps, obstacles, tol, plan);
    cover_rec(fr, edge_id, m + h, b, pr, pair_b, eps, obstacles, tol, plan);
  }
}

}  // namespace

EdgeCoverPlan cover_edge_recursive(const Segment& edge_seg, int edge_id,
                                   const SentinelPair& u_pair, const SentinelPair& v_pair,
                                   double eps, const std::vector<Segment>& obstacles,
                                   double tol) {
  EdgeFrame fr = make_frame(edge_seg);
  EdgeCoverPlan plan = start_plan(edge_id, u_pair, v_pair, eps);
  cover_rec(fr, edge_id, plan.w1, plan.w2, 0, 1, eps, obstacles, tol, plan);
  normalize_plan(fr, plan);
  return plan;
}

Solution solve(const Pslg& g, const SolverConfig& cfg) {
  check_config("solve", cfg);
  std::vector<InitialCircle> circles = initial_circles(g, cfg);
  double eps = choose_epsilon(g, circles, cfg);
  std::vector<SentinelPair> pairs = place_initial_sentinels(g, circles, eps);

  int ne = static_cast<int>(g.edges.size());
  // the pair nearer the frame origin comes first; feet are within half the
  // edge of their own vertex, so the mid test is unambiguous
  std::vector<std::array<int, 2>> end_pairs(ne, {-1, -1});
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
    const SentinelPair& p = pairs[i];
    double len = length(g.segment(p.edge));
    end_pairs[p.edge][p.foot_param < len / 2.0 ? 0 : 1] = i;
  }

  double tol_abs = cfg.tol * g.bbox_diag;
  Solution sol;
  sol.report.alpha = min_angle(g).value_or(kPi);
  sol.report.epsilon = eps;
  sol.report.d_feat = feature_distance(g);
  sol.report.safety = cfg.safety;
  sol.report.variant = cfg.variant;
  sol.report.rho0 = kInf;
  for (const InitialCircle& c : circles) sol.report.rho0 = std::min(sol.report.rho0, c.radius);

  std::vector<Segment> obstacles;
  for (int e = 0; e < ne; ++e) {
    const SentinelPair& up = pairs[end_pairs[e][0]];
    const SentinelPair& vp = pairs[end_pairs[e][1]];
    Segment seg = g.segment(e);
    EdgeCoverPlan plan;
    if (cfg.variant == Variant::naive) {
      plan = cover_edge_naive(seg, e, up, vp, eps, tol_abs);
    } else {
      // circles centered on e never reach farther than its length plus the
      // clearance budget, so distant edges cannot participate in any event
      obstacles.clear();
      double reach = length(seg) + 3.0 * eps;
      for (int f = 0; f < ne; ++f) {
        if (f == e) continue;
        Segment sf = g.segment(f);
        if (dist_segment_segment(seg, sf) > reach) continue;
        obstacles.push_back(lex_less(sf.a, sf.b) ? sf : Segment{sf.b, sf.a});
      }
      plan = cfg.variant == Variant::sequential
                 ? cover_edge_sequential(seg, e, up, vp, eps, obstacles, tol_abs)
                 : cover_edge_recursive(seg, e, up, vp, eps, obstacles, tol_abs);
    }
    sol.report.plans.push_back(std::move(plan));
  }

  for (const EdgeCoverPlan& plan : sol.report.plans) {
    sol.report.counts.pairs += static_cast<int>(plan.pairs.size());
    sol.report.counts.cover_circles += static_cast<int>(plan.circles.size());
    for (const SentinelPair& p : plan.pairs) {
      sol.sites.push_back(p.p);
      sol.sites.push_back(p.q);
    }
  }
  std::sort(sol.sites.begin(), sol.sites.end(), lex_less);
  sol.sites.erase(std::unique(sol.sites.begin(), sol.sites.end()), sol.sites.end());
  sol.report.counts.sites = static_cast<int>(sol.sites.size());
  sol.report.counts.initial_circles = static_cast<int>(circles.size());
  return sol;
}

namespace {

nlohmann::ordered_json pt_json(Point p) { return nlohmann::ordered_json::array({p.x, p.y}); }

Point pt_load(const nlohmann::ordered_json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

void save_solution(const Solution& sol, const std::string& path) {
  nlohmann::ordered_json j;
  auto& js = j["sites"] = nlohmann::ordered_json::array();
  for (Point p : sol.sites) js.push_back(pt_json(p));
  nlohmann::ordered_json jr;
  jr["alpha"] = sol.report.alpha;
  jr["rho0"] = sol.report.rho0;
  jr["epsilon"] = sol.report.epsilon;
  if (std::isfinite(sol.report.d_feat))
    jr["d_feat"] = sol.report.d_feat;
  else
    jr["d_feat"] = nullptr;
  jr["safety"] = sol.report.safety;
  jr["variant"] = to_string(sol.report.variant);
  jr["counts"] = {{"sites", sol.report.counts.sites},
                  {"pairs", sol.report.counts.pairs},
                  {"initial_circles", sol.report.counts.initial_circles},
                  {"cover_circles", sol.report.counts.cover_circles}};
  auto& jp = jr["plans"] = nlohmann::ordered_json::array();
  for (const EdgeCoverPlan& plan : sol.report.plans) {
    nlohmann::ordered_json e;
    e["edge"] = plan.edge;
    e["w1"] = plan.w1;
    e["w2"] = plan.w2;
    e["delta"] = plan.delta;
    auto& ep = e["pairs"] = nlohmann::ordered_json::array();
    for (const SentinelPair& p : plan.pairs)
      ep.push_back({{"p", pt_json(p.p)},
                    {"q", pt_json(p.q)},
                    {"foot", pt_json(p.foot)},
                    {"foot_param", p.foot_param},
                    {"offset", p.offset}});
    auto& ec = e["circles"] = nlohmann::ordered_json::array();
    for (const CoverCircle& c : plan.circles)
      ec.push_back({{"center", pt_json(c.circle.center)},
                    {"radius", c.circle.radius},
                    {"pairs", c.pair_index}});
    jp.push_back(std::move(e));
  }
  j["report"] = std::move(jr);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_solution: cannot open " + path);
  out << j.dump(2) << "\n";
}

Solution load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_solution: cannot open " + path);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(in);
  if (!j.contains("sites") || !j.contains("report"))
    throw std::runtime_error("load_solution: missing sites/report in " + path);
  Solution sol;
  for (const auto& jp : j["sites"]) sol.sites.push_back(pt_load(jp));
  const auto& jr = j["report"];
  sol.report.alpha = jr.at("alpha").get<double>();
  sol.report.rho0 = jr.at("rho0").get<double>();
  sol.report.epsilon = jr.at("epsilon").get<double>();
  sol.report.d_feat = jr.at("d_feat").is_null() ? kInf : jr.at("d_feat").get<double>();
  sol.report.safety = jr.at("safety").get<double>();
  sol.report.variant = variant_from_string(jr.at("variant").get<std::string>());
  const auto& jc = jr.at("counts");
  sol.report.counts.sites = jc.at("sites").get<int>();
  sol.report.counts.pairs = jc.at("pairs").get<int>();
  sol.report.counts.initial_circles = jc.at("initial_circles").get<int>();
  sol.report.counts.cover_circles = jc.at("cover_circles").get<int>();
  for (const auto& je : jr.at("plans")) {
    EdgeCoverPlan plan;
    plan.edge = je.at("edge").get<int>();
    plan.w1 = je.at("w1").get<double>();
    plan.w2 = je.at("w2").get<double>();
    plan.delta = je.at("delta").get<double>();
    for (const auto& jp : je.at("pairs")) {
      SentinelPair p;
      p.p = pt_load(jp.at("p"));
      p.q = pt_load(jp.at("q"));
      p.edge = plan.edge;
      p.foot = pt_load(jp.at("foot"));
      p.foot_param = jp.at("foot_param").get<double>();
      p.offset = jp.at("offset").get<double>();
      plan.pairs.push_back(p);
    }
    for (const auto& jc2 : je.at("circles")) {
      CoverCircle c;
      c.circle.center = pt_load(jc2.at("center"));
      c.circle.radius = jc2.at("radius").get<double>();
      for (const auto& ji : jc2.at("pairs")) c.pair_index.push_back(ji.get<int>());
      plan.circles.push_back(c);
    }
    sol.report.plans.push_back(std::move(plan));
  }
  return sol;
}

}  // namespace givp
