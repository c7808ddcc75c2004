#include "givp/tessgen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace givp {

namespace {

bool same_edge(std::pair<int, int> e, int a, int b) {
  return (e.first == a && e.second == b) || (e.first == b && e.second == a);
}

// Sine of the smallest angle the generator accepts between edges meeting at
// a vertex or a crossing. Shallower configurations are near-degenerate
// samples and get resampled.
constexpr double kSinFloor = 0.1;

struct Work {
  std::vector<Point> v;
  std::vector<std::pair<int, int>> e;
  double guard = 0.0;  // minimum feature separation the generator maintains

  bool has_edge(int a, int b) const {
    for (const auto& ed : e)
      if (same_edge(ed, a, b)) return true;
    return false;
  }
};

// Strict proper-crossing test; touching configurations report no crossing
// and are handled by the guard-distance rejections instead.
bool proper_cross(Point a, Point b, Point p, Point q, Point& x) {
  double d1 = cross(b - a, p - a);
  double d2 = cross(b - a, q - a);
  double d3 = cross(q - p, a - p);
  double d4 = cross(q - p, b - p);
  if (!((d1 > 0) != (d2 > 0)) || d1 == 0 || d2 == 0) return false;
  if (!((d3 > 0) != (d4 > 0)) || d3 == 0 || d4 == 0) return false;
  double t = d3 / (d3 - d4);  // parameter along a->b
  x = a + t * (b - a);
  return true;
}

bool collinear_overlap(Point a, Point b, Point p, Point q, double guard) {
  Point d = b - a;
  double len = norm(d);
  if (std::abs(cross(d, p - a)) > guard * len || std::abs(cross(d, q - a)) > guard * len)
    return false;
  double tp = dot(p - a, d) / (len * len);
  double tq = dot(q - a, d) / (len * len);
  if (tp > tq) std::swap(tp, tq);
  double margin = guard / len;
  return tq > margin && tp < 1.0 - margin;
}

// Inserts the segment between vertices ia and ib, splitting crossed edges at
// new vertices. Returns false (leaving the graph untouched) on any
// degeneracy: duplicate edge, grazing pass near a vertex, collinear overlap,
// crossings too close together, or a crossing disallowed by allow_cross.
bool try_insert(Work& w, int ia, int ib, bool allow_cross, bool relaxed = false) {
  if (ia == ib || w.has_edge(ia, ib)) return false;
  Point A = w.v[ia], B = w.v[ib];
  Segment cand{A, B};
  double len = dist(A, B);
  if (len <= 10.0 * w.guard) return false;

  for (int u = 0; u < static_cast<int>(w.v.size()); ++u) {
    if (u == ia || u == ib) continue;
    if (dist_point_segment(w.v[u], cand) <= w.guard) return false;
  }

  struct Ev {
    double t;
    Point x;
    int edge;
  };
  std::vector<Ev> evs;
  for (size_t f = 0; f < w.e.size(); ++f) {
    Point P = w.v[w.e[f].first], Q = w.v[w.e[f].second];
    bool shares = w.e[f].first == ia || w.e[f].first == ib || w.e[f].second == ia ||
                  w.e[f].second == ib;
    if (collinear_overlap(A, B, P, Q, w.guard)) return false;
    if (shares) {
      // sharing an endpoint, straight segments cannot cross again; only the
      // angle they open at the shared vertex matters
      bool at_a = w.e[f].first == ia || w.e[f].second == ia;
      Point apex = at_a ? A : B;
      Point tip = at_a ? B : A;
      int far = w.e[f].first == (at_a ? ia : ib) ? w.e[f].second : w.e[f].first;
      Point d1 = tip - apex, d2 = w.v[far] - apex;
      if (!relaxed && dot(d1, d2) > 0.0 &&
          std::abs(cross(d1, d2)) < kSinFloor * norm(d1) * norm(d2))
        return false;
      continue;
    }
    Point x;
    if (proper_cross(A, B, P, Q, x)) {
      if (!allow_cross) return false;
      // shallow crossings make degenerate slivers; resample instead
      if (!relaxed && std::abs(cross(B - A, Q - P)) < kSinFloor * len * dist(P, Q))
        return false;
      evs.push_back({dot(x - A, B - A) / (len * len), x, static_cast<int>(f)});
    }
  }

  for (const Ev& ev : evs) {
    if (ev.t * len <= w.guard || (1.0 - ev.t) * len <= w.guard) return false;
    for (const Ev& other : evs)
      if (&other != &ev && std::abs(other.t - ev.t) * len <= w.guard) return false;
    // a crossing vertex must not graze any third edge
    for (size_t h = 0; h < w.e.size(); ++h) {
      if (static_cast<int>(h) == ev.edge) continue;
      Segment sh{w.v[w.e[h].first], w.v[w.e[h].second]};
      if (dist_point_segment(ev.x, sh) <= w.guard) return false;
    }
  }

  std::sort(evs.begin(), evs.end(), [](const Ev& a, const Ev& b) { return a.t < b.t; });
  std::vector<int> chain{ia};
  for (const Ev& ev : evs) {
    int nv = static_cast<int>(w.v.size());
    w.v.push_back(ev.x);
    chain.push_back(nv);
    std::pair<int, int> old = w.e[ev.edge];
    w.e[ev.edge] = {old.first, nv};
    w.e.push_back({nv, old.second});
  }
  chain.push_back(ib);
  for (size_t i = 0; i + 1 < chain.size(); ++i) w.e.push_back({chain[i], chain[i + 1]});
  return true;
}

std::vector<int> component_ids(const Work& w) {
  std::vector<int> parent(w.v.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& ed : w.e) parent[find(ed.first)] = find(ed.second);
  std::vector<int> id(w.v.size());
  for (size_t i = 0; i < w.v.size(); ++i) id[i] = find(static_cast<int>(i));
  return id;
}

std::vector<int> degrees(const Work& w) {
  std::vector<int> d(w.v.size(), 0);
  for (const auto& ed : w.e) {
    ++d[ed.first];
    ++d[ed.second];
  }
  return d;
}

}  // namespace

Pslg generate(const TessGenConfig& cfg) {
  if (cfg.n_points < 2) throw std::invalid_argument("generate: n_points must be at least 2");
  if (cfg.n_edge_attempts < 0)
    throw std::invalid_argument("generate: n_edge_attempts must be nonnegative");
  if (!(cfg.box.lo.x < cfg.box.hi.x && cfg.box.lo.y < cfg.box.hi.y))
    throw std::invalid_argument("generate: box is empty");

  std::mt19937_64 rng(cfg.seed);
  auto u01 = [&] { return (rng() >> 11) * 0x1p-53; };
  auto pick = [&](int n) { return std::min(n - 1, static_cast<int>(u01() * n)); };

  Work w;
  w.guard = 2e-3 * box_diag(cfg.box);

  // uniform vertices, kept clear of each other so later candidates survive
  while (static_cast<int>(w.v.size()) < cfg.n_points) {
    Point p{cfg.box.lo.x + u01() * (cfg.box.hi.x - cfg.box.lo.x),
            cfg.box.lo.y + u01() * (cfg.box.hi.y - cfg.box.lo.y)};
    bool clear = true;
    for (const Point& q : w.v) clear &= dist(p, q) > 2.0 * w.guard;
    if (clear) w.v.push_back(p);
  }

  const int kMaxRetry = 1000;
  for (int attempt = 0; attempt < cfg.n_edge_attempts; ++attempt) {
    for (int r = 0; r < kMaxRetry; ++r) {
      int ia = pick(static_cast<int>(w.v.size()));
      int ib = pick(static_cast<int>(w.v.size()));
      if (try_insert(w, ia, ib, true)) break;
    }
  }

  // connect components, preferring the shortest crossing-free link
  while (true) {
    std::vector<int> id = component_ids(w);
    bool split = false;
    for (size_t i = 0; i < w.v.size() && !split; ++i) split = id[i] != id[0];
    if (!split) break;
    struct Cand {
      double d;
      int a, b;
    };
    std::vector<Cand> cands;
    for (size_t i = 0; i < w.v.size(); ++i)
      for (size_t j = i + 1; j < w.v.size(); ++j)
        if (id[i] != id[j])
          cands.push_back({dist(w.v[i], w.v[j]), static_cast<int>(i), static_cast<int>(j)});
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.d < b.d; });
    bool done = false;
    for (const Cand& c : cands)
      if (try_insert(w, c.a, c.b, false)) {
        done = true;
        break;
      }
    if (!done)
      for (const Cand& c : cands)
        if (try_insert(w, c.a, c.b, true)) {
          done = true;
          break;
        }
    if (!done) break;  // nothing insertable at all; leave as is
  }

  // raise degree-1 vertices (a connecting stub) to degree >= 2; a stubborn
  // vertex gets retried with the angle floor lifted, and new crossings made
  // for one vertex can unlock another, so sweep until stable
  for (int round = 0; round < 8; ++round) {
    bool progress = false, remaining = false;
    for (int v = 0; v < static_cast<int>(w.v.size()); ++v) {
      std::vector<int> deg = degrees(w);
      if (deg[v] != 1) continue;
      std::vector<int> order;
      for (int u = 0; u < static_cast<int>(w.v.size()); ++u)
        if (u != v && !w.has_edge(v, u)) order.push_back(u);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return dist(w.v[v], w.v[a]) < dist(w.v[v], w.v[b]);
      });
      bool done = false;
      for (int pass = 0; pass < 3 && !done; ++pass)
        for (int u : order)
          if (try_insert(w, v, u, pass >= 1, pass >= 2)) {
            done = true;
            break;
          }
      progress = progress || done;
      remaining = remaining || !done;
    }
    if (!remaining || !progress) break;
  }

  Pslg g = build_pslg(w.v, w.e);
  g.gen.present = true;
  g.gen.seed = cfg.seed;
  g.gen.n_points = cfg.n_points;
  g.gen.n_edge_attempts = cfg.n_edge_attempts;
  g.gen.box_lo = cfg.box.lo;
  g.gen.box_hi = cfg.box.hi;
  g.gen.rng_id = "mt19937_64";
  return g;
}

}  // namespace givp
