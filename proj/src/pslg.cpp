#include "givp/pslg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace givp {

namespace {

std::string pt_str(Point p) {
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Pslg build_pslg(std::vector<Point> vertices, std::vector<std::pair<int, int>> edge_list) {
  Pslg g;
  g.vertices = std::move(vertices);
  const int nv = static_cast<int>(g.vertices.size());
  if (nv == 0) throw std::invalid_argument("build_pslg: empty vertex set");

  g.bbox_lo = g.bbox_hi = g.vertices[0];
  for (const Point& p : g.vertices) {
    g.bbox_lo.x = std::min(g.bbox_lo.x, p.x);
    g.bbox_lo.y = std::min(g.bbox_lo.y, p.y);
    g.bbox_hi.x = std::max(g.bbox_hi.x, p.x);
    g.bbox_hi.y = std::max(g.bbox_hi.y, p.y);
  }
  g.bbox_diag = dist(g.bbox_lo, g.bbox_hi);
  const double tol = 1e-9 * std::max(g.bbox_diag, 1e-300);

  // duplicate vertices, via an x-sorted window scan
  {
    std::vector<int> order(nv);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return g.vertices[i].x < g.vertices[j].x; });
    for (int i = 0; i < nv; ++i) {
      for (int j = i + 1; j < nv; ++j) {
        if (g.vertices[order[j]].x - g.vertices[order[i]].x > tol) break;
        if (dist(g.vertices[order[i]], g.vertices[order[j]]) <= tol)
          throw std::invalid_argument("build_pslg: duplicate vertices " +
                                      std::to_string(std::min(order[i], order[j])) + " and " +
                                      std::to_string(std::max(order[i], order[j])) + " at " +
                                      pt_str(g.vertices[order[i]]));
      }
    }
  }

  for (auto& [i, j] : edge_list) {
    if (i < 0 || j < 0 || i >= nv || j >= nv)
      throw std::invalid_argument("build_pslg: edge (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ") out of range");
    if (i == j) throw std::invalid_argument("build_pslg: self loop at vertex " + std::to_string(i));
    if (i > j) std::swap(i, j);
  }
  std::sort(edge_list.begin(), edge_list.end());
  for (size_t k = 1; k < edge_list.size(); ++k)
    if (edge_list[k] == edge_list[k - 1])
      throw std::invalid_argument("build_pslg: duplicate edge (" +
                                  std::to_string(edge_list[k].first) + ", " +
                                  std::to_string(edge_list[k].second) + ")");
  g.edges = std::move(edge_list);
  const int ne = static_cast<int>(g.edges.size());

  for (int k = 0; k < ne; ++k)
    if (length(g.segment(k)) <= tol)
      throw std::invalid_argument("build_pslg: zero-length edge " + std::to_string(k));

  // pairwise separation: edges may meet only at a shared vertex
  for (int k = 0; k < ne; ++k) {
    Segment sk = g.segment(k);
    double klox = std::min(sk.a.x, sk.b.x) - tol, khix = std::max(sk.a.x, sk.b.x) + tol;
    double kloy = std::min(sk.a.y, sk.b.y) - tol, khiy = std::max(sk.a.y, sk.b.y) + tol;
    for (int m = k + 1; m < ne; ++m) {
      Segment sm = g.segment(m);
      if (std::min(sm.a.x, sm.b.x) > khix || std::max(sm.a.x, sm.b.x) < klox ||
          std::min(sm.a.y, sm.b.y) > khiy || std::max(sm.a.y, sm.b.y) < kloy)
        continue;
      auto [ka, kb] = g.edges[k];
      auto [ma, mb] = g.edges[m];
      bool bad;
      if (ka == ma || ka == mb || kb == ma || kb == mb) {
        // shared endpoint: the other endpoints must stay clear of each segment
        int k_other = (ka == ma || ka == mb) ? kb : ka;
        int m_other = (ma == ka || ma == kb) ? mb : ma;
        bad = dist_point_segment(g.vertices[k_other], sm) <= tol ||
              dist_point_segment(g.vertices[m_other], sk) <= tol;
      } else {
        bad = dist_segment_segment(sk, sm) <= tol;
      }
      if (bad)
        throw std::invalid_argument("build_pslg: edges " + std::to_string(k) + " (" +
                                    std::to_string(ka) + "-" + std::to_string(kb) + ") and " +
                                    std::to_string(m) + " (" + std::to_string(ma) + "-" +
                                    std::to_string(mb) + ") intersect away from a shared vertex");
    }
  }

  // a vertex may not sit in the interior of a non-incident edge
  for (int v = 0; v < nv; ++v)
    for (int k = 0; k < ne; ++k) {
      if (g.edges[k].first == v || g.edges[k].second == v) continue;
      if (dist_point_segment(g.vertices[v], g.segment(k)) <= tol)
        throw std::invalid_argument("build_pslg: vertex " + std::to_string(v) +
                                    " lies on edge " + std::to_string(k));
    }

  // half-edges: edge k -> 2k (lo->hi) and 2k+1 (hi->lo)
  g.half.assign(2 * ne, HalfEdge{});
  g.out.assign(nv, {});
  for (int k = 0; k < ne; ++k) {
    auto [i, j] = g.edges[k];
    g.half[2 * k] = {i, 2 * k + 1, -1, -1, -1, k};
    g.half[2 * k + 1] = {j, 2 * k, -1, -1, -1, k};
    g.out[i].push_back(2 * k);
    g.out[j].push_back(2 * k + 1);
  }
  std::vector<double> angle(2 * ne);
  for (int h = 0; h < 2 * ne; ++h) {
    Point d = g.vertices[g.target(h)] - g.vertices[g.half[h].origin];
    angle[h] = std::atan2(d.y, d.x);
  }
  std::vector<int> slot(2 * ne);  // position of h within out[origin(h)]
  for (int v = 0; v < nv; ++v) {
    std::sort(g.out[v].begin(), g.out[v].end(),
              [&](int a, int b) { return angle[a] < angle[b]; });
    for (size_t i = 0; i < g.out[v].size(); ++i) slot[g.out[v][i]] = static_cast<int>(i);
  }

  // next(h): clockwise neighbor of twin(h) around the head vertex, which
  // traces each face with its interior on the left
  for (int h = 0; h < 2 * ne; ++h) {
    int t = g.half[h].twin;
    int v = g.half[t].origin;
    int n = static_cast<int>(g.out[v].size());
    int nh = g.out[v][(slot[t] - 1 + n) % n];
    g.half[h].next = nh;
    g.half[nh].prev = h;
  }

  // faces from next-cycles; every nonpositive-area cycle is the unbounded face
  g.faces.push_back(Face{-1, false});
  for (int h = 0; h < 2 * ne; ++h) {
    if (g.half[h].face != -1) continue;
    double area2 = 0.0;
    for (int w = h;;) {
      area2 += cross(g.vertices[g.half[w].origin], g.vertices[g.target(w)]);
      w = g.half[w].next;
      if (w == h) break;
    }
    int face_id;
    if (area2 > 0.0) {
      face_id = static_cast<int>(g.faces.size());
      g.faces.push_back(Face{h, true});
    } else {
      face_id = 0;
      if (g.faces[0].half_edge == -1) g.faces[0].half_edge = h;
    }
    for (int w = h;;) {
      g.half[w].face = face_id;
      w = g.half[w].next;
      if (w == h) break;
    }
  }

  DisjointSet ds(nv);
  for (auto [i, j] : g.edges) ds.unite(i, j);
  std::set<int> roots;
  for (int v = 0; v < nv; ++v) roots.insert(ds.find(v));
  g.components = static_cast<int>(roots.size());
  return g;
}

ValidationReport validate(const Pslg& g) {
  ValidationReport rep;
  auto flag = [&](const std::string& s) { rep.violations.push_back(s); };

  const int ne = static_cast<int>(g.edges.size());
  if (static_cast<int>(g.half.size()) != 2 * ne) flag("half-edge count != 2E");

  for (int h = 0; h < static_cast<int>(g.half.size()); ++h) {
    const HalfEdge& he = g.half[h];
    if (g.half[he.twin].twin != h) flag("twin not an involution at " + std::to_string(h));
    if (he.twin == h) flag("half-edge is its own twin at " + std::to_string(h));
    if (g.half[he.next].prev != h) flag("next/prev mismatch at " + std::to_string(h));
    if (he.origin != g.edges[he.edge].first && he.origin != g.edges[he.edge].second)
      flag("origin not an endpoint of its edge at " + std::to_string(h));
    if (he.face < 0 || he.face >= static_cast<int>(g.faces.size()))
      flag("face id out of range at " + std::to_string(h));
  }

  // next-cycles must partition the half-edges and agree with the face labels
  std::vector<char> seen(g.half.size(), 0);
  for (int h = 0; h < static_cast<int>(g.half.size()); ++h) {
    if (seen[h]) continue;
    int face = g.half[h].face;
    int steps = 0;
    for (int w = h;;) {
      if (seen[w]) { flag("next-cycles do not partition half-edges"); break; }
      seen[w] = 1;
      if (g.half[w].face != face) flag("face label changes along a cycle");
      w = g.half[w].next;
      if (++steps > static_cast<int>(g.half.size())) { flag("next cycle does not close"); break; }
      if (w == h) break;
    }
  }

  // strict angular order around each vertex
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
    const auto& ring = g.out[v];
    std::vector<double> ang;
    for (int h : ring) {
      if (g.half[h].origin != v) flag("out-list origin mismatch at vertex " + std::to_string(v));
      Point d = g.vertices[g.target(h)] - g.vertices[v];
      ang.push_back(std::atan2(d.y, d.x));
    }
    for (size_t i = 1; i < ang.size(); ++i)
      if (!(ang[i] > ang[i - 1]))
        flag("angular order not strictly increasing at vertex " + std::to_string(v));
  }

  // Euler relation, unbounded face counted once
  int v_cnt = static_cast<int>(g.vertices.size());
  int f_cnt = static_cast<int>(g.faces.size());
  if (v_cnt - ne + f_cnt != 1 + g.components)
    flag("Euler relation violated: V-E+F = " + std::to_string(v_cnt - ne + f_cnt) +
         ", 1+C = " + std::to_string(1 + g.components));

  // geometric separation, re-checked independently of the builder
  const double tol = 1e-9 * std::max(g.bbox_diag, 1e-300);
  for (int k = 0; k < ne; ++k)
    for (int m = k + 1; m < ne; ++m) {
      auto [ka, kb] = g.edges[k];
      auto [ma, mb] = g.edges[m];
      if (ka == ma || ka == mb || kb == ma || kb == mb) {
        int k_other = (ka == ma || ka == mb) ? kb : ka;
        int m_other = (ma == ka || ma == kb) ? mb : ma;
        if (dist_point_segment(g.vertices[k_other], g.segment(m)) <= tol ||
            dist_point_segment(g.vertices[m_other], g.segment(k)) <= tol)
          flag("edges " + std::to_string(k) + " and " + std::to_string(m) + " overlap");
      } else if (dist_segment_segment(g.segment(k), g.segment(m)) <= tol) {
        flag("edges " + std::to_string(k) + " and " + std::to_string(m) + " intersect");
      }
    }

  // convexity audit of bounded faces (report-only)
  for (int f = 1; f < f_cnt; ++f) {
    if (!g.faces[f].bounded) continue;
    bool convex = true;
    int h = g.faces[f].half_edge;
    for (int w = h;;) {
      Point a = g.vertices[g.half[w].origin];
      Point b = g.vertices[g.target(w)];
      Point c = g.vertices[g.target(g.half[w].next)];
      if (cross(b - a, c - b) < 0.0) { convex = false; break; }
      w = g.half[w].next;
      if (w == h) break;
    }
    if (!convex) rep.nonconvex_faces.push_back(f);
  }
  return rep;
}

std::optional<double> min_angle(const Pslg& g) {
  constexpr double two_pi = 6.28318530717958647692;
  std::optional<double> best;
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
    const auto& ring = g.out[v];
    if (ring.size() < 2) continue;
    std::vector<double> ang;
    ang.reserve(ring.size());
    for (int h : ring) {
      Point d = g.vertices[g.target(h)] - g.vertices[v];
      ang.push_back(std::atan2(d.y, d.x));
    }
    for (size_t i = 0; i < ang.size(); ++i) {
      double gap = (i + 1 < ang.size()) ? ang[i + 1] - ang[i] : two_pi - (ang.back() - ang.front());
      if (!best || gap < *best) best = gap;
    }
  }
  return best;
}

PslgMetrics metrics(const Pslg& g) {
  PslgMetrics m;
  auto alpha = min_angle(g);
  if (!alpha)
    throw std::invalid_argument("metrics: alpha undefined, no vertex of degree >= 2");
  m.alpha = *alpha;
  m.lambda.assign(g.vertices.size(), std::numeric_limits<double>::infinity());
  for (int k = 0; k < static_cast<int>(g.edges.size()); ++k) {
    double len = length(g.segment(k));
    m.delta = std::max(m.delta, len);
    auto [i, j] = g.edges[k];
    m.lambda[i] = std::min(m.lambda[i], len);
    m.lambda[j] = std::min(m.lambda[j], len);
  }
  m.bbox_lo = g.bbox_lo;
  m.bbox_hi = g.bbox_hi;
  m.bbox_diag = g.bbox_diag;
  return m;
}

Pslg load_pslg(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_pslg: cannot open " + path);
  nlohmann::json j;
  in >> j;
  if (!j.contains("vertices") || !j.contains("edges"))
    throw std::runtime_error("load_pslg: missing vertices/edges in " + path);
  std::vector<Point> vertices;
  for (const auto& v : j["vertices"])
    vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j["edges"]) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  Pslg g = build_pslg(std::move(vertices), std::move(edges));
  if (j.contains("gen")) {
    const auto& je = j["gen"];
    g.gen.present = true;
    g.gen.seed = je.at("seed").get<std::uint64_t>();
    g.gen.n_points = je.at("n_points").get<int>();
    g.gen.n_edge_attempts = je.at("n_edge_attempts").get<int>();
    g.gen.box_lo = {je.at("box").at(0).get<double>(), je.at("box").at(1).get<double>()};
    g.gen.box_hi = {je.at("box").at(2).get<double>(), je.at("box").at(3).get<double>()};
    g.gen.rng_id = je.at("rng_id").get<std::string>();
  }
  return g;
}

void save_pslg(const Pslg& g, const std::string& path) {
  nlohmann::ordered_json j;
  auto& jv = j["vertices"] = nlohmann::ordered_json::array();
  for (const Point& p : g.vertices) jv.push_back({p.x, p.y});
  auto& je = j["edges"] = nlohmann::ordered_json::array();
  for (auto [a, b] : g.edges) je.push_back({a, b});
  if (g.gen.present) {
    j["gen"] = {{"seed", g.gen.seed},
                {"n_points", g.gen.n_points},
                {"n_edge_attempts", g.gen.n_edge_attempts},
                {"box", {g.gen.box_lo.x, g.gen.box_lo.y, g.gen.box_hi.x, g.gen.box_hi.y}},
                {"rng_id", g.gen.rng_id}};
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_pslg: cannot open " + path);
  out << j.dump(2) << "\n";
}

}  // namespace givp
