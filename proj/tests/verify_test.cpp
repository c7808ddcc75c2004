#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "givp/pslg.hpp"
#include "givp/solver.hpp"
#include "givp/verify.hpp"

using namespace givp;

namespace {

bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

Pslg triangle() {
  double h = 2.0 * std::sqrt(3.0);
  return build_pslg({{0, 0}, {4, 0}, {2, h}}, {{0, 1}, {0, 2}, {1, 2}});
}

Pslg plus_sign() {
  return build_pslg({{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}},
                    {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
}

Pslg grid3() {
  std::vector<Point> v;
  std::vector<std::pair<int, int>> e;
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x) v.push_back({double(x), double(y)});
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x) {
      int i = 3 * y + x;
      if (x + 1 < 3) e.push_back({i, i + 1});
      if (y + 1 < 3) e.push_back({i, i + 3});
    }
  return build_pslg(v, e);
}

Point xform(Point p, double c, double s, double k, Point t) {
  return {k * (c * p.x - s * p.y) + t.x, k * (s * p.x + c * p.y) + t.y};
}

// Rigid motion plus uniform scale applied consistently to a solution. Frame
// parameters scale because the rotation below preserves which endpoint of
// every edge is lexicographically smaller.
Solution transform_solution(const Solution& sol, double c, double s, double k, Point t) {
  Solution out = sol;
  for (Point& p : out.sites) p = xform(p, c, s, k, t);
  std::sort(out.sites.begin(), out.sites.end(), lex_less);
  out.report.epsilon *= k;
  out.report.rho0 *= k;
  out.report.d_feat *= k;
  for (EdgeCoverPlan& plan : out.report.plans) {
    plan.w1 *= k;
    plan.w2 *= k;
    plan.delta *= k;
    for (SentinelPair& p : plan.pairs) {
      p.p = xform(p.p, c, s, k, t);
      p.q = xform(p.q, c, s, k, t);
      p.foot = xform(p.foot, c, s, k, t);
      p.offset *= k;
      p.foot_param *= k;
    }
    for (CoverCircle& cc : plan.circles) {
      cc.circle.center = xform(cc.circle.center, c, s, k, t);
      cc.circle.radius *= k;
    }
  }
  return out;
}

Pslg transform_graph(const Pslg& g, double c, double s, double k, Point t) {
  std::vector<Point> v;
  for (const Point& p : g.vertices) v.push_back(xform(p, c, s, k, t));
  return build_pslg(v, g.edges);
}

// Triangle solution with a foreign site injected at the center of the middle
// cover circle of edge 0.
std::pair<Solution, Point> injected_triangle_solution(const Pslg& g) {
  SolverConfig cfg;
  cfg.variant = Variant::naive;
  Solution sol = solve(g, cfg);
  REQUIRE(!sol.report.plans[0].circles.empty());
  Point center = sol.report.plans[0].circles[0].circle.center;
  sol.sites.push_back(center);
  std::sort(sol.sites.begin(), sol.sites.end(), lex_less);
  return {sol, center};
}

}  // namespace

TEST_CASE("two sites split the box along their bisector") {
  Box box{{-10, -10}, {10, 10}};
  VoronoiDiagram vd = brute_force_voronoi({{0, 0}, {2, 0}}, box);
  REQUIRE(vd.cells.size() == 2);
  CHECK(polygon_area(vd.cells[0].polygon) == doctest::Approx(220.0));  // x <= 1 half
  CHECK(polygon_area(vd.cells[1].polygon) == doctest::Approx(180.0));
  CHECK(polygon_contains(vd.cells[0].polygon, {0, 0}, 1e-9));
  CHECK(polygon_contains(vd.cells[1].polygon, {2, 0}, 1e-9));
  REQUIRE(vd.edges.size() == 1);
  CHECK(vd.edges[0].site_a == 0);
  CHECK(vd.edges[0].site_b == 1);
  CHECK(vd.edges[0].seg.a.x == doctest::Approx(1.0));
  CHECK(vd.edges[0].seg.b.x == doctest::Approx(1.0));
  CHECK(length(vd.edges[0].seg) == doctest::Approx(20.0));
}

TEST_CASE("one site owns the whole box") {
  Box box{{-10, -10}, {10, 10}};
  VoronoiDiagram vd = brute_force_voronoi({{1, 1}}, box);
  REQUIRE(vd.cells.size() == 1);
  CHECK(polygon_area(vd.cells[0].polygon) == doctest::Approx(400.0));
  CHECK(vd.edges.empty());
  for (int lab : vd.cells[0].side_site) CHECK(lab == -1);
}

TEST_CASE("three equilateral sites meet at the circumcenter") {
  Box box{{-10, -10}, {10, 10}};
  std::vector<Point> sites = {{0, 0}, {2, 0}, {1, std::sqrt(3.0)}};
  VoronoiDiagram vd = brute_force_voronoi(sites, box);
  Point cc{1.0, 1.0 / std::sqrt(3.0)};
  double total = 0.0;
  for (const VoronoiCell& cell : vd.cells) {
    total += polygon_area(cell.polygon);
    bool touches = false;
    for (const Point& v : cell.polygon) touches |= dist(v, cc) < 1e-6;
    CHECK(touches);
  }
  CHECK(total == doctest::Approx(400.0).epsilon(1e-6));
  for (const Point& s : sites) CHECK(dist(cc, s) == doctest::Approx(2.0 / std::sqrt(3.0)));
}

TEST_CASE("voronoi construction validates its input") {
  Box box{{-1, -1}, {1, 1}};
  CHECK_THROWS_AS(brute_force_voronoi({}, box), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_voronoi({{0, 0}, {0, 0}}, box), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_voronoi({{5, 0}}, box), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_voronoi({{0, 0}}, Box{{1, 1}, {-1, -1}}), std::invalid_argument);
}

TEST_CASE("voronoi cells tile the box and vertices are equidistant") {
  Box box{{-8, -8}, {8, 8}};
  std::mt19937_64 rng(7);
  auto uniform = [&] { return (rng() >> 11) * 0x1p-53; };
  std::vector<Point> sites;
  for (int i = 0; i < 60; ++i) sites.push_back({16.0 * uniform() - 8.0, 16.0 * uniform() - 8.0});
  VoronoiDiagram vd = brute_force_voronoi(sites, box);

  double total = 0.0;
  double diag = box_diag(box);
  for (const VoronoiCell& cell : vd.cells) {
    double a = polygon_area(cell.polygon);
    CHECK(a > 0.0);
    total += a;
    CHECK(polygon_contains(cell.polygon, sites[cell.site], 1e-9 * diag));
    size_t n = cell.polygon.size();
    for (size_t t = 0; t < n; ++t) {
      int in_lab = cell.side_site[(t + n - 1) % n];
      int out_lab = cell.side_site[t];
      if (in_lab < 0 || out_lab < 0) continue;
      Point v = cell.polygon[t];
      double d0 = dist(v, sites[cell.site]);
      CHECK(dist(v, sites[in_lab]) == doctest::Approx(d0).epsilon(1e-7));
      CHECK(dist(v, sites[out_lab]) == doctest::Approx(d0).epsilon(1e-7));
    }
  }
  CHECK(total == doctest::Approx(256.0).epsilon(1e-6));

  for (const VoronoiEdge& e : vd.edges) {
    for (Point v : {e.seg.a, e.seg.b}) {
      double da = dist(v, sites[e.site_a]);
      CHECK(dist(v, sites[e.site_b]) == doctest::Approx(da).epsilon(1e-7));
    }
  }
}

TEST_CASE("certificate and oracles agree on solved fixtures") {
  for (const Pslg& g : {triangle(), plus_sign(), grid3()}) {
    for (Variant v : {Variant::naive, Variant::sequential, Variant::recursive}) {
      SolverConfig cfg;
      cfg.variant = v;
      Solution sol = solve(g, cfg);
      CheckReport cert = exact_guard_check(g, sol);
      CHECK(cert.pass);
      CHECK(cert.edges.size() == g.edges.size());

      VoronoiDiagram vd = brute_force_voronoi(sol.sites, verification_box(g));
      CheckReport cov =
          edge_coverage_check(g, vd, 1e-6 * g.bbox_diag, sol.report.epsilon);
      CHECK(cov.pass);  // certificate pass must imply brute-force coverage

      CheckReport sam = sampled_nearest_pair_check(g, sol, 4);
      CHECK(sam.pass);
    }
  }
}

TEST_CASE("an injected foreign site is caught and named") {
  Pslg g = triangle();
  auto [sol, center] = injected_triangle_solution(g);
  CheckReport rep = exact_guard_check(g, sol);
  REQUIRE(!rep.pass);
  CHECK(rep.fail_edge == 0);
  CHECK(rep.fail_site.x == doctest::Approx(center.x));
  CHECK(rep.fail_site.y == doctest::Approx(center.y));
  CHECK(rep.fail_circle_center.x == doctest::Approx(center.x));
  CHECK(rep.fail_circle_center.y == doctest::Approx(center.y));
  CHECK(rep.message.find("intrudes") != std::string::npos);
  CHECK(rep.message.find("circle") != std::string::npos);

  CheckReport sam = sampled_nearest_pair_check(g, sol, 4);
  CHECK(!sam.pass);
  CHECK(sam.fail_site.x == doctest::Approx(center.x));
  CHECK(sam.fail_site.y == doctest::Approx(center.y));
}

TEST_CASE("a deleted pair leaves a detectable coverage gap") {
  Pslg g = build_pslg({{0, 0}, {10, 0}}, {{0, 1}});
  SolverConfig cfg;
  cfg.variant = Variant::naive;
  cfg.epsilon_override = 0.01;
  Solution sol = solve(g, cfg);
  EdgeCoverPlan& plan = sol.report.plans[0];
  REQUIRE(plan.pairs.size() == 5);
  REQUIRE(plan.circles.size() == 3);

  SentinelPair gone = plan.pairs[2];
  plan.pairs.erase(plan.pairs.begin() + 2);
  std::vector<CoverCircle> kept;
  for (const CoverCircle& c : plan.circles) {
    bool refs = false;
    CoverCircle nc = c;
    nc.pair_index.clear();
    for (int idx : c.pair_index) {
      refs |= idx == 2;
      nc.pair_index.push_back(idx > 2 ? idx - 1 : idx);
    }
    if (!refs) kept.push_back(nc);
  }
  plan.circles = kept;
  sol.sites.erase(std::remove_if(sol.sites.begin(), sol.sites.end(),
                                 [&](Point s) { return s == gone.p || s == gone.q; }),
                  sol.sites.end());

  CheckReport rep = exact_guard_check(g, sol);
  REQUIRE(!rep.pass);
  CHECK(rep.fail_edge == 0);
  CHECK(rep.message.find("coverage gap") != std::string::npos);
}

TEST_CASE("mirrored bisector covers an edge, a skewed one does not") {
  Pslg g = build_pslg({{-5, 0}, {5, 0}}, {{0, 1}});
  Box box{{-9, -9}, {9, 9}};
  double tol = 1e-6 * g.bbox_diag;

  VoronoiDiagram good = brute_force_voronoi({{0, 1}, {0, -1}}, box);
  CHECK(edge_coverage_check(g, good, tol).pass);

  VoronoiDiagram bad = brute_force_voronoi({{0, 1}, {1, -1}}, box);
  CheckReport rep = edge_coverage_check(g, bad, tol);
  CHECK(!rep.pass);
  CHECK(rep.message.find("mirrored") != std::string::npos);
}

TEST_CASE("sampled check validates its sample count") {
  Pslg g = triangle();
  Solution sol = solve(g, SolverConfig{});
  CHECK_THROWS_AS(sampled_nearest_pair_check(g, sol, 1), std::invalid_argument);
}

TEST_CASE("certificate verdicts survive rigid motion and uniform scale") {
  double c = std::cos(15.0 * 3.14159265358979323846 / 180.0);
  double s = std::sin(15.0 * 3.14159265358979323846 / 180.0);
  double k = 2.0;
  Point t{3.0, -7.0};

  Pslg g = triangle();
  Pslg g2 = transform_graph(g, c, s, k, t);

  Solution ok = solve(g, SolverConfig{});
  REQUIRE(exact_guard_check(g, ok).pass);
  CHECK(exact_guard_check(g2, transform_solution(ok, c, s, k, t)).pass);

  auto [bad, center] = injected_triangle_solution(g);
  REQUIRE(!exact_guard_check(g, bad).pass);
  CHECK(!exact_guard_check(g2, transform_solution(bad, c, s, k, t)).pass);
}

TEST_CASE("half plane and area helpers") {
  HalfPlane h = bisector_half_plane({0, 0}, {2, 0});
  CHECK(half_plane_contains(h, {0, 0}, 0.0));
  CHECK(half_plane_contains(h, {1, 5}, 1e-12));  // boundary point
  CHECK(!half_plane_contains(h, {2, 0}, 0.0));
  CHECK_THROWS_AS(bisector_half_plane({1, 1}, {1, 1}), std::invalid_argument);

  std::vector<Point> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(polygon_area(square) == doctest::Approx(1.0));
  CHECK(polygon_contains(square, {0.5, 0.5}, 1e-12));
  CHECK(!polygon_contains(square, {1.5, 0.5}, 1e-12));
}
