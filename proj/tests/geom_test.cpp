#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "givp/geom.hpp"

using namespace givp;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("dist_point_segment") {
  Segment s{{0, 0}, {10, 0}};
  CHECK(dist_point_segment({5, 3}, s) == doctest::Approx(3.0));
  CHECK(dist_point_segment({-3, 4}, s) == doctest::Approx(5.0));   // past endpoint
  CHECK(dist_point_segment({13, -4}, s) == doctest::Approx(5.0));
  CHECK(dist_point_segment({7, 0}, s) == doctest::Approx(0.0));
}

TEST_CASE("line_through normalization and sign convention") {
  LineEq l = line_through({0, 0}, {1, 1});
  CHECK(l.a == doctest::Approx(std::sqrt(2.0) / 2));
  CHECK(l.b == doctest::Approx(-std::sqrt(2.0) / 2));
  CHECK(l.c == doctest::Approx(0.0));

  // vertical and horizontal lines follow the same convention
  LineEq v = line_through({3, -2}, {3, 5});
  CHECK(v.a == doctest::Approx(1.0));
  CHECK(v.b == doctest::Approx(0.0));
  CHECK(v.c == doctest::Approx(-3.0));
  LineEq h = line_through({9, 4}, {-1, 4});
  CHECK(h.a == doctest::Approx(0.0));
  CHECK(h.b == doctest::Approx(1.0));
  CHECK(h.c == doctest::Approx(-4.0));

  CHECK_THROWS_AS(line_through({1, 2}, {1, 2}), std::invalid_argument);
}

TEST_CASE("line_through residual property on random pairs") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-1000.0, 1000.0);
  for (int i = 0; i < 500; ++i) {
    Point p{u(rng), u(rng)}, q{u(rng), u(rng)};
    if (p == q) continue;
    LineEq l = line_through(p, q);
    CHECK(l.a * l.a + l.b * l.b == doctest::Approx(1.0));
    CHECK(std::abs(signed_dist(l, p)) < 1e-9);
    CHECK(std::abs(signed_dist(l, q)) < 1e-9);
    CHECK((l.a > 0.0 || (l.a == 0.0 && l.b > 0.0)));
    // unordered: swapping the endpoints gives the same representation
    LineEq r = line_through(q, p);
    CHECK(l.a == doctest::Approx(r.a));
    CHECK(l.b == doctest::Approx(r.b));
    CHECK(l.c == doctest::Approx(r.c));
  }
}

TEST_CASE("offset_line") {
  LineEq x_axis = line_through({0, 0}, {1, 0});
  LineEq up = offset_line(x_axis, 1.0, {0, 5});
  CHECK(signed_dist(up, Point{0, 1}) == doctest::Approx(0.0));
  CHECK(signed_dist(up, Point{7, 1}) == doctest::Approx(0.0));
  LineEq down = offset_line(x_axis, 2.0, {3, -9});
  CHECK(signed_dist(down, Point{0, -2}) == doctest::Approx(0.0));

  CHECK_THROWS_AS(offset_line(x_axis, -1.0, {0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(offset_line(x_axis, 1.0, {4, 0}), std::invalid_argument);
}

TEST_CASE("angle_between") {
  CHECK(angle_between({1, 0}, {1, 1}) == doctest::Approx(kPi / 4));
  CHECK(angle_between({1, 0}, {0, 3}) == doctest::Approx(kPi / 2));
  CHECK(angle_between({1, 0}, {-2, 0}) == doctest::Approx(kPi));
  CHECK(angle_between({2, 1}, {4, 2}) == doctest::Approx(0.0));
}

TEST_CASE("circle_segment_chord") {
  Circle c{{0, 0}, 2.0};
  Segment s{{0, 0}, {10, 0}};
  auto chord = circle_segment_chord(c, s);
  REQUIRE(chord.has_value());
  CHECK(chord->a.x == doctest::Approx(0.0));
  CHECK(chord->b.x == doctest::Approx(2.0));
  CHECK(chord->b.y == doctest::Approx(0.0));

  CHECK(!circle_segment_chord(Circle{{0, 5}, 1.0}, s).has_value());

  // tangency yields a degenerate chord
  auto t = circle_segment_chord(Circle{{4, 1}, 1.0}, s);
  REQUIRE(t.has_value());
  CHECK(t->a.x == doctest::Approx(4.0));
  CHECK(t->b.x == doctest::Approx(4.0));
}

TEST_CASE("sentinel_positions") {
  Circle c{{0, 0}, 2.0};
  LineEq edge = line_through({0, 0}, {1, 0});
  auto [p, q] = sentinel_positions(c, edge, {5, 0}, 1.0);
  CHECK(p.x == doctest::Approx(std::sqrt(3.0)));
  CHECK(p.y == doctest::Approx(1.0));
  CHECK(q.x == doctest::Approx(std::sqrt(3.0)));
  CHECK(q.y == doctest::Approx(-1.0));
  // both on the circle, mirrored across the edge
  CHECK(dist(p, c.center) == doctest::Approx(2.0));
  CHECK(dist(q, c.center) == doctest::Approx(2.0));

  auto [p2, q2] = sentinel_positions(c, edge, {-5, 0}, 1.0);
  CHECK(p2.x == doctest::Approx(-std::sqrt(3.0)));
  CHECK(p2.y == doctest::Approx(1.0));

  CHECK_THROWS_AS(sentinel_positions(Circle{{0, 0}, 1.0}, edge, {5, 0}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("grow_circle_on_edge against a perpendicular obstacle") {
  LineEq edge = line_through({0, 0}, {1, 0});
  LineEq obstacle = line_through({9, 0}, {9, 1});
  auto c = grow_circle_on_edge(edge, {0, 0}, {1, 0}, {3, 1}, obstacle);
  REQUIRE(c.has_value());
  CHECK(c->center.x == doctest::Approx(71.0 / 12.0));
  CHECK(c->center.y == doctest::Approx(0.0));
  CHECK(c->radius == doctest::Approx(37.0 / 12.0));
}

TEST_CASE("grow_circle_on_edge against a parallel obstacle") {
  LineEq edge = line_through({0, 0}, {1, 0});
  LineEq obstacle = line_through({0, 3}, {1, 3});
  auto c = grow_circle_on_edge(edge, {0, 0}, {1, 0}, {0, 1}, obstacle);
  REQUIRE(c.has_value());
  CHECK(c->center.x == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(c->radius == doctest::Approx(3.0));

  // the anchor sits deeper than the obstacle allows: no feasible growth
  LineEq tight = line_through({0, 0.5}, {1, 0.5});
  CHECK(!grow_circle_on_edge(edge, {0, 0}, {1, 0}, {0, 1}, tight).has_value());
}

TEST_CASE("grow_circle_on_edge ignores roots behind the anchor") {
  LineEq edge = line_through({0, 0}, {1, 0});
  LineEq behind = line_through({-9, 0}, {-9, 1});
  CHECK(!grow_circle_on_edge(edge, {0, 0}, {1, 0}, {3, 1}, behind).has_value());
}

TEST_CASE("strictly_inside") {
  Circle c{{0, 0}, 2.0};
  CHECK(strictly_inside({0.5, 0.5}, c, 1e-12));
  CHECK(!strictly_inside({2, 0}, c, 1e-12));       // boundary does not count
  CHECK(!strictly_inside({3, 0}, c, 1e-12));
}
