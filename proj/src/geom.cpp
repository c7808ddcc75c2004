#include "givp/geom.hpp"

#include <algorithm>
#include <stdexcept>

namespace givp {

double dist_point_segment(Point p, const Segment& s) {
  Point d = s.b - s.a;
  double len2 = norm2(d);
  if (len2 == 0.0) return dist(p, s.a);
  double t = dot(p - s.a, d) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, s.a + t * d);
}

double dist_segment_segment(const Segment& s, const Segment& t) {
  auto orient = [](Point a, Point b, Point c) { return cross(b - a, c - a); };
  double o1 = orient(s.a, s.b, t.a), o2 = orient(s.a, s.b, t.b);
  double o3 = orient(t.a, t.b, s.a), o4 = orient(t.a, t.b, s.b);
  if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
      o4 != 0)
    return 0.0;
  return std::min(std::min(dist_point_segment(t.a, s), dist_point_segment(t.b, s)),
                  std::min(dist_point_segment(s.a, t), dist_point_segment(s.b, t)));
}

LineEq line_through(Point p, Point q) {
  if (p == q) throw std::invalid_argument("line_through: coincident points");
  Point d = normalized(q - p);
  LineEq l{-d.y, d.x, 0.0};
  l.c = -(l.a * p.x + l.b * p.y);
  if (l.a < 0.0 || (l.a == 0.0 && l.b < 0.0)) {
    l.a = -l.a; l.b = -l.b; l.c = -l.c;
  }
  return l;
}

LineEq offset_line(const LineEq& l, double d, Point toward) {
  if (d <= 0.0) throw std::invalid_argument("offset_line: distance must be positive");
  double s = signed_dist(l, toward);
  if (s == 0.0) throw std::invalid_argument("offset_line: toward lies on the line");
  // Shift keeps (a,b), so the sign normalization is preserved.
  return {l.a, l.b, l.c - (s > 0.0 ? d : -d)};
}

double angle_between(Point d1, Point d2) {
  return std::atan2(std::abs(cross(d1, d2)), dot(d1, d2));
}

std::optional<Segment> circle_segment_chord(const Circle& c, const Segment& s) {
  Point d = s.b - s.a;
  double len = norm(d);
  Point u = {d.x / len, d.y / len};
  double tc = dot(c.center - s.a, u);          // center's foot along the segment
  double h2 = c.radius * c.radius - norm2(c.center - (s.a + tc * u));
  if (h2 < 0.0) return std::nullopt;
  double h = std::sqrt(h2);
  double lo = std::max(0.0, tc - h);
  double hi = std::min(len, tc + h);
  if (lo > hi) return std::nullopt;
  return Segment{s.a + lo * u, s.a + hi * u};
}

std::pair<Point, Point> sentinel_positions(const Circle& c, const LineEq& edge_line,
                                           Point side_foot, double eps) {
  if (eps >= c.radius) throw std::invalid_argument("sentinel_positions: eps >= radius");
  if (eps <= 0.0) throw std::invalid_argument("sentinel_positions: eps must be positive");
  double h = std::sqrt(c.radius * c.radius - eps * eps);
  Point base = project_onto(edge_line, c.center);
  Point tang = {-edge_line.b, edge_line.a};
  Point f1 = base + h * tang;
  Point f2 = base - h * tang;
  Point foot = dist(f1, side_foot) <= dist(f2, side_foot) ? f1 : f2;
  Point n = {edge_line.a, edge_line.b};
  return {foot + eps * n, foot - eps * n};
}

std::optional<Circle> grow_circle_on_edge(const LineEq& edge_line, Point edge_point,
                                          Point edge_dir, Point anchor, const LineEq& obstacle) {
  (void)edge_line;  // center parametrization carries the same information
  Point d = normalized(edge_dir);
  Point pa = edge_point - anchor;
  double t_anchor = -dot(pa, d);
  double s0 = signed_dist(obstacle, edge_point);
  double sd = obstacle.a * d.x + obstacle.b * d.y;

  // |p + t d - anchor|^2 = (s0 + t sd)^2, quadratic in t; degenerates to
  // linear when the obstacle is perpendicular to the edge (|sd| = 1).
  double qa = 1.0 - sd * sd;
  double qb = 2.0 * (dot(d, pa) - s0 * sd);
  double qc = norm2(pa) - s0 * s0;

  double adv = t_anchor + 1e-12 * std::max(1.0, std::abs(t_anchor));
  double best = 0.0;
  bool found = false;
  auto consider = [&](double t) {
    if (t > adv && (!found || t < best)) { best = t; found = true; }
  };
  if (std::abs(qa) < 1e-14) {
    if (qb != 0.0) consider(-qc / qb);
  } else {
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) return std::nullopt;
    double sq = std::sqrt(disc);
    consider((-qb - sq) / (2.0 * qa));
    consider((-qb + sq) / (2.0 * qa));
  }
  if (!found) return std::nullopt;
  Point center = edge_point + best * d;
  return Circle{center, dist(center, anchor)};
}

}  // namespace givp
