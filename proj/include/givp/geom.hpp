#pragma once

#include <cmath>
#include <optional>
#include <utility>

namespace givp {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
inline bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return dot(a, a); }
inline double norm(Point a) { return std::sqrt(norm2(a)); }
inline double dist(Point a, Point b) { return norm(a - b); }
// 90 degree counterclockwise rotation.
inline Point perp(Point a) { return {-a.y, a.x}; }
inline Point normalized(Point a) { double n = norm(a); return {a.x / n, a.y / n}; }

// Endpoints are expected to be distinct wherever a Segment enters the API;
// circle_segment_chord may return a degenerate one (tangency).
struct Segment {
  Point a, b;
};

inline double length(const Segment& s) { return dist(s.a, s.b); }

// Axis-aligned rectangle, lo componentwise below hi.
struct Box {
  Point lo;
  Point hi;
};

inline double box_diag(const Box& box) { return dist(box.lo, box.hi); }

// a*x + b*y + c = 0 with a^2 + b^2 = 1, and a > 0 or (a == 0 and b > 0).
// The normalization makes signed_dist a true distance and gives every
// (unordered) line a unique representation, verticals included.
struct LineEq {
  double a = 0.0, b = 0.0, c = 0.0;
};

struct Circle {
  Point center;
  double radius = 0.0;
};

double dist_point_segment(Point p, const Segment& s);

// Minimal distance between closed segments; 0 when they properly cross.
double dist_segment_segment(const Segment& s, const Segment& t);

// Throws std::invalid_argument if the points coincide.
LineEq line_through(Point p, Point q);

inline double signed_dist(const LineEq& l, Point p) { return l.a * p.x + l.b * p.y + l.c; }

inline Point project_onto(const LineEq& l, Point p) {
  double s = signed_dist(l, p);
  return {p.x - s * l.a, p.y - s * l.b};
}

// Parallel line at distance d > 0, on the side of `toward`.
// Throws std::invalid_argument if d <= 0 or `toward` lies on l.
LineEq offset_line(const LineEq& l, double d, Point toward);

// Angle between two direction vectors, in [0, pi].
double angle_between(Point d1, Point d2);

// Closed-disk intersection with the segment; degenerate (a == b) on tangency.
std::optional<Segment> circle_segment_chord(const Circle& c, const Segment& s);

// Mirrored site pair on circle c at perpendicular distance eps from edge_line.
// The circle center must lie on edge_line (vertex circles and inner circles
// both do). Of the two feet at +-sqrt(r^2-eps^2) along the line, the one
// nearer side_foot is used. First element of the result is on the positive
// side of edge_line. Throws std::invalid_argument if eps >= c.radius.
std::pair<Point, Point> sentinel_positions(const Circle& c, const LineEq& edge_line,
                                           Point side_foot, double eps);

// Largest circle through `anchor` with center on the edge line (parametrized
// center = edge_point + t*edge_dir) tangent to `obstacle`: solves
// |center - anchor|^2 = signed_dist(obstacle, center)^2 and returns the first
// root strictly advancing past the anchor's foot. nullopt when no such root
// exists (growth infeasible in that direction).
std::optional<Circle> grow_circle_on_edge(const LineEq& edge_line, Point edge_point,
                                          Point edge_dir, Point anchor, const LineEq& obstacle);

inline bool strictly_inside(Point p, const Circle& c, double tol) {
  return dist(p, c.center) < c.radius - tol;
}

}  // namespace givp
