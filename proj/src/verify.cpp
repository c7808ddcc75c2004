#include "givp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace givp {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

double dist2(Point a, Point b) { return norm2(a - b); }

bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

struct Frame {
  Point origin;
  Point dir;
  LineEq line;
  double len;
};

// Edge coordinates measured from the lexicographically smaller endpoint,
// matching the convention of the solver's pair annotations.
Frame edge_frame(const Pslg& g, int e) {
  Segment s = g.segment(e);
  Point a = s.a, b = s.b;
  if (lex_less(b, a)) std::swap(a, b);
  Frame fr;
  fr.origin = a;
  fr.len = dist(a, b);
  fr.dir = normalized(b - a);
  fr.line = line_through(a, b);
  return fr;
}

Point at(const Frame& fr, double t) { return fr.origin + t * fr.dir; }

// Squared distance from the edge point at parameter y to either site of p.
double pair_g(const SentinelPair& p, double y) {
  double d = y - p.foot_param;
  return d * d + p.offset * p.offset;
}

// Parameter where pairs i and j are equidistant from the edge; exact because
// the quadratic terms cancel.
double cross_param(const SentinelPair& pi, const SentinelPair& pj) {
  double fi = pi.foot_param, fj = pj.foot_param;
  double ci = fi * fi + pi.offset * pi.offset;
  double cj = fj * fj + pj.offset * pj.offset;
  return (cj - ci) / (2.0 * (fj - fi));
}

struct Envelope {
  struct Piece {
    int pair;
    double a, b;
  };
  std::vector<Piece> pieces;
  double r2_max = 0.0;
};

// Lower envelope of the per-pair squared-distance functions over [y_lo,
// y_hi]. After subtracting y^2 these are lines with slopes decreasing in
// foot order, so a single stack pass finds the pieces.
Envelope lower_envelope(const std::vector<SentinelPair>& pairs, double y_lo, double y_hi) {
  std::vector<int> st;
  std::vector<double> xs;  // xs[t]: crossover between st[t] and st[t+1]
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
    while (true) {
      if (st.empty()) {
        st.push_back(i);
        break;
      }
      double x = cross_param(pairs[st.back()], pairs[i]);
      if (!xs.empty() && x <= xs.back()) {
        st.pop_back();
        xs.pop_back();
        continue;
      }
      st.push_back(i);
      xs.push_back(x);
      break;
    }
  }
  Envelope env;
  for (size_t t = 0; t < st.size(); ++t) {
    double a = t == 0 ? y_lo : std::max(y_lo, xs[t - 1]);
    double b = t + 1 < st.size() ? std::min(y_hi, xs[t]) : y_hi;
    if (b < a) continue;
    env.pieces.push_back({st[t], a, b});
    env.r2_max = std::max({env.r2_max, pair_g(pairs[st[t]], a), pair_g(pairs[st[t]], b)});
  }
  return env;
}

struct LabeledPoly {
  std::vector<Point> v;
  std::vector<int> lab;  // lab[t]: provenance of side v[t] -> v[t+1]
};

// Convex clip against h; sides created along the cut get new_label. Labels
// follow the side leaving each stored vertex.
void clip_poly(LabeledPoly& poly, const HalfPlane& h, int new_label, double tol) {
  size_t n = poly.v.size();
  std::vector<Point> out_v;
  std::vector<int> out_l;
  out_v.reserve(n + 1);
  out_l.reserve(n + 1);
  for (size_t t = 0; t < n; ++t) {
    Point a = poly.v[t], b = poly.v[(t + 1) % n];
    int lab = poly.lab[t];
    double da = h.keep * signed_dist(h.boundary, a);
    double db = h.keep * signed_dist(h.boundary, b);
    bool ina = da >= -tol, inb = db >= -tol;
    if (ina && inb) {
      out_v.push_back(a);
      out_l.push_back(lab);
    } else if (ina && !inb) {
      out_v.push_back(a);
      out_l.push_back(lab);
      double s = da / (da - db);
      out_v.push_back(a + s * (b - a));
      out_l.push_back(new_label);
    } else if (!ina && inb) {
      double s = da / (da - db);
      out_v.push_back(a + s * (b - a));
      out_l.push_back(lab);
    }
  }
  poly.v = std::move(out_v);
  poly.lab = std::move(out_l);
}

}  // namespace

Box verification_box(const Pslg& g) {
  if (g.edges.empty()) throw std::invalid_argument("verification_box: graph has no edges");
  double dmax = 0.0;
  for (size_t e = 0; e < g.edges.size(); ++e)
    dmax = std::max(dmax, length(g.segment(static_cast<int>(e))));
  Point m{2.0 * dmax, 2.0 * dmax};
  return {g.bbox_lo - m, g.bbox_hi + m};
}

bool half_plane_contains(const HalfPlane& h, Point p, double tol) {
  return h.keep * signed_dist(h.boundary, p) >= -tol;
}

HalfPlane bisector_half_plane(Point p, Point q) {
  Point d = q - p;
  double n = norm(d);
  if (n == 0.0) throw std::invalid_argument("bisector_half_plane: coincident points");
  LineEq l{d.x / n, d.y / n, 0.0};
  Point m = 0.5 * (p + q);
  l.c = -(l.a * m.x + l.b * m.y);
  if (l.a < 0.0 || (l.a == 0.0 && l.b < 0.0)) {
    l.a = -l.a;
    l.b = -l.b;
    l.c = -l.c;
  }
  return {l, signed_dist(l, p) >= 0.0 ? 1 : -1};
}

double polygon_area(const std::vector<Point>& poly) {
  double s = 0.0;
  for (size_t t = 0; t < poly.size(); ++t) s += cross(poly[t], poly[(t + 1) % poly.size()]);
  return 0.5 * s;
}

bool polygon_contains(const std::vector<Point>& poly, Point p, double tol) {
  size_t n = poly.size();
  if (n < 3) return false;
  for (size_t t = 0; t < n; ++t) {
    Point a = poly[t], b = poly[(t + 1) % n];
    if (cross(b - a, p - a) < -tol * norm(b - a)) return false;
  }
  return true;
}

VoronoiDiagram brute_force_voronoi(const std::vector<Point>& sites, const Box& box) {
  if (sites.empty()) throw std::invalid_argument("brute_force_voronoi: need at least one site");
  if (!(box.lo.x < box.hi.x && box.lo.y < box.hi.y))
    throw std::invalid_argument("brute_force_voronoi: box is empty");
  for (const Point& s : sites)
    if (s.x < box.lo.x || s.x > box.hi.x || s.y < box.lo.y || s.y > box.hi.y)
      throw std::invalid_argument("brute_force_voronoi: site outside box");
  {
    std::vector<Point> sorted = sites;
    std::sort(sorted.begin(), sorted.end(), lex_less);
    for (size_t i = 0; i + 1 < sorted.size(); ++i)
      if (sorted[i] == sorted[i + 1])
        throw std::invalid_argument("brute_force_voronoi: duplicate sites");
  }
  double tol = 1e-12 * box_diag(box);
  VoronoiDiagram vd;
  vd.box = box;
  vd.sites = sites;
  int n = static_cast<int>(sites.size());
  std::vector<int> order;
  order.reserve(n);
  for (int i = 0; i < n; ++i) {
    LabeledPoly poly;
    poly.v = {box.lo, {box.hi.x, box.lo.y}, box.hi, {box.lo.x, box.hi.y}};
    poly.lab = {-1, -1, -1, -1};
    order.clear();
    for (int j = 0; j < n; ++j)
      if (j != i) order.push_back(j);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return dist2(sites[a], sites[i]) < dist2(sites[b], sites[i]);
    });
    double R2 = 0.0;
    for (const Point& p : poly.v) R2 = std::max(R2, dist2(p, sites[i]));
    for (int j : order) {
      // a bisector at distance d/2 >= R cannot cut a cell of radius R; sites
      // are sorted by distance, so everything beyond is irrelevant too
      if (dist2(sites[j], sites[i]) >= 4.0 * R2) break;
      clip_poly(poly, bisector_half_plane(sites[i], sites[j]), j, tol);
      R2 = 0.0;
      for (const Point& p : poly.v) R2 = std::max(R2, dist2(p, sites[i]));
    }
    vd.cells.push_back({i, poly.v, poly.lab});
  }
  for (const VoronoiCell& c : vd.cells)
    for (size_t t = 0; t < c.polygon.size(); ++t) {
      int j = c.side_site[t];
      if (j <= c.site) continue;  // box side or already emitted from the lower cell
      Point a = c.polygon[t], b = c.polygon[(t + 1) % c.polygon.size()];
      if (dist2(a, b) <= tol * tol) continue;
      vd.edges.push_back({c.site, j, {a, b}});
    }
  return vd;
}

CheckReport exact_guard_check(const Pslg& g, const Solution& sol) {
  const double scale = g.bbox_diag;
  const double tol = 1e-9 * scale;
  if (sol.report.plans.size() != g.edges.size())
    throw std::invalid_argument("exact_guard_check: need one cover plan per edge");
  if (!(sol.report.epsilon > 0.0))
    throw std::invalid_argument("exact_guard_check: nonpositive epsilon");
  const double eps = sol.report.epsilon;
  if (!std::is_sorted(sol.sites.begin(), sol.sites.end(), lex_less))
    throw std::invalid_argument("exact_guard_check: site list not sorted");
  auto has_site = [&](Point p) {
    auto it = std::lower_bound(sol.sites.begin(), sol.sites.end(), p, lex_less);
    return it != sol.sites.end() && *it == p;
  };

  CheckReport rep;
  for (size_t e = 0; e < sol.report.plans.size(); ++e) {
    const EdgeCoverPlan& plan = sol.report.plans[e];
    if (plan.edge != static_cast<int>(e))
      throw std::invalid_argument("exact_guard_check: plans not sorted by edge id");
    Frame fr = edge_frame(g, static_cast<int>(e));
    if (plan.pairs.size() < 2)
      throw std::invalid_argument("exact_guard_check: edge with fewer than two pairs");
    for (size_t i = 0; i < plan.pairs.size(); ++i) {
      const SentinelPair& p = plan.pairs[i];
      if (p.edge != static_cast<int>(e) || !(p.offset > 0.0) || p.offset > eps * (1.0 + 1e-9))
        throw std::invalid_argument("exact_guard_check: bad pair annotation");
      if (i + 1 < plan.pairs.size() && !(p.foot_param < plan.pairs[i + 1].foot_param))
        throw std::invalid_argument("exact_guard_check: pair feet not strictly increasing");
      Point mid = 0.5 * (p.p + p.q);
      if (dist(at(fr, p.foot_param), p.foot) > tol || dist(mid, p.foot) > tol ||
          std::abs(dist(p.p, p.q) - 2.0 * p.offset) > tol)
        throw std::invalid_argument("exact_guard_check: pair annotation disagrees with geometry");
      if (!has_site(p.p) || !has_site(p.q))
        throw std::invalid_argument("exact_guard_check: pair site missing from site list");
    }
    if (std::abs(plan.pairs.front().foot_param - plan.w1) > tol ||
        std::abs(plan.pairs.back().foot_param - plan.w2) > tol)
      throw std::invalid_argument("exact_guard_check: end pairs do not match [w1, w2]");

    std::string fail_msg;
    Point fail_point{0, 0}, fail_site{0, 0}, fail_center{0, 0};
    double fail_radius = 0.0;

    // (a) chords of the plan circles must cover [w1, w2] without gaps
    std::vector<std::pair<double, double>> chords;
    for (const CoverCircle& c : plan.circles) {
      for (int idx : c.pair_index)
        if (idx < 0 || idx >= static_cast<int>(plan.pairs.size()))
          throw std::invalid_argument("exact_guard_check: circle references a missing pair");
      double sd = signed_dist(fr.line, c.circle.center);
      if (std::abs(sd) > tol)
        throw std::invalid_argument("exact_guard_check: circle center off the edge line");
      double t = dot(c.circle.center - fr.origin, fr.dir);
      double half2 = c.circle.radius * c.circle.radius - sd * sd;
      double half = half2 > 0.0 ? std::sqrt(half2) : 0.0;
      chords.emplace_back(t - half, t + half);
    }
    std::sort(chords.begin(), chords.end());
    double cover = plan.w1;
    for (const auto& ch : chords) {
      if (ch.first > cover + tol) break;
      cover = std::max(cover, ch.second);
    }
    if (cover < plan.w2 - tol) {
      std::ostringstream os;
      os << "edge " << e << ": coverage gap at parameter " << cover;
      fail_msg = os.str();
      fail_point = at(fr, cover);
    }

    // (b) no site may beat the locally nearest pair anywhere on the edge;
    // per envelope piece the comparison is linear, so endpoints suffice
    if (fail_msg.empty()) {
      Envelope env = lower_envelope(plan.pairs, 0.0, fr.len);
      double reach = std::sqrt(env.r2_max);
      Segment seg = g.segment(static_cast<int>(e));
      std::vector<Point> near;
      for (const Point& s : sol.sites)
        if (dist_point_segment(s, seg) <= reach + tol) near.push_back(s);
      bool broken = false;
      for (const Envelope::Piece& pc : env.pieces) {
        const SentinelPair& pr = plan.pairs[pc.pair];
        for (const Point& s : near) {
          if (s == pr.p || s == pr.q) continue;
          for (double y : {pc.a, pc.b}) {
            double d2p = pair_g(pr, y);
            double tau = 1e-12 * scale * scale + 1e-9 * d2p;
            Point pt = at(fr, y);
            if (dist2(s, pt) < d2p - tau) {
              // name the circle carrying the beaten pair, nearest to the spot
              int best = -1;
              bool best_refs = false;
              double best_d = kInf;
              for (size_t ci = 0; ci < plan.circles.size(); ++ci) {
                const CoverCircle& c = plan.circles[ci];
                bool refs = std::find(c.pair_index.begin(), c.pair_index.end(), pc.pair) !=
                            c.pair_index.end();
                double d = std::abs(dot(c.circle.center - fr.origin, fr.dir) - y);
                if (best < 0 || (refs && !best_refs) || (refs == best_refs && d < best_d)) {
                  best = static_cast<int>(ci);
                  best_refs = refs;
                  best_d = d;
                }
              }
              std::ostringstream os;
              os << "edge " << e << ": site (" << s.x << ", " << s.y
                 << ") intrudes at parameter " << y;
              fail_point = pt;
              fail_site = s;
              if (best >= 0) {
                fail_center = plan.circles[best].circle.center;
                fail_radius = plan.circles[best].circle.radius;
                os << " on circle center (" << fail_center.x << ", " << fail_center.y
                   << ") radius " << fail_radius;
              }
              fail_msg = os.str();
              broken = true;
              break;
            }
          }
          if (broken) break;
        }
        if (broken) break;
      }
    }

    rep.edges.push_back({static_cast<int>(e), fail_msg.empty(),
                         fail_msg.empty() ? std::string("PASS") : fail_msg});
    if (!fail_msg.empty() && rep.pass) {
      rep.pass = false;
      rep.fail_edge = static_cast<int>(e);
      rep.fail_point = fail_point;
      rep.fail_site = fail_site;
      rep.fail_circle_center = fail_center;
      rep.fail_circle_radius = fail_radius;
      rep.message = fail_msg;
    }
  }
  return rep;
}

CheckReport edge_coverage_check(const Pslg& g, const VoronoiDiagram& vd, double tol,
                                double eps_hint) {
  if (!(tol > 0.0)) throw std::invalid_argument("edge_coverage_check: tol must be positive");
  double diag = box_diag(vd.box);
  double mirror_tol = 1e-7 * diag;
  double eps = eps_hint;
  if (!(eps > 0.0)) {
    double m2 = kInf;
    for (size_t i = 0; i < vd.sites.size(); ++i)
      for (size_t j = i + 1; j < vd.sites.size(); ++j)
        m2 = std::min(m2, dist2(vd.sites[i], vd.sites[j]));
    eps = vd.sites.size() > 1 ? 0.5 * std::sqrt(m2) : diag;
  }

  CheckReport rep;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    Frame fr = edge_frame(g, static_cast<int>(e));
    struct Rail {
      double key;
      Segment seg;
    };
    std::vector<Rail> rails;
    for (const VoronoiEdge& ve : vd.edges) {
      Point p = vd.sites[ve.site_a], q = vd.sites[ve.site_b];
      double sp = signed_dist(fr.line, p);
      if (std::abs(sp) <= mirror_tol) continue;
      Point refl = p - (2.0 * sp) * Point{fr.line.a, fr.line.b};
      if (dist(refl, q) > mirror_tol) continue;
      rails.push_back({dot(0.5 * (ve.seg.a + ve.seg.b) - fr.origin, fr.dir), ve.seg});
    }
    std::string fail_msg;
    Point fail_point{0, 0};
    if (rails.empty()) {
      std::ostringstream os;
      os << "edge " << e << ": no Voronoi edges mirrored across it";
      fail_msg = os.str();
      fail_point = fr.origin;
    } else {
      std::sort(rails.begin(), rails.end(),
                [](const Rail& a, const Rail& b) { return a.key < b.key; });
      long long m = 64LL * static_cast<long long>(std::ceil(fr.len / eps));
      m = std::clamp(m, 64LL, 200000LL);
      size_t k = 0;
      for (long long si = 0; si <= m; ++si) {
        Point pt = at(fr, fr.len * static_cast<double>(si) / static_cast<double>(m));
        // the covering rail advances monotonically along the edge; confirm
        // any apparent miss with a full scan before reporting it
        double d = dist_point_segment(pt, rails[k].seg);
        while (k + 1 < rails.size()) {
          double dn = dist_point_segment(pt, rails[k + 1].seg);
          if (dn <= d) {
            ++k;
            d = dn;
          } else {
            break;
          }
        }
        if (d > tol) {
          for (const Rail& r : rails) d = std::min(d, dist_point_segment(pt, r.seg));
          if (d > tol) {
            std::ostringstream os;
            os << "edge " << e << ": point (" << pt.x << ", " << pt.y << ") is distance " << d
               << " from the nearest mirrored Voronoi edge";
            fail_msg = os.str();
            fail_point = pt;
            break;
          }
        }
      }
    }
    rep.edges.push_back({static_cast<int>(e), fail_msg.empty(),
                         fail_msg.empty() ? std::string("PASS") : fail_msg});
    if (!fail_msg.empty() && rep.pass) {
      rep.pass = false;
      rep.fail_edge = static_cast<int>(e);
      rep.fail_point = fail_point;
      rep.message = fail_msg;
    }
  }
  return rep;
}

CheckReport sampled_nearest_pair_check(const Pslg& g, const Solution& sol,
                                       int samples_per_interval) {
  if (samples_per_interval < 2)
    throw std::invalid_argument("sampled_nearest_pair_check: need at least 2 samples per interval");
  if (sol.report.plans.size() != g.edges.size())
    throw std::invalid_argument("sampled_nearest_pair_check: need one cover plan per edge");
  double scale = g.bbox_diag;

  CheckReport rep;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const EdgeCoverPlan& plan = sol.report.plans[e];
    Frame fr = edge_frame(g, static_cast<int>(e));
    std::vector<double> bounds{0.0};
    for (const SentinelPair& p : plan.pairs) bounds.push_back(p.foot_param);
    bounds.push_back(fr.len);
    Envelope env = lower_envelope(plan.pairs, 0.0, fr.len);
    double reach = std::sqrt(env.r2_max);
    Segment seg = g.segment(static_cast<int>(e));
    std::vector<Point> near;
    for (const Point& s : sol.sites)
      if (dist_point_segment(s, seg) <= reach * (1.0 + 1e-9) + 1e-12 * scale)
        near.push_back(s);

    std::string fail_msg;
    Point fail_point{0, 0}, fail_site{0, 0};
    for (size_t t = 0; t + 1 < bounds.size() && fail_msg.empty(); ++t) {
      for (int j = 0; j < samples_per_interval && fail_msg.empty(); ++j) {
        double y = bounds[t] +
                   (bounds[t + 1] - bounds[t]) * (j + 0.5) / samples_per_interval;
        Point pt = at(fr, y);
        double d1 = kInf;
        Point nearest{0, 0};
        for (const Point& s : near) {
          double d = dist(s, pt);
          if (d < d1) {
            d1 = d;
            nearest = s;
          }
        }
        double tie = d1 * (1.0 + 1e-9) + 1e-12 * scale;
        bool found = false;
        for (const SentinelPair& p : plan.pairs)
          if (dist(p.p, pt) <= tie && dist(p.q, pt) <= tie) {
            found = true;
            break;
          }
        if (!found) {
          std::ostringstream os;
          os << "edge " << e << ": nearest sites at (" << pt.x << ", " << pt.y
             << ") are not a mirrored pair of the edge; nearest is (" << nearest.x << ", "
             << nearest.y << ")";
          fail_msg = os.str();
          fail_point = pt;
          fail_site = nearest;
        }
      }
    }
    rep.edges.push_back({static_cast<int>(e), fail_msg.empty(),
                         fail_msg.empty() ? std::string("PASS") : fail_msg});
    if (!fail_msg.empty() && rep.pass) {
      rep.pass = false;
      rep.fail_edge = static_cast<int>(e);
      rep.fail_point = fail_point;
      rep.fail_site = fail_site;
      rep.message = fail_msg;
    }
  }
  return rep;
}

}  // namespace givp
