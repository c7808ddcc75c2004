#include "givp/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace givp {

namespace {

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

struct Extent {
  double xlo = 0.0, ylo = 0.0, xhi = 0.0, yhi = 0.0;
  bool any = false;
  void add(const Point& p, double pad = 0.0) {
    if (!any) {
      xlo = p.x - pad; xhi = p.x + pad;
      ylo = p.y - pad; yhi = p.y + pad;
      any = true;
      return;
    }
    xlo = std::min(xlo, p.x - pad);
    xhi = std::max(xhi, p.x + pad);
    ylo = std::min(ylo, p.y - pad);
    yhi = std::max(yhi, p.y + pad);
  }
};

// Vertex-circle radii recovered from the plans: the first and last pair of
// every edge plan lie on the circles of the edge's two endpoints, so the
// radius is the distance from that pair to the endpoint. Working from the
// solution file keeps rendering independent of the solver configuration.
std::map<int, double> vertex_radii(const Pslg& g, const Solution& sol) {
  std::map<int, double> radii;
  for (const auto& plan : sol.report.plans) {
    if (plan.edge < 0 || plan.edge >= static_cast<int>(g.edges.size())) continue;
    if (plan.pairs.size() < 2) continue;
    const auto [ia, ib] = g.edges[static_cast<std::size_t>(plan.edge)];
    const Point a = g.vertices[static_cast<std::size_t>(ia)];
    const Point b = g.vertices[static_cast<std::size_t>(ib)];
    const bool a_first = a.x < b.x || (a.x == b.x && a.y < b.y);
    const int lo = a_first ? ia : ib;
    const int hi = a_first ? ib : ia;
    radii[lo] = dist(plan.pairs.front().p, a_first ? a : b);
    radii[hi] = dist(plan.pairs.back().p, a_first ? b : a);
  }
  return radii;
}

}  // namespace

std::string render_svg(const Pslg& g, const Solution* sol, const VoronoiDiagram* vd,
                       const RenderOptions& opt) {
  if (opt.width <= 0.0) throw std::invalid_argument("render_svg: width must be positive");
  if (g.vertices.empty()) throw std::invalid_argument("render_svg: empty graph");

  Extent ext;
  for (const Point& p : g.vertices) ext.add(p);
  std::map<int, double> radii;
  if (sol) {
    radii = vertex_radii(g, *sol);
    for (const auto& [v, r] : radii)
      ext.add(g.vertices[static_cast<std::size_t>(v)], r);
    for (const auto& plan : sol->report.plans)
      for (const auto& cc : plan.circles) ext.add(cc.circle.center, cc.circle.radius);
    for (const Point& s : sol->sites) ext.add(s);
  }
  if (vd) {
    for (const auto& e : vd->edges) {
      ext.add(e.seg.a);
      ext.add(e.seg.b);
    }
  }

  const double span = std::max(ext.xhi - ext.xlo, ext.yhi - ext.ylo);
  const double margin = (span > 0.0 ? span : 1.0) * opt.margin_frac;
  const double x0 = ext.xlo - margin, y0 = ext.ylo - margin;
  const double w = ext.xhi - ext.xlo + 2.0 * margin;
  const double h = ext.yhi - ext.ylo + 2.0 * margin;
  const double diag = std::hypot(w, h);
  const double edge_w = 0.006 * diag;
  const double thin_w = 0.002 * diag;
  const double dot_r = 0.004 * diag;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(opt.width) +
         "\" height=\"" + fmt(opt.width * h / w) + "\" viewBox=\"" + fmt(x0) + " " +
         fmt(y0) + " " + fmt(w) + " " + fmt(h) + "\">\n";
  // flip the y axis about the picture midline so y grows upward
  svg += "<g transform=\"matrix(1 0 0 -1 0 " + fmt(2.0 * y0 + h) + ")\">\n";

  svg += "<g id=\"input-edges\" stroke=\"#111111\" stroke-width=\"" + fmt(edge_w) +
         "\" stroke-linecap=\"round\">\n";
  for (const auto& [ia, ib] : g.edges) {
    const Point a = g.vertices[static_cast<std::size_t>(ia)];
    const Point b = g.vertices[static_cast<std::size_t>(ib)];
    svg += "<line x1=\"" + fmt(a.x) + "\" y1=\"" + fmt(a.y) + "\" x2=\"" + fmt(b.x) +
           "\" y2=\"" + fmt(b.y) + "\"/>\n";
  }
  svg += "</g>\n";

  if (sol) {
    svg += "<g id=\"initial-circles\" stroke=\"#4878a8\" stroke-width=\"" + fmt(thin_w) +
           "\" fill=\"none\">\n";
    for (const auto& [v, r] : radii) {
      const Point c = g.vertices[static_cast<std::size_t>(v)];
      svg += "<circle cx=\"" + fmt(c.x) + "\" cy=\"" + fmt(c.y) + "\" r=\"" + fmt(r) +
             "\"/>\n";
    }
    svg += "</g>\n";

    svg += "<g id=\"cover-circles\" stroke=\"#3a9a5c\" stroke-width=\"" + fmt(thin_w) +
           "\" fill=\"none\">\n";
    for (const auto& plan : sol->report.plans)
      for (const auto& cc : plan.circles)
        svg += "<circle cx=\"" + fmt(cc.circle.center.x) + "\" cy=\"" +
               fmt(cc.circle.center.y) + "\" r=\"" + fmt(cc.circle.radius) + "\"/>\n";
    svg += "</g>\n";

    svg += "<g id=\"sites\" fill=\"#c03030\">\n";
    for (const Point& s : sol->sites)
      svg += "<circle cx=\"" + fmt(s.x) + "\" cy=\"" + fmt(s.y) + "\" r=\"" + fmt(dot_r) +
             "\"/>\n";
    svg += "</g>\n";
  }

  if (vd) {
    svg += "<g id=\"voronoi\" stroke=\"#888888\" stroke-width=\"" + fmt(thin_w) + "\">\n";
    for (const auto& e : vd->edges)
      svg += "<line x1=\"" + fmt(e.seg.a.x) + "\" y1=\"" + fmt(e.seg.a.y) + "\" x2=\"" +
             fmt(e.seg.b.x) + "\" y2=\"" + fmt(e.seg.b.y) + "\"/>\n";
    svg += "</g>\n";
  }

  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace givp
