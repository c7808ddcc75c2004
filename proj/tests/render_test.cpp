#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "givp/render.hpp"
#include "givp/solver.hpp"
#include "givp/verify.hpp"

using namespace givp;

namespace {

Pslg triangle(double side = 4.0) {
  std::vector<Point> v = {{0.0, 0.0}, {side, 0.0}, {side / 2.0, side * std::sqrt(3.0) / 2.0}};
  return build_pslg(v, {{0, 1}, {1, 2}, {0, 2}});
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_occurrences(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos;
       at = hay.find(needle, at + needle.size()))
    ++n;
  return n;
}

const char* kGolden = GIVP_TEST_DATA_DIR "/triangle_sequential.svg";

}  // namespace

TEST_CASE("solution render is deterministic and matches the golden file") {
  Pslg g = triangle();
  Solution sol = solve(g, SolverConfig{});
  std::string svg = render_svg(g, &sol, nullptr);
  CHECK(svg == render_svg(g, &sol, nullptr));

  CHECK(count_occurrences(svg, "<g id=") == 4);
  CHECK(svg.find("id=\"input-edges\"") != std::string::npos);
  CHECK(svg.find("id=\"initial-circles\"") != std::string::npos);
  CHECK(svg.find("id=\"cover-circles\"") != std::string::npos);
  CHECK(svg.find("id=\"sites\"") != std::string::npos);
  CHECK(svg.find("id=\"voronoi\"") == std::string::npos);
  CHECK(svg.find("x1=\"0.000000\"") != std::string::npos);

  // one vertex circle per triangle corner, one line per edge, one dot per site
  CHECK(count_occurrences(svg, "<line ") == 3);
  CHECK(count_occurrences(svg, "<circle ") ==
        3 + sol.report.counts.cover_circles + static_cast<int>(sol.sites.size()));

  if (!std::filesystem::exists(kGolden)) {
    std::ofstream out(kGolden, std::ios::binary);
    REQUIRE(out);
    out << svg;
    MESSAGE("golden file established at first build");
  }
  CHECK(svg == slurp(kGolden));
}

TEST_CASE("graph-only render has a single layer") {
  Pslg g = triangle();
  std::string svg = render_svg(g, nullptr, nullptr);
  CHECK(count_occurrences(svg, "<g id=") == 1);
  CHECK(svg.find("id=\"input-edges\"") != std::string::npos);
  CHECK(count_occurrences(svg, "<line ") == 3);
}

TEST_CASE("voronoi overlay adds a layer of diagram edges") {
  Pslg g = triangle();
  Solution sol = solve(g, SolverConfig{});
  VoronoiDiagram vd = brute_force_voronoi(sol.sites, verification_box(g));
  std::string svg = render_svg(g, &sol, &vd);
  CHECK(count_occurrences(svg, "<g id=") == 5);
  CHECK(svg.find("id=\"voronoi\"") != std::string::npos);
  CHECK(count_occurrences(svg, "<line ") == 3 + static_cast<int>(vd.edges.size()));
}

TEST_CASE("render rejects unusable input") {
  Pslg g = triangle();
  RenderOptions bad;
  bad.width = 0.0;
  CHECK_THROWS_AS(render_svg(g, nullptr, nullptr, bad), std::invalid_argument);
  Pslg empty;
  CHECK_THROWS_AS(render_svg(empty, nullptr, nullptr), std::invalid_argument);
}
