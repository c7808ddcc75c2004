#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "givp/pslg.hpp"
#include "givp/render.hpp"
#include "givp/solver.hpp"
#include "givp/stats.hpp"
#include "givp/tessgen.hpp"
#include "givp/verify.hpp"

namespace {

using namespace givp;

constexpr int kBruteForceSiteCap = 5000;
constexpr double kPi = 3.14159265358979323846;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Variant parse_variant(const std::string& s) {
  if (s != "naive" && s != "sequential" && s != "recursive")
    throw std::invalid_argument("unknown variant '" + s +
                                "' (expected one of: naive, sequential, recursive)");
  return variant_from_string(s);
}

int run_gen(std::uint64_t seed, int points, int attempts,
            const std::vector<double>& lo, const std::vector<double>& hi,
            const std::string& out) {
  TessGenConfig cfg;
  cfg.seed = seed;
  cfg.n_points = points;
  cfg.n_edge_attempts = attempts;
  cfg.box = {{lo[0], lo[1]}, {hi[0], hi[1]}};
  Pslg g = generate(cfg);
  save_pslg(g, out);
  std::printf("vertices=%zu edges=%zu regions=%d\n", g.vertices.size(), g.edges.size(),
              g.num_bounded_faces());
  return 0;
}

int run_solve(const std::string& input, const std::string& variant, double safety,
              std::optional<double> eps_override, const std::string& out) {
  SolverConfig cfg;
  cfg.variant = parse_variant(variant);
  cfg.safety = safety;
  cfg.epsilon_override = eps_override;
  Pslg g = load_pslg(input);
  Solution sol = solve(g, cfg);
  save_solution(sol, out);
  std::printf("sites=%d pairs=%d initial_circles=%d cover_circles=%d epsilon=%s variant=%s\n",
              sol.report.counts.sites, sol.report.counts.pairs,
              sol.report.counts.initial_circles, sol.report.counts.cover_circles,
              num(sol.report.epsilon).c_str(), to_string(sol.report.variant).c_str());
  return 0;
}

int run_verify(const std::string& pslg_path, const std::string& sol_path,
               const std::string& mode, double tol_rel, int samples) {
  Pslg g = load_pslg(pslg_path);
  Solution sol = load_solution(sol_path);
  const bool all = mode == "all";
  bool ok = true;

  if (all || mode == "certificate") {
    CheckReport r = exact_guard_check(g, sol);
    std::printf("certificate: %s\n", r.pass ? "PASS" : ("FAIL " + r.message).c_str());
    ok = ok && r.pass;
  }
  if (all || mode == "bruteforce") {
    if (sol.sites.size() > kBruteForceSiteCap)
      throw std::runtime_error(
          "brute-force mode on " + std::to_string(sol.sites.size()) +
          " sites exceeds the " + std::to_string(kBruteForceSiteCap) +
          "-site cap; use --mode certificate instead");
    VoronoiDiagram vd = brute_force_voronoi(sol.sites, verification_box(g));
    CheckReport r = edge_coverage_check(g, vd, tol_rel * g.bbox_diag, sol.report.epsilon);
    std::printf("bruteforce: %s\n", r.pass ? "PASS" : ("FAIL " + r.message).c_str());
    ok = ok && r.pass;
  }
  if (all || mode == "sampled") {
    CheckReport r = sampled_nearest_pair_check(g, sol, samples);
    std::printf("sampled: %s\n", r.pass ? "PASS" : ("FAIL " + r.message).c_str());
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

int run_render(const std::string& pslg_path, const std::string& sol_path, bool voronoi,
               double width, const std::string& out) {
  Pslg g = load_pslg(pslg_path);
  std::optional<Solution> sol;
  if (!sol_path.empty()) sol = load_solution(sol_path);
  std::optional<VoronoiDiagram> vd;
  if (voronoi) {
    if (!sol) throw std::invalid_argument("--voronoi needs --solution to supply sites");
    if (sol->sites.size() > kBruteForceSiteCap)
      throw std::runtime_error("--voronoi on " + std::to_string(sol->sites.size()) +
                               " sites exceeds the " + std::to_string(kBruteForceSiteCap) +
                               "-site cap");
    vd = brute_force_voronoi(sol->sites, verification_box(g));
  }
  RenderOptions opt;
  opt.width = width;
  std::string svg = render_svg(g, sol ? &*sol : nullptr, vd ? &*vd : nullptr, opt);
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + out);
  f << svg;
  if (!f) throw std::runtime_error("write failed for " + out);
  return 0;
}

void append_summary_rows(CsvTable& t) {
  CsvTable data = t;  // all rows are data rows at this point
  std::vector<std::string> med{"MED"}, avg{"AVG"}, std_row{"STD"};
  for (std::size_t c = 1; c < t.header.size(); ++c) {
    Summary s = summary(numeric_column(data, t.header[c]));
    med.push_back(num(s.median));
    avg.push_back(num(s.mean));
    std_row.push_back(num(s.stddev));
  }
  t.rows.push_back(med);
  t.rows.push_back(avg);
  t.rows.push_back(std_row);
}

void print_histogram(const Series& s) {
  Histogram h = histogram(s, 20);
  std::string counts;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    if (i) counts += ",";
    counts += std::to_string(h.counts[i]);
  }
  std::printf("histogram %s: lo=%s hi=%s counts=[%s]\n", s.label.c_str(),
              num(h.lo).c_str(), num(h.hi).c_str(), counts.c_str());
}

int run_experiment(int runs, std::uint64_t seed, int min_points, int max_points,
                   int min_attempts, int max_attempts, double safety,
                   const std::string& csv_out) {
  if (runs < 1) throw std::invalid_argument("--runs must be >= 1");
  if (min_points > max_points || min_attempts > max_attempts)
    throw std::invalid_argument("ramp bounds out of order");

  CsvTable t;
  t.header = {"run", "vertices", "edges", "regions", "sites_recursive",
              "sites_sequential", "alpha_deg", "epsilon"};
  for (int i = 0; i < runs; ++i) {
    const double f = runs == 1 ? 0.0 : static_cast<double>(i) / (runs - 1);
    TessGenConfig gc;
    gc.seed = seed + static_cast<std::uint64_t>(i);
    gc.n_points = min_points + static_cast<int>(std::lround(f * (max_points - min_points)));
    gc.n_edge_attempts =
        min_attempts + static_cast<int>(std::lround(f * (max_attempts - min_attempts)));
    Pslg g = generate(gc);

    SolverConfig sc;
    sc.safety = safety;
    sc.variant = Variant::sequential;
    Solution seq = solve(g, sc);
    sc.variant = Variant::recursive;
    Solution rec = solve(g, sc);

    for (const Solution* sol : {&seq, &rec}) {
      CheckReport r = exact_guard_check(g, *sol);
      if (!r.pass)
        throw std::runtime_error("run " + std::to_string(i + 1) + " (seed " +
                                 std::to_string(gc.seed) + ", " +
                                 to_string(sol->report.variant) +
                                 ") failed certificate: " + r.message);
    }

    t.rows.push_back({std::to_string(i + 1), std::to_string(g.vertices.size()),
                      std::to_string(g.edges.size()),
                      std::to_string(g.num_bounded_faces()),
                      std::to_string(rec.report.counts.sites),
                      std::to_string(seq.report.counts.sites),
                      num(seq.report.alpha * 180.0 / kPi), num(seq.report.epsilon)});
    std::printf("run %d: points=%d attempts=%d vertices=%zu edges=%zu sites_seq=%d sites_rec=%d\n",
                i + 1, gc.n_points, gc.n_edge_attempts, g.vertices.size(), g.edges.size(),
                seq.report.counts.sites, rec.report.counts.sites);
  }

  Series edges = numeric_column(t, "edges");
  Series alpha = numeric_column(t, "alpha_deg");
  Series eps = numeric_column(t, "epsilon");
  Series srec = numeric_column(t, "sites_recursive");
  Series sseq = numeric_column(t, "sites_sequential");

  append_summary_rows(t);
  save_csv(t, csv_out);
  std::printf("wrote %s\n", csv_out.c_str());

  if (runs >= 2) {
    auto corr = [](const Series& a, const Series& b) {
      try {
        return pearson(a, b);
      } catch (const std::invalid_argument&) {
        return std::nan("");
      }
    };
    std::printf("corr(alpha_deg, edges) = %s\n", num(corr(alpha, edges)).c_str());
    std::printf("corr(epsilon, edges) = %s\n", num(corr(eps, edges)).c_str());
    std::printf("corr(alpha_deg, epsilon) = %s\n", num(corr(alpha, eps)).c_str());
    LinFit fs = linfit(edges, sseq);
    std::printf("fit sites_sequential ~ edges: slope=%s intercept=%s\n", num(fs.slope).c_str(),
                num(fs.intercept).c_str());
    LinFit fr = linfit(edges, srec);
    std::printf("fit sites_recursive ~ edges: slope=%s intercept=%s\n", num(fr.slope).c_str(),
                num(fr.intercept).c_str());
  }
  print_histogram(alpha);
  print_histogram(eps);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sentinel-circle guards: place Voronoi sites so a planar subdivision shows up as cell boundaries"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random crossing-split tesselation");
  std::uint64_t gen_seed = 0;
  int gen_points = 50, gen_attempts = 70;
  std::vector<double> gen_lo{0.0, 0.0}, gen_hi{100.0, 100.0};
  std::string gen_out;
  gen->add_option("--seed", gen_seed, "RNG seed")->required();
  gen->add_option("--points", gen_points, "number of seed points (>= 2)");
  gen->add_option("--edge-attempts", gen_attempts, "number of chord insertion attempts");
  gen->add_option("--box-lo", gen_lo, "lower box corner")->expected(2);
  gen->add_option("--box-hi", gen_hi, "upper box corner")->expected(2);
  gen->add_option("--out", gen_out, "output tesselation file")->required();

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "place guard sites for a tesselation");
  std::string solve_in, solve_variant = "sequential", solve_out;
  double solve_safety = 0.995;
  std::optional<double> solve_eps;
  solve_cmd->add_option("input", solve_in, "tesselation file")->required();
  solve_cmd->add_option("--variant", solve_variant, "naive, sequential, or recursive");
  solve_cmd->add_option("--safety", solve_safety, "safety factor in (0, 1)");
  solve_cmd->add_option("--epsilon", solve_eps, "override the pair offset");
  solve_cmd->add_option("--out", solve_out, "output solution file")->required();

  // verify
  auto* ver = app.add_subcommand("verify", "check a solution against its tesselation");
  std::string ver_pslg, ver_sol, ver_mode = "all";
  double ver_tol = 1e-6;
  int ver_samples = 8;
  ver->add_option("pslg", ver_pslg, "tesselation file")->required();
  ver->add_option("solution", ver_sol, "solution file")->required();
  ver->add_option("--mode", ver_mode, "certificate, bruteforce, sampled, or all")
      ->check(CLI::IsMember({"certificate", "bruteforce", "sampled", "all"}));
  ver->add_option("--tol", ver_tol, "coverage tolerance, relative to the bbox diagonal");
  ver->add_option("--samples", ver_samples, "samples per pair interval (sampled mode)");

  // render
  auto* ren = app.add_subcommand("render", "draw a tesselation and optional overlays as SVG");
  std::string ren_pslg, ren_sol, ren_out;
  bool ren_voronoi = false;
  double ren_width = 800.0;
  ren->add_option("pslg", ren_pslg, "tesselation file")->required();
  ren->add_option("--solution", ren_sol, "solution overlay (empty skips the overlay)");
  ren->add_flag("--voronoi", ren_voronoi, "overlay the brute-force Voronoi diagram");
  ren->add_option("--width", ren_width, "SVG pixel width");
  ren->add_option("--out", ren_out, "output SVG file")->required();

  // experiment
  auto* exp = app.add_subcommand("experiment", "batch-run the full pipeline and tabulate statistics");
  int exp_runs = 40;
  std::uint64_t exp_seed = 1;
  int exp_min_pts = 20, exp_max_pts = 120, exp_min_att = 26, exp_max_att = 180;
  double exp_safety = 0.995;
  std::string exp_csv = "experiment.csv";
  exp->add_option("--runs", exp_runs, "number of tesselations");
  exp->add_option("--seed", exp_seed, "master seed; run i uses seed + i");
  exp->add_option("--min-points", exp_min_pts, "points for the first run");
  exp->add_option("--max-points", exp_max_pts, "points for the last run");
  exp->add_option("--min-attempts", exp_min_att, "chord attempts for the first run");
  exp->add_option("--max-attempts", exp_max_att, "chord attempts for the last run");
  exp->add_option("--safety", exp_safety, "safety factor in (0, 1)");
  exp->add_option("--csv", exp_csv, "output CSV path");

  int rc = 0;
  gen->callback([&] { rc = run_gen(gen_seed, gen_points, gen_attempts, gen_lo, gen_hi, gen_out); });
  solve_cmd->callback(
      [&] { rc = run_solve(solve_in, solve_variant, solve_safety, solve_eps, solve_out); });
  ver->callback([&] { rc = run_verify(ver_pslg, ver_sol, ver_mode, ver_tol, ver_samples); });
  ren->callback([&] { rc = run_render(ren_pslg, ren_sol, ren_voronoi, ren_width, ren_out); });
  exp->callback([&] {
    rc = run_experiment(exp_runs, exp_seed, exp_min_pts, exp_max_pts, exp_min_att, exp_max_att,
                        exp_safety, exp_csv);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
