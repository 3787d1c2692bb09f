#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "surfstokes/study.hpp"

namespace {

// "A..B" or a single level "A".
std::pair<int, int> parse_levels(const std::string& spec) {
  const auto dots = spec.find("..");
  if (dots == std::string::npos) {
    const int l = std::stoi(spec);
    return {l, l};
  }
  return {std::stoi(spec.substr(0, dots)), std::stoi(spec.substr(dots + 2))};
}

void apply_thread_env() {
  if (const char* env = std::getenv("SURFSTOKES_NUM_THREADS"))
    Eigen::setNbThreads(std::atoi(env));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surface Stokes solver with tangential H(div)-conforming MINI elements"};
  app.require_subcommand(1);
  apply_thread_env();

  std::string surface_spec = "ellipsoid:1.1,1.2,1.3";
  std::string levels_spec = "1..5";
  std::string fh_mode = "piola";
  std::string solver_method = "direct";
  int quad_degree = 6;
  double solver_tol = 1e-10;
  std::string csv_path, json_path, off_path;

  CLI::App* study = app.add_subcommand("study", "Run a refinement study");
  study->add_option("--surface", surface_spec, "sphere:R or ellipsoid:A,B,C");
  study->add_option("--levels", levels_spec, "inclusive range, e.g. 1..5");
  study->add_option("--fh-mode", fh_mode, "piola | projected")
      ->check(CLI::IsMember({"piola", "projected"}));
  study->add_option("--quad-degree", quad_degree, "2, 4 or 6");
  study->add_option("--solver", solver_method, "direct | iterative")
      ->check(CLI::IsMember({"direct", "iterative"}));
  study->add_option("--tol", solver_tol, "solver residual tolerance");
  study->add_option("--csv", csv_path, "CSV output path");
  study->add_option("--json", json_path, "JSON output path");
  study->add_option("--export-off", off_path, "OFF export path prefix");

  std::string suite = "all";
  std::string check_levels = "1..3";
  std::string check_json;
  CLI::App* check = app.add_subcommand("check", "Run verification suites");
  check->add_option("--suite", suite, "geometry|conformity|interpolant|infsup|all")
      ->check(CLI::IsMember({"geometry", "conformity", "interpolant", "infsup", "all"}));
  check->add_option("--surface", surface_spec, "sphere:R or ellipsoid:A,B,C");
  check->add_option("--levels", check_levels, "inclusive range");
  check->add_option("--level", check_levels, "single level (same as --levels N)");
  check->add_option("--json", check_json, "write the verdicts to a file");

  std::string off_out = "mesh.off";
  int export_level = 3;
  CLI::App* export_mesh = app.add_subcommand("export-mesh", "Write an OFF mesh");
  export_mesh->add_option("--surface", surface_spec, "sphere:R or ellipsoid:A,B,C");
  export_mesh->add_option("--level", export_level, "refinement level");
  export_mesh->add_option("--out", off_out, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (study->parsed()) {
      surfstokes::StudyConfig config;
      config.surface = surfstokes::parse_surface(surface_spec);
      std::tie(config.level_min, config.level_max) = parse_levels(levels_spec);
      config.fh_mode = fh_mode == "projected"
                           ? surfstokes::ExactSolution::ForcingMode::Projected
                           : surfstokes::ExactSolution::ForcingMode::Piola;
      config.quadrature_degree = quad_degree;
      config.solver.method = solver_method == "iterative"
                                 ? surfstokes::SolverOptions::Method::Iterative
                                 : surfstokes::SolverOptions::Method::Direct;
      config.solver.tol = solver_tol;
      config.csv_path = csv_path;
      config.json_path = json_path;
      config.off_path = off_path;

      const surfstokes::StudyResult result = surfstokes::run_study(config);
      std::cout << result.csv();
      return 0;
    }

    if (check->parsed()) {
      const surfstokes::LevelSetSurface surface = surfstokes::parse_surface(surface_spec);
      const auto [lo, hi] = parse_levels(check_levels);
      const auto reports = surfstokes::run_checks(suite, surface, lo, hi);
      bool ok = true;
      std::string all_json = "[";
      for (std::size_t i = 0; i < reports.size(); ++i) {
        std::cout << reports[i].json() << '\n';
        all_json += reports[i].json();
        if (i + 1 < reports.size()) all_json += ",";
        ok = ok && reports[i].passed;
      }
      all_json += "]";
      if (!check_json.empty()) {
        std::ofstream os(check_json);
        os << all_json << '\n';
      }
      return ok ? 0 : 1;
    }

    if (export_mesh->parsed()) {
      const surfstokes::LevelSetSurface surface = surfstokes::parse_surface(surface_spec);
      const surfstokes::SurfaceMesh mesh = surfstokes::generate(surface, export_level);
      std::ofstream os(off_out);
      mesh.write_off(os);
      std::cout << "wrote " << off_out << " (" << mesh.n_vertices() << " vertices, "
                << mesh.n_faces() << " faces)\n";
      return 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
  return 0;
}
