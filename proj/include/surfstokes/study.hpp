#pragma once

#include <string>
#include <vector>

#include "surfstokes/analysis.hpp"

namespace surfstokes {

struct StudyConfig {
  LevelSetSurface surface = LevelSetSurface::ellipsoid(1.1, 1.2, 1.3);
  int level_min = 1;
  int level_max = 5;
  ExactSolution::ForcingMode fh_mode = ExactSolution::ForcingMode::Piola;
  int quadrature_degree = 6;
  SolverOptions solver;
  std::string csv_path;   // empty: do not write
  std::string json_path;  // empty: do not write
  std::string off_path;   // empty: do not export meshes
};

struct StudyResult {
  std::vector<ErrorReport> reports;
  // Rates between consecutive levels; entry i pairs reports[i] with
  // reports[i+1].
  std::vector<double> rate_energy, rate_l2_vel, rate_l2_pres;
  std::vector<double> solver_residuals;  // max blockwise residual per level

  std::string csv() const;
  std::string json() const;
};

/// Surface spec of the form "sphere:R" or "ellipsoid:A,B,C".
LevelSetSurface parse_surface(const std::string& spec);

/// Full pipeline per level: mesh, dofmap, assembly, solve, error norms.
StudyResult run_study(const StudyConfig& config);

// --- verification suites -----------------------------------------------------

struct CheckItem {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool larger_is_better = false;
  bool passed = false;
};

struct CheckReport {
  std::string suite;
  std::vector<CheckItem> items;
  bool passed = true;

  void add(const std::string& name, double value, double threshold,
           bool larger_is_better = false);
  std::string json() const;
};

CheckReport check_geometry(const LevelSetSurface& surface, int level);
CheckReport check_conformity(const LevelSetSurface& surface, int level);
CheckReport check_interpolant(const LevelSetSurface& surface, int level_min,
                              int level_max);
CheckReport check_infsup(const LevelSetSurface& surface, int level_min,
                         int level_max);

std::vector<CheckReport> run_checks(const std::string& suite,
                                    const LevelSetSurface& surface,
                                    int level_min, int level_max);

}  // namespace surfstokes
