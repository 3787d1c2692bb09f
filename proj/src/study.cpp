#include "surfstokes/study.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

namespace surfstokes {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Eigen::VectorXd random_velocity(const DofMap& dofs, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(dofs.velocity_dofs());
  for (int i = 0; i < v.size(); ++i) v[i] = dist(rng);
  return v;
}

}  // namespace

LevelSetSurface parse_surface(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  if (kind == "sphere") {
    double r = 1.0;
    if (colon != std::string::npos)
      r = std::stod(spec.substr(colon + 1));
    if (r <= 0.0) throw std::invalid_argument("sphere radius must be positive");
    return LevelSetSurface::sphere(r);
  }
  if (kind == "ellipsoid") {
    double a = 1.1, b = 1.2, c = 1.3;
    if (colon != std::string::npos) {
      if (std::sscanf(spec.c_str() + colon + 1, "%lf,%lf,%lf", &a, &b, &c) != 3)
        throw std::invalid_argument("expected ellipsoid:A,B,C");
    }
    if (a <= 0.0 || b <= 0.0 || c <= 0.0)
      throw std::invalid_argument("semi-axes must be positive");
    return LevelSetSurface::ellipsoid(a, b, c);
  }
  throw std::invalid_argument("surface must be sphere:R or ellipsoid:A,B,C");
}

StudyResult run_study(const StudyConfig& config) {
  StudyResult result;
  const ExactSolution exact(config.surface);
  const LiftedExact lifted(config.surface, exact);

  for (int level = config.level_min; level <= config.level_max; ++level) {
    const auto t0 = std::chrono::steady_clock::now();

    const SurfaceMesh mesh = generate(config.surface, level);
    const DofMap dofs = build_dofmap(mesh);

    ProblemData data;
    data.momentum_load = [&](int face, const Vec3&, const SurfacePointData& spd) {
      return exact.forcing_on_mesh(mesh.face_geometry[face].nu, spd,
                                   config.fh_mode);
    };
    data.divergence_data = [&](int face, const Vec3&, const SurfacePointData& spd) {
      return exact.divergence_data_on_mesh(mesh.face_geometry[face].nu, spd);
    };
    AssemblyOptions aopts;
    aopts.quadrature_degree = config.quadrature_degree;
    const SaddleSystem sys = assemble(config.surface, mesh, dofs, data, aopts);

    SaddleSolution sol = solve(sys, config.solver);

    ReferenceField ref;
    ref.velocity = [&](int face, const Vec3& x) { return lifted.value(mesh, face, x); };
    ref.velocity_gradient = [&](int face, const Vec3& x) {
      return lifted.gradient(mesh, face, x);
    };
    ref.pressure = [&](int, const Vec3& x) { return lifted.pressure(x); };

    ErrorReport rep = error_norms(mesh, dofs, sol.velocity, sol.pressure, ref,
                                  config.quadrature_degree);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    result.reports.push_back(rep);
    result.solver_residuals.push_back(std::max(
        {sol.residual_momentum, sol.residual_continuity, sol.residual_mean}));

    if (!config.off_path.empty()) {
      std::ofstream off(config.off_path + ".level" + std::to_string(level) + ".off");
      mesh.write_off(off);
    }
  }

  for (std::size_t i = 0; i + 1 < result.reports.size(); ++i) {
    result.rate_energy.push_back(
        eoc(result.reports[i].e_energy, result.reports[i + 1].e_energy));
    result.rate_l2_vel.push_back(
        eoc(result.reports[i].e_l2_vel, result.reports[i + 1].e_l2_vel));
    result.rate_l2_pres.push_back(
        eoc(result.reports[i].e_l2_pres, result.reports[i + 1].e_l2_pres));
  }

  if (!config.csv_path.empty()) {
    std::ofstream os(config.csv_path);
    os << result.csv();
  }
  if (!config.json_path.empty()) {
    std::ofstream os(config.json_path);
    os << result.json() << '\n';
  }
  return result;
}

std::string StudyResult::csv() const {
  std::string out =
      "level,h,dof_v,dof_p,e_energy,e_l2_vel,e_l2_pres,rate_energy,rate_l2_vel,"
      "rate_l2_pres,seconds\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const ErrorReport& r = reports[i];
    out += std::to_string(r.level) + ',' + fmt(r.h) + ',' +
           std::to_string(r.dof_velocity) + ',' + std::to_string(r.dof_pressure) +
           ',' + fmt(r.e_energy) + ',' + fmt(r.e_l2_vel) + ',' + fmt(r.e_l2_pres) +
           ',';
    if (i > 0) {
      out += fmt(rate_energy[i - 1]) + ',' + fmt(rate_l2_vel[i - 1]) + ',' +
             fmt(rate_l2_pres[i - 1]);
    } else {
      out += ",,";
    }
    out += ',' + fmt(r.seconds) + '\n';
  }
  return out;
}

std::string StudyResult::json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const ErrorReport& r = reports[i];
    nlohmann::json row = {{"level", r.level},
                {"h", r.h},
                {"dof_v", r.dof_velocity},
                {"dof_p", r.dof_pressure},
                {"e_energy", r.e_energy},
                {"e_l2_vel", r.e_l2_vel},
                {"e_l2_pres", r.e_l2_pres},
                {"seconds", r.seconds},
                {"solver_residual", solver_residuals[i]}};
    if (i > 0) {
      row["rate_energy"] = rate_energy[i - 1];
      row["rate_l2_vel"] = rate_l2_vel[i - 1];
      row["rate_l2_pres"] = rate_l2_pres[i - 1];
    } else {
      row["rate_energy"] = nullptr;
      row["rate_l2_vel"] = nullptr;
      row["rate_l2_pres"] = nullptr;
    }
    rows.push_back(row);
  }
  return nlohmann::json{{"levels", rows}}.dump(2);
}

void CheckReport::add(const std::string& name, double value, double threshold,
                      bool larger_is_better) {
  CheckItem item;
  item.name = name;
  item.value = value;
  item.threshold = threshold;
  item.larger_is_better = larger_is_better;
  item.passed = larger_is_better ? value >= threshold : value <= threshold;
  passed = passed && item.passed;
  items.push_back(item);
}

std::string CheckReport::json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckItem& item : items) {
    checks.push_back({{"name", item.name},
                      {"value", item.value},
                      {"threshold", item.threshold},
                      {"comparison", item.larger_is_better ? ">=" : "<="},
                      {"passed", item.passed}});
  }
  return nlohmann::json{{"suite", suite}, {"passed", passed}, {"checks", checks}}
      .dump(2);
}

CheckReport check_geometry(const LevelSetSurface& surface, int level) {
  CheckReport report;
  report.suite = "geometry";

  const SurfaceMesh mesh = generate(surface, level);
  const QuadratureRule quad = QuadratureRule::make(6);
  const double diam = surface.diameter();

  double nu_unit = 0.0, h_nu = 0.0, psi_p = 0.0, recon = 0.0, round_trip = 0.0;
  double mu_min = 1e300;
  for (int k = 0; k < mesh.n_faces(); ++k) {
    const Vec3& nu_K = mesh.face_geometry[k].nu;
    const auto [t1, t2] = tangent_frame(nu_K);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Vec3 x = mesh.face_point(k, quad.points[q][0], quad.points[q][1]);
      const SurfacePointData spd = closest_point(surface, x);
      nu_unit = std::max(nu_unit, std::abs(spd.nu.norm() - 1.0));
      h_nu = std::max(h_nu, (spd.H * spd.nu).norm());
      psi_p = std::max(psi_p, std::abs(surface.psi(spd.p)));
      recon = std::max(recon, (x - (spd.p + spd.d * spd.nu)).norm());
      mu_min = std::min(mu_min, measure_ratio(nu_K, spd));

      const Vec3 v = (0.7 * t1 - 1.3 * t2);
      const Vec3 back = piola_inverse(nu_K, spd, piola_forward(nu_K, spd, v));
      round_trip = std::max(round_trip, (back - v).norm() / v.norm());
    }
  }
  report.add("normal_unit_deviation", nu_unit, 1e-14);
  report.add("weingarten_normal_kernel", h_nu, 1e-10);
  report.add("projected_point_on_surface", psi_p, 1e-12 * diam);
  report.add("point_reconstruction", recon, 1e-12 * diam);
  report.add("measure_ratio_positive", mu_min, 0.0, true);
  report.add("piola_round_trip", round_trip, 1e-12);
  report.add("mu_deviation_over_h2", mu_deviation_constant(surface, mesh), 1.0);
  report.add("distance_over_hK2", distance_constant(surface, mesh), 2.0);
  report.add("normal_deviation_over_h", normal_deviation_constant(surface, mesh),
             2.0);
  return report;
}

CheckReport check_conformity(const LevelSetSurface& surface, int level) {
  CheckReport report;
  report.suite = "conformity";
  const SurfaceMesh mesh = generate(surface, level);
  const DofMap dofs = build_dofmap(mesh);
  double worst_jump = 0.0, worst_tan = 0.0;
  for (unsigned trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd v = random_velocity(dofs, 1000 + trial);
    worst_jump = std::max(worst_jump, conformity_max_jump(mesh, dofs, v));
    worst_tan = std::max(worst_tan, tangency_max(mesh, dofs, v));
  }
  report.add("edge_normal_jump", worst_jump, 1e-12);
  report.add("tangency", worst_tan, 1e-12);
  return report;
}

CheckReport check_interpolant(const LevelSetSurface& surface, int level_min,
                              int level_max) {
  CheckReport report;
  report.suite = "interpolant";
  const ExactSolution exact(surface);
  const LiftedExact lifted(surface, exact);
  auto field = [&](const Vec3& p) { return exact.velocity(p); };

  std::vector<double> l2, h1;
  for (int level = level_min; level <= level_max; ++level) {
    const SurfaceMesh mesh = generate(surface, level);
    const DofMap dofs = build_dofmap(mesh);
    const Eigen::VectorXd coeffs = interpolate(surface, mesh, dofs, field);

    ReferenceField ref;
    ref.velocity = [&](int face, const Vec3& x) { return lifted.value(mesh, face, x); };
    ref.velocity_gradient = [&](int face, const Vec3& x) {
      return lifted.gradient(mesh, face, x);
    };
    const ErrorReport rep =
        error_norms(mesh, dofs, coeffs, std::nullopt, ref);
    l2.push_back(rep.e_l2_vel);
    h1.push_back(rep.e_h1_vel);
    report.add("interpolant_jump_level" + std::to_string(level),
               conformity_max_jump(mesh, dofs, coeffs), 1e-12);
  }
  for (std::size_t i = 0; i + 1 < l2.size(); ++i) {
    const std::string pair =
        std::to_string(level_min + static_cast<int>(i)) + "to" +
        std::to_string(level_min + static_cast<int>(i) + 1);
    report.add("interpolant_l2_rate_" + pair + "_low", eoc(l2[i], l2[i + 1]), 1.8,
               true);
    report.add("interpolant_l2_rate_" + pair + "_high", eoc(l2[i], l2[i + 1]), 2.2);
    report.add("interpolant_h1_rate_" + pair + "_low", eoc(h1[i], h1[i + 1]), 0.85,
               true);
    report.add("interpolant_h1_rate_" + pair + "_high", eoc(h1[i], h1[i + 1]), 1.2);
  }
  return report;
}

CheckReport check_infsup(const LevelSetSurface& surface, int level_min,
                         int level_max) {
  CheckReport report;
  report.suite = "infsup";
  std::vector<double> betas;
  for (int level = level_min; level <= level_max; ++level) {
    const SurfaceMesh mesh = generate(surface, level);
    const DofMap dofs = build_dofmap(mesh);
    const SaddleSystem sys = assemble(surface, mesh, dofs, ProblemData{});
    betas.push_back(infsup_constant(sys));
    report.add("beta_level" + std::to_string(level), betas.back(), 0.0, true);
  }
  for (std::size_t i = 0; i + 1 < betas.size(); ++i) {
    const double rel = std::abs(betas[i + 1] - betas[i]) / betas[i];
    report.add("beta_variation_" + std::to_string(level_min + static_cast<int>(i)),
               rel, 0.25);
  }
  return report;
}

std::vector<CheckReport> run_checks(const std::string& suite,
                                    const LevelSetSurface& surface,
                                    int level_min, int level_max) {
  std::vector<CheckReport> reports;
  const bool all = suite == "all";
  if (all || suite == "geometry")
    reports.push_back(check_geometry(surface, std::min(level_max, 3)));
  if (all || suite == "conformity")
    reports.push_back(check_conformity(surface, std::min(level_max, 3)));
  if (all || suite == "interpolant")
    reports.push_back(check_interpolant(surface, std::max(level_min, 2), level_max));
  if (all || suite == "infsup")
    reports.push_back(check_infsup(surface, level_min, std::min(level_max, 3)));
  if (reports.empty())
    throw std::invalid_argument("unknown check suite: " + suite);
  return reports;
}

}  // namespace surfstokes
