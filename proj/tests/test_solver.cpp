#include <doctest.h>

#include "oracles.hpp"
#include "surfstokes/manufactured.hpp"
#include "surfstokes/solver.hpp"

using namespace surfstokes;

namespace {
const LevelSetSurface kEllipsoid = LevelSetSurface::ellipsoid(1.1, 1.2, 1.3);

SaddleSystem manufactured_system(int level) {
  const SurfaceMesh mesh = generate(kEllipsoid, level);
  const DofMap dofs = build_dofmap(mesh);
  static ExactSolution exact(kEllipsoid);
  ProblemData data;
  data.momentum_load = [&mesh](int face, const Vec3&, const SurfacePointData& spd) {
    return exact.forcing_on_mesh(mesh.face_geometry[face].nu, spd);
  };
  data.divergence_data = [&mesh](int face, const Vec3&, const SurfacePointData& spd) {
    return exact.divergence_data_on_mesh(mesh.face_geometry[face].nu, spd);
  };
  return assemble(kEllipsoid, mesh, dofs, data);
}
}  // namespace

TEST_CASE("zero loads produce the zero solution") {
  const SurfaceMesh mesh = generate(kEllipsoid, 2);
  const DofMap dofs = build_dofmap(mesh);
  const SaddleSystem sys = assemble(kEllipsoid, mesh, dofs, ProblemData{});
  for (auto method : {SolverOptions::Method::Direct, SolverOptions::Method::Iterative}) {
    SolverOptions opts;
    opts.method = method;
    const SaddleSolution sol = solve(sys, opts);
    CHECK(sol.velocity.norm() <= 1e-14);
    CHECK(sol.pressure.norm() <= 1e-14);
    CHECK(std::abs(sol.multiplier) <= 1e-14);
  }
}

TEST_CASE("verified residuals meet the contract on both paths") {
  const SaddleSystem sys = manufactured_system(2);
  for (auto method : {SolverOptions::Method::Direct, SolverOptions::Method::Iterative}) {
    SolverOptions opts;
    opts.method = method;
    const SaddleSolution sol = solve(sys, opts);
    CHECK(sol.residual_momentum <= 1e-10);
    CHECK(sol.residual_continuity <= 1e-10);
    CHECK(sol.residual_mean <= 1e-10);
    CHECK(std::abs(sys.c.dot(sol.pressure)) <= 1e-10 * sol.pressure.norm());
  }
}

TEST_CASE("direct and iterative paths agree") {
  const SaddleSystem sys = manufactured_system(2);
  SolverOptions direct;
  direct.method = SolverOptions::Method::Direct;
  SolverOptions iterative;
  iterative.method = SolverOptions::Method::Iterative;
  const SaddleSolution a = solve(sys, direct);
  const SaddleSolution b = solve(sys, iterative);
  CHECK((a.velocity - b.velocity).norm() <= 1e-8 * a.velocity.norm());
  CHECK((a.pressure - b.pressure).norm() <= 1e-8 * a.pressure.norm());
}

TEST_CASE("level three residual meets the tolerance") {
  const SaddleSystem sys = manufactured_system(3);
  const SaddleSolution sol = solve(sys);
  CHECK(std::max({sol.residual_momentum, sol.residual_continuity,
                  sol.residual_mean}) <= 1e-10);
}

TEST_CASE("perturbing the initial iterate does not move the solution") {
  const SaddleSystem sys = manufactured_system(2);
  SolverOptions opts;
  opts.method = SolverOptions::Method::Iterative;
  const SaddleSolution base = solve(sys, opts);

  Eigen::VectorXd guess(sys.total_dim());
  guess.head(sys.nv) = base.velocity;
  guess.segment(sys.nv, sys.np) = base.pressure;
  guess[sys.nv + sys.np] = base.multiplier;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int i = 0; i < guess.size(); ++i) guess[i] += 0.1 * dist(rng);

  opts.initial_guess = &guess;
  const SaddleSolution perturbed = solve(sys, opts);
  CHECK((perturbed.velocity - base.velocity).norm() <=
        1e-8 * std::max(1.0, base.velocity.norm()));
  CHECK((perturbed.pressure - base.pressure).norm() <=
        1e-8 * std::max(1.0, base.pressure.norm()));
}

TEST_CASE("dimension cap raises a breakdown error") {
  const SaddleSystem sys = manufactured_system(1);
  SolverOptions opts;
  opts.max_dim = 10;
  CHECK_THROWS_AS(solve(sys, opts), SolverBreakdown);
}
