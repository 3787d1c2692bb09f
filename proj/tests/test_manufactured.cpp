#include <doctest.h>

#include "oracles.hpp"
#include "surfstokes/manufactured.hpp"
#include "surfstokes/mesh.hpp"
#include "surfstokes/quadrature.hpp"

using namespace surfstokes;

namespace {
const LevelSetSurface kEllipsoid = LevelSetSurface::ellipsoid(1.1, 1.2, 1.3);
const ExactSolution kExact(kEllipsoid);

Mat3 projector(const Vec3& y) {
  const Vec3 nu = kEllipsoid.grad_psi(y).normalized();
  return Mat3::Identity() - nu * nu.transpose();
}

// Deformation tensor of the velocity extension as an ambient matrix field,
// built purely from finite differences of the closed-form extension.
Mat3 def_extension_fd(const Vec3& x, double h) {
  auto u = [&](const Vec3& z) { return kExact.velocity(z); };
  const Mat3 J = oracles::fd_jacobian(u, x, h);
  const Mat3 Pi = projector(x);
  const Mat3 A = Pi * J * Pi;
  return 0.5 * (A + A.transpose());
}
}  // namespace

TEST_CASE("velocity is tangential at random surface points") {
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec3 y = oracles::random_surface_point(kEllipsoid);
    const Vec3 nu = kEllipsoid.grad_psi(y).normalized();
    CHECK(std::abs(kExact.velocity(y).dot(nu)) < 1e-13);
  }
}

TEST_CASE("operator identities at random surface points") {
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 y = oracles::random_surface_point(kEllipsoid);
    const SurfaceOperators ops = kExact.surface_ops(y);
    CHECK(std::abs(ops.def_u.trace() - ops.div_u) < 1e-12);
    CHECK((ops.def_u - ops.def_u.transpose()).norm() < 1e-14);
    const Vec3 nu = kEllipsoid.grad_psi(y).normalized();
    CHECK(std::abs(ops.f.dot(nu)) < 1e-10);
    CHECK(std::abs(ops.u.dot(nu)) < 1e-13);
  }
}

TEST_CASE("surface operators agree with the finite difference oracle") {
  auto u = [&](const Vec3& z) { return kExact.velocity(z); };
  auto p = [&](const Vec3& z) { return kExact.pressure(z); };

  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 y = oracles::random_surface_point(kEllipsoid);
    const SurfaceOperators ops = kExact.surface_ops(y);
    const Mat3 Pi = projector(y);

    const Mat3 grad_fd = Pi * oracles::fd_jacobian(u, y, 1e-5) * Pi;
    CHECK((ops.grad_u - grad_fd).norm() < 1e-6);
    CHECK((ops.def_u - 0.5 * (grad_fd + grad_fd.transpose())).norm() < 1e-6);
    CHECK(std::abs(ops.div_u - grad_fd.trace()) < 1e-6);

    const Vec3 gradp_fd = Pi * oracles::fd_gradient(p, y, 1e-5);
    CHECK((ops.grad_p - gradp_fd).norm() < 1e-6);

    // Row-wise surface divergence of the deformation field, fully by nested
    // finite differences of the extension.
    Vec3 divdef_fd;
    for (int i = 0; i < 3; ++i) {
      auto row = [&](const Vec3& z) { return Vec3(def_extension_fd(z, 1e-4).row(i)); };
      const Mat3 grad_row = oracles::fd_jacobian(row, y, 1e-3);
      divdef_fd[i] = (Pi * grad_row * Pi).trace();
    }
    CHECK((ops.div_def_u - divdef_fd).norm() < 1e-6);

    const Vec3 f_fd = -(Pi * divdef_fd) + gradp_fd + u(y);
    CHECK((ops.f - f_fd).norm() < 1e-6);
  }
}

TEST_CASE("pressure and divergence data have zero surface mean") {
  const SurfaceMesh mesh = generate(kEllipsoid, 2);
  double p_integral = 0.0, g_integral = 0.0, area = 0.0;
  for (int k = 0; k < mesh.n_faces(); ++k) {
    const auto& f = mesh.faces[k];
    const Vec3 &A = mesh.vertices[f[0]], &B = mesh.vertices[f[1]],
               &C = mesh.vertices[f[2]];
    p_integral += oracles::projected_patch_integral(
        kEllipsoid, A, B, C, [&](const Vec3& y) { return kExact.pressure(y); }, 2);
    g_integral += oracles::projected_patch_integral(
        kEllipsoid, A, B, C,
        [&](const Vec3& y) { return kExact.surface_ops(y).div_u; }, 2);
    area += oracles::projected_patch_area(kEllipsoid, A, B, C, 2);
  }
  CHECK(std::abs(p_integral) <= 1e-8 * area);
  CHECK(std::abs(g_integral) <= 1e-8 * area);
}

TEST_CASE("mesh forcing is tangent to its face") {
  const SurfaceMesh mesh = generate(kEllipsoid, 2);
  const QuadratureRule quad = QuadratureRule::make(6);
  for (int k = 0; k < mesh.n_faces(); k += 13) {
    const Vec3& nu = mesh.face_geometry[k].nu;
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Vec3 x = mesh.face_point(k, quad.points[q][0], quad.points[q][1]);
      const SurfacePointData spd = closest_point(kEllipsoid, x);
      for (auto mode : {ExactSolution::ForcingMode::Piola,
                        ExactSolution::ForcingMode::Projected}) {
        const Vec3 fh = kExact.forcing_on_mesh(nu, spd, mode);
        CHECK(std::abs(fh.dot(nu)) < 1e-12 * std::max(1.0, fh.norm()));
      }
    }
  }
}

TEST_CASE("the transported forcing converges at second order") {
  std::vector<double> sup;
  const QuadratureRule quad = QuadratureRule::make(2);
  for (int level = 2; level <= 5; ++level) {
    const SurfaceMesh mesh = generate(kEllipsoid, level);
    double worst = 0.0;
    for (int k = 0; k < mesh.n_faces(); ++k) {
      const Vec3& nu = mesh.face_geometry[k].nu;
      for (std::size_t q = 0; q < quad.size(); ++q) {
        const Vec3 x = mesh.face_point(k, quad.points[q][0], quad.points[q][1]);
        const SurfacePointData spd = closest_point(kEllipsoid, x);
        const Vec3 fh = kExact.forcing_on_mesh(nu, spd);
        const Vec3 back = transfer_matrix_m(nu, spd).transpose() * fh;
        worst = std::max(worst, (kExact.surface_ops(spd.p).f - back).norm());
      }
    }
    sup.push_back(worst);
  }
  for (std::size_t i = 0; i + 1 < sup.size(); ++i)
    CHECK(sup[i] / sup[i + 1] >= 3.0);
}

TEST_CASE("the scaled divergence data integrates to zero over the mesh") {
  const SurfaceMesh mesh = generate(kEllipsoid, 3);
  const QuadratureRule quad = QuadratureRule::make(6);
  double integral = 0.0, area = 0.0;
  for (int k = 0; k < mesh.n_faces(); ++k) {
    const double jac = mesh.face_geometry[k].J;
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Vec3 x = mesh.face_point(k, quad.points[q][0], quad.points[q][1]);
      const SurfacePointData spd = closest_point(kEllipsoid, x);
      integral += quad.weights[q] * jac *
                  kExact.divergence_data_on_mesh(mesh.face_geometry[k].nu, spd);
      area += quad.weights[q] * jac;
    }
  }
  CHECK(std::abs(integral) <= 1e-8 * area);
}

TEST_CASE("the forcing satisfies the variational identity") {
  // Assemble a-, b- and load integrals of the exact pair against smooth
  // tangential test fields over the lifted mesh; the residual must vanish to
  // the quadrature tolerance.
  const SurfaceMesh mesh = generate(kEllipsoid, 2);

  std::vector<JetField> tests;
  tests.push_back([](const Jet2Vec3& x) -> Jet2Vec3 {
    return {x[1], x[2], x[0]};
  });
  tests.push_back([](const Jet2Vec3& x) -> Jet2Vec3 {
    return {x[0] * x[0], -x[2], x[1] * x[0]};
  });

  for (const JetField& raw : tests) {
    // tangential projection of the raw field
    JetField v_field = [&raw](const Jet2Vec3& x) -> Jet2Vec3 {
      const std::array<Jet2, 3> g = kEllipsoid.grad_psi_t(x);
      const Jet2 norm = sqrt(dot(g, g));
      const Jet2Vec3 n = {g[0] / norm, g[1] / norm, g[2] / norm};
      const Jet2Vec3 w = raw(x);
      const Jet2 nw = dot(n, w);
      return {w[0] - nw * n[0], w[1] - nw * n[1], w[2] - nw * n[2]};
    };
    auto scalar_zero = [](const Jet2Vec3&) { return Jet2(0.0); };

    double residual = 0.0, scale = 0.0;
    auto integrand = [&](const Vec3& y) {
      const SurfaceOperators uops = kExact.surface_ops(y);
      const SurfaceOperators vops =
          surface_ops_of(kEllipsoid, y, v_field, scalar_zero);
      const double aval = uops.def_u.cwiseProduct(vops.def_u).sum() +
                          uops.u.dot(vops.u);
      const double bval = -vops.div_u * uops.p;
      const double fval = uops.f.dot(vops.u);
      scale = std::max(scale, std::abs(fval));
      return aval + bval - fval;
    };
    for (int k = 0; k < mesh.n_faces(); ++k) {
      const auto& f = mesh.faces[k];
      residual += oracles::projected_patch_integral(
          kEllipsoid, mesh.vertices[f[0]], mesh.vertices[f[1]],
          mesh.vertices[f[2]], integrand, 2);
    }
    CHECK(std::abs(residual) <= 1e-5 * std::max(1.0, scale));
  }
}

TEST_CASE("off-surface points are rejected") {
  CHECK_THROWS_AS(kExact.surface_ops(Vec3(2.0, 0, 0)), OffSurface);
}
