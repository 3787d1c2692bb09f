#include <doctest.h>

#include "oracles.hpp"
#include "surfstokes/element.hpp"
#include "surfstokes/quadrature.hpp"

using namespace surfstokes;

namespace {
const LevelSetSurface kEllipsoid = LevelSetSurface::ellipsoid(1.1, 1.2, 1.3);

// In-plane central difference of a local basis value along direction t.
Vec3 fd_basis_value(const SurfaceMesh& mesh, const DofMap& dofs, int face, int l,
                    const Vec3& x, const Vec3& t, double h) {
  auto at = [&](const Vec3& y) {
    const Vec2 ref = mesh.reference_coordinates(face, y);
    return eval_face_basis(mesh, dofs, face, ref[0], ref[1]).value[l];
  };
  return (at(x + h * t) - at(x - h * t)) / (2.0 * h);
}
}  // namespace

TEST_CASE("reference bubble vanishes on the boundary and integrates to 1/120") {
  CHECK(ReferenceMini::bubble(0.0, 0.4) == 0.0);
  CHECK(ReferenceMini::bubble(0.7, 0.0) == 0.0);
  CHECK(ReferenceMini::bubble(0.25, 0.75) == doctest::Approx(0.0).epsilon(1e-15));
  const QuadratureRule quad = QuadratureRule::make(6);
  double integral = 0.0;
  for (std::size_t q = 0; q < quad.size(); ++q)
    integral += quad.weights[q] *
                ReferenceMini::bubble(quad.points[q][0], quad.points[q][1]);
  CHECK(integral == doctest::Approx(1.0 / 120.0).epsilon(1e-14));
}

TEST_CASE("vertex basis attains its direction at its own vertex") {
  const SurfaceMesh mesh = generate(kEllipsoid, 1);
  const DofMap dofs = build_dofmap(mesh);
  const double corners[3][2] = {{0, 0}, {1, 0}, {0, 1}};
  for (int k : {0, 33, 61}) {
    for (int slot = 0; slot < 3; ++slot) {
      const FaceBasisEval ev =
          eval_face_basis(mesh, dofs, k, corners[slot][0], corners[slot][1]);
      for (int i = 0; i < 2; ++i) {
        CHECK((ev.value[2 * slot + i] - dofs.vertex_dirs[k][2 * slot + i]).norm() <
              1e-14);
        // the other vertices' bases vanish here
        for (int other = 0; other < 3; ++other)
          if (other != slot)
            CHECK(ev.value[2 * other + i].norm() < 1e-14);
        CHECK(ev.value[6 + i].norm() < 1e-14);  // bubble off at vertices
      }
    }
  }
}

TEST_CASE("bubble basis vanishes at vertices and edge midpoints") {
  const SurfaceMesh mesh = generate(kEllipsoid, 1);
  const DofMap dofs = build_dofmap(mesh);
  const double pts[6][2] = {{0, 0}, {1, 0}, {0, 1}, {0.5, 0}, {0, 0.5}, {0.5, 0.5}};
  for (const auto& p : pts) {
    const FaceBasisEval ev = eval_face_basis(mesh, dofs, 7, p[0], p[1]);
    CHECK(ev.value[6].norm() < 1e-15);
    CHECK(ev.value[7].norm() < 1e-15);
  }
}

TEST_CASE("divergence of vertex bases is constant and matches differences") {
  const SurfaceMesh mesh = generate(kEllipsoid, 2);
  const DofMap dofs = build_dofmap(mesh);
  const int k = 150;
  const auto [t1, t2] = tangent_frame(mesh.face_geometry[k].nu);
  const FaceBasisEval at_a = eval_face_basis(mesh, dofs, k, 0.2, 0.3);
  const FaceBasisEval at_b = eval_face_basis(mesh, dofs, k, 0.6, 0.1);
  for (int l = 0; l < 6; ++l)
    CHECK(at_a.div[l] == doctest::Approx(at_b.div[l]).epsilon(1e-13));

  for (int trial = 0; trial < 5; ++trial) {
    const double xi = oracles::uniform(0.2, 0.5), eta = oracles::uniform(0.2, 0.4);
    const Vec3 x = mesh.face_point(k, xi, eta);
    const FaceBasisEval ev = eval_face_basis(mesh, dofs, k, xi, eta);
    for (int l = 0; l < 8; ++l) {
      const double div_fd =
          t1.dot(fd_basis_value(mesh, dofs, k, l, x, t1, 1e-6)) +
          t2.dot(fd_basis_value(mesh, dofs, k, l, x, t2, 1e-6));
      CHECK(std::abs(ev.div[l] - div_fd) < 1e-6);
    }
  }
}

TEST_CASE("gradlarge: deformation trace equals divergence and matches differences") {
  const SurfaceMesh mesh = generate(kEllipsoid, 1);
  const DofMap dofs = build_dofmap(mesh);
  const QuadratureRule quad = QuadratureRule::make(6);
  const int k = 40;
  const auto [t1, t2] = tangent_frame(mesh.face_geometry[k].nu);
  for (std::size_t q = 0; q < quad.size(); ++q) {
    const double xi = quad.points[q][0], eta = quad.points[q][1];
    const FaceBasisEval ev = eval_face_basis(mesh, dofs, k, xi, eta);
    const Vec3 x = mesh.face_point(k, xi, eta);
    for (int l = 0; l < 8; ++l) {
      const Mat3 def = deformation(ev.grad[l]);
      CHECK((def - def.transpose()).norm() < 1e-15);
      CHECK(std::abs(def.trace() - ev.div[l]) < 1e-13);

      const Vec3 d1 = fd_basis_value(mesh, dofs, k, l, x, t1, 1e-6);
      const Vec3 d2 = fd_basis_value(mesh, dofs, k, l, x, t2, 1e-6);
      const Mat3 grad_fd = d1 * t1.transpose() + d2 * t2.transpose();
      CHECK((deformation(grad_fd) - def).norm() < 1e-6);
    }
  }
}

TEST_CASE("constant tangential fields have zero deformation") {
  const SurfaceMesh mesh = generate(kEllipsoid, 1);
  const DofMap dofs = build_dofmap(mesh);
  const int k = 12;
  const FaceGeometry& fg = mesh.face_geometry[k];
  const auto [t1, t2] = tangent_frame(fg.nu);
  const Vec3 w = 0.4 * t1 - 1.1 * t2;

  // Solve the per-vertex 2-vector coefficients so the linear combination is w
  // at every vertex, hence constant on the face.
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(dofs.velocity_dofs());
  for (int slot = 0; slot < 3; ++slot) {
    const int a = mesh.faces[k][slot];
    Mat32 D;
    D.col(0) = dofs.vertex_dirs[k][2 * slot];
    D.col(1) = dofs.vertex_dirs[k][2 * slot + 1];
    const Vec2 c = (D.transpose() * D).inverse() * (D.transpose() * w);
    coeffs[dofs.vertex_dof(a, 0)] = c[0];
    coeffs[dofs.vertex_dof(a, 1)] = c[1];
  }
  const VelocityField vel{&mesh, &dofs, &coeffs};
  CHECK((vel.value(k, 0.31, 0.27) - w).norm() < 1e-13);
  CHECK(deformation(vel.gradient(k, 0.31, 0.27)).norm() < 1e-12);
  CHECK(std::abs(vel.divergence(k, 0.31, 0.27)) < 1e-12);
}

TEST_CASE("basis values are tangent to their face") {
  const SurfaceMesh mesh = generate(kEllipsoid, 2);
  const DofMap dofs = build_dofmap(mesh);
  const QuadratureRule quad = QuadratureRule::make(6);
  for (int k = 0; k < mesh.n_faces(); k += 7) {
    const Vec3& nu = mesh.face_geometry[k].nu;
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const FaceBasisEval ev =
          eval_face_basis(mesh, dofs, k, quad.points[q][0], quad.points[q][1]);
      for (int l = 0; l < 8; ++l)
        CHECK(std::abs(ev.value[l].dot(nu)) <= 1e-13 * std::max(1.0, ev.value[l].norm()));
    }
  }
}

TEST_CASE("normal component of random discrete fields is edge continuous") {
  const SurfaceMesh mesh = generate(kEllipsoid, 2);
  const DofMap dofs = build_dofmap(mesh);
  const auto frames = build_edge_frames(mesh);
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd coeffs(dofs.velocity_dofs());
  for (int i = 0; i < coeffs.size(); ++i) coeffs[i] = dist(rng);
  const VelocityField vel{&mesh, &dofs, &coeffs};

  double scale = 0.0, worst = 0.0;
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const SurfaceMesh::Edge& edge = mesh.edges[e];
    for (double s : {0.0, 0.5, 1.0}) {
      const Vec3 x = (1.0 - s) * mesh.vertices[edge.v0] + s * mesh.vertices[edge.v1];
      double jump = 0.0;
      const int fs[2] = {edge.f0, edge.f1};
      for (int j = 0; j < 2; ++j) {
        const Vec2 ref = mesh.reference_coordinates(fs[j], x);
        const Vec3 v = vel.value(fs[j], ref[0], ref[1]);
        jump += v.dot(frames[e][j]);
        scale = std::max(scale, v.norm());
      }
      worst = std::max(worst, std::abs(jump));
    }
  }
  CHECK(worst <= 1e-12 * scale);
}
