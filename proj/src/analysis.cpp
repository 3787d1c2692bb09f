#include "surfstokes/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <cmath>

namespace surfstokes {

Vec3 LiftedExact::value(const SurfaceMesh& mesh, int face, const Vec3& x) const {
  const SurfacePointData spd = closest_point(*surface_, x);
  return piola_inverse(mesh.face_geometry[face].nu, spd, exact_->velocity(spd.p));
}

Mat3 LiftedExact::gradient(const SurfaceMesh& mesh, int face, const Vec3& x) const {
  const FaceGeometry& fg = mesh.face_geometry[face];
  const auto [t1, t2] = tangent_frame(fg.nu);
  const double step = fd_step_factor_ * fg.diam;
  Mat3 grad = Mat3::Zero();
  for (const Vec3& t : {t1, t2}) {
    const Vec3 dv =
        (value(mesh, face, x + step * t) - value(mesh, face, x - step * t)) /
        (2.0 * step);
    grad += dv * t.transpose();
  }
  const Mat3 Pi = Mat3::Identity() - fg.nu * fg.nu.transpose();
  return Pi * grad * Pi;
}

double LiftedExact::pressure(const Vec3& x) const {
  return exact_->pressure(closest_point(*surface_, x).p);
}

ErrorReport error_norms(const SurfaceMesh& mesh, const DofMap& dofs,
                        const Eigen::VectorXd& velocity,
                        const std::optional<Eigen::VectorXd>& pressure,
                        const ReferenceField& reference, int quadrature_degree) {
  const QuadratureRule quad = QuadratureRule::make(quadrature_degree);
  ErrorReport rep;
  rep.level = mesh.level;
  rep.h = mesh.max_edge();
  rep.dof_velocity = dofs.velocity_dofs();
  rep.dof_pressure = dofs.pressure_dofs();

  const bool with_pressure = pressure.has_value() && reference.pressure;

  // Mean of the reference pressure over the mesh (subtracted before
  // comparing; the discrete pressure is mean-zero).
  double pres_mean = 0.0;
  if (with_pressure) {
    double integral = 0.0, area = 0.0;
    for (int k = 0; k < mesh.n_faces(); ++k) {
      const double jac = mesh.face_geometry[k].J;
      for (std::size_t q = 0; q < quad.size(); ++q) {
        const Vec3 x = mesh.face_point(k, quad.points[q][0], quad.points[q][1]);
        integral += quad.weights[q] * jac * reference.pressure(k, x);
        area += quad.weights[q] * jac;
      }
    }
    pres_mean = integral / area;
  }

  double l2v = 0.0, h1semi = 0.0, l2p = 0.0;
  const VelocityField vel{&mesh, &dofs, &velocity};
  for (int k = 0; k < mesh.n_faces(); ++k) {
    const double jac = mesh.face_geometry[k].J;
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const double xi = quad.points[q][0], eta = quad.points[q][1];
      const double w = quad.weights[q] * jac;
      const Vec3 x = mesh.face_point(k, xi, eta);

      const Vec3 dv = vel.value(k, xi, eta) - reference.velocity(k, x);
      l2v += w * dv.squaredNorm();
      const Mat3 dg = vel.gradient(k, xi, eta) - reference.velocity_gradient(k, x);
      h1semi += w * dg.squaredNorm();

      if (with_pressure) {
        const PressureField ph{&mesh, &*pressure};
        const double dp = ph.value(k, xi, eta) - (reference.pressure(k, x) - pres_mean);
        l2p += w * dp * dp;
      }
    }
  }
  rep.e_l2_vel = std::sqrt(l2v);
  rep.e_h1_vel = std::sqrt(l2v + h1semi);
  rep.e_l2_pres = std::sqrt(l2p);
  rep.e_energy = rep.e_h1_vel + rep.e_l2_pres;
  return rep;
}

Eigen::VectorXd interpolate(const LevelSetSurface& surface,
                            const SurfaceMesh& mesh, const DofMap& dofs,
                            const std::function<Vec3(const Vec3&)>& field_on_surface) {
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(dofs.velocity_dofs());
  for (int a = 0; a < mesh.n_vertices(); ++a) {
    const Vec3& nu_master = mesh.face_geometry[dofs.master_face[a]].nu;
    const SurfacePointData spd = closest_point(surface, mesh.vertices[a]);
    const Vec3 breve = piola_inverse(nu_master, spd, field_on_surface(spd.p));
    coeffs[dofs.vertex_dof(a, 0)] = breve.dot(dofs.frame1[a]);
    coeffs[dofs.vertex_dof(a, 1)] = breve.dot(dofs.frame2[a]);
  }
  return coeffs;
}

double mu_deviation_constant(const LevelSetSurface& surface,
                             const SurfaceMesh& mesh, int quadrature_degree) {
  const QuadratureRule quad = QuadratureRule::make(quadrature_degree);
  const double h2 = mesh.max_edge() * mesh.max_edge();
  double worst = 0.0;
  for (int k = 0; k < mesh.n_faces(); ++k) {
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Vec3 x = mesh.face_point(k, quad.points[q][0], quad.points[q][1]);
      const double mu = measure_ratio(mesh.face_geometry[k].nu,
                                      closest_point(surface, x));
      worst = std::max(worst, std::abs(1.0 - mu));
    }
  }
  return worst / h2;
}

double transfer_defect_constant(const LevelSetSurface& surface,
                                const SurfaceMesh& mesh, const DofMap& dofs,
                                const std::function<Vec3(const Vec3&)>& field) {
  const double h2 = mesh.max_edge() * mesh.max_edge();
  double worst = 0.0;
  for (int a = 0; a < mesh.n_vertices(); ++a) {
    const SurfacePointData spd = closest_point(surface, mesh.vertices[a]);
    const Vec3 u = field(spd.p);
    const double unorm = u.norm();
    if (unorm < 1e-12) continue;  // defect scales linearly with |u|
    const Vec3& nu_master = mesh.face_geometry[dofs.master_face[a]].nu;
    const Vec3 breve_master = piola_inverse(nu_master, spd, u);
    for (int k : mesh.vertex_stars[a]) {
      const Vec3& nu_K = mesh.face_geometry[k].nu;
      const Vec3 breve_K = piola_inverse(nu_K, spd, u);
      const Vec3 defect = breve_K - edge_transfer(nu_master, nu_K) * breve_master;
      worst = std::max(worst, defect.norm() / (h2 * unorm));
    }
  }
  return worst;
}

double distance_constant(const LevelSetSurface& surface, const SurfaceMesh& mesh) {
  double worst = 0.0;
  for (int k = 0; k < mesh.n_faces(); ++k) {
    const double hk = mesh.face_geometry[k].diam;
    const SurfacePointData spd = closest_point(surface, mesh.face_centroid(k));
    worst = std::max(worst, std::abs(spd.d) / (hk * hk));
  }
  return worst;
}

double normal_deviation_constant(const LevelSetSurface& surface,
                                 const SurfaceMesh& mesh) {
  const double h = mesh.max_edge();
  double worst = 0.0;
  for (int k = 0; k < mesh.n_faces(); ++k) {
    const SurfacePointData spd = closest_point(surface, mesh.face_centroid(k));
    worst = std::max(worst, (spd.nu - mesh.face_geometry[k].nu).norm() / h);
  }
  return worst;
}

double infsup_constant(const SaddleSystem& sys) {
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> a_chol(sys.A);
  if (a_chol.info() != Eigen::Success)
    throw SolverBreakdown("infsup_constant: A is not positive definite");
  const Eigen::MatrixXd Bt = Eigen::MatrixXd(sys.B).transpose();
  const Eigen::MatrixXd S = Bt.transpose() * a_chol.solve(Bt);
  const Eigen::MatrixXd Mp = Eigen::MatrixXd(sys.Mp);

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      0.5 * (S + S.transpose()), 0.5 * (Mp + Mp.transpose()));
  if (eig.info() != Eigen::Success)
    throw SolverBreakdown("infsup_constant: eigensolve failed");
  // The constant-pressure mode contributes the (near) zero eigenvalue.
  return std::sqrt(eig.eigenvalues()[1]);
}

double a_min_eigenvalue(const SaddleSystem& sys) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Eigen::MatrixXd(sys.A));
  return eig.eigenvalues()[0];
}

namespace {

// Deformation of the Piola-forward field at a surface point reached from face
// point x: central differences along the surface through the closed-form
// per-face inverse projection.
Mat3 lifted_deformation(const LevelSetSurface& surface, const SurfaceMesh& mesh,
                        const DofMap& dofs, const Eigen::VectorXd& velocity,
                        int face, const Vec3& x, double step) {
  const VelocityField vel{&mesh, &dofs, &velocity};
  const FaceGeometry& fg = mesh.face_geometry[face];

  auto forward_at = [&](const Vec3& y) {
    // Face-plane point projecting to y: y + t nu(y) with t solving the plane
    // equation; then the Piola transform of the discrete field there.
    const Vec3 nu_y = surface.grad_psi(y).normalized();
    const double t = (fg.base - y).dot(fg.nu) / (nu_y.dot(fg.nu));
    const Vec3 xk = y + t * nu_y;
    const Vec2 ref = mesh.reference_coordinates(face, xk);
    const SurfacePointData spd = closest_point(surface, xk);
    return Vec3(piola_forward(fg.nu, spd, vel.value(face, ref[0], ref[1])));
  };

  const SurfacePointData spd0 = closest_point(surface, x);
  const auto [t1, t2] = tangent_frame(spd0.nu);
  Mat3 grad = Mat3::Zero();
  for (const Vec3& t : {t1, t2}) {
    const Vec3 yp = closest_point(surface, spd0.p + step * t).p;
    const Vec3 ym = closest_point(surface, spd0.p - step * t).p;
    const Vec3 dv = (forward_at(yp) - forward_at(ym)) / (2.0 * step);
    grad += dv * t.transpose();
  }
  const Mat3 Pi = Mat3::Identity() - spd0.nu * spd0.nu.transpose();
  const Mat3 g = Pi * grad * Pi;
  return 0.5 * (g + g.transpose());
}

}  // namespace

double deformation_transfer_ratio(const LevelSetSurface& surface,
                                  const SurfaceMesh& mesh, const DofMap& dofs,
                                  const Eigen::VectorXd& velocity,
                                  int subdivision) {
  const VelocityField vel{&mesh, &dofs, &velocity};
  const int n = 1 << subdivision;
  double num = 0.0;

  for (int k = 0; k < mesh.n_faces(); ++k) {
    const FaceGeometry& fg = mesh.face_geometry[k];
    const double step = 1e-4 * fg.diam;
    // Sub-triangles of the reference triangle; centroid value times the area
    // of the projected flat sub-triangle.
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n - i; ++j) {
        for (int up = 0; up < 2; ++up) {
          if (up && j >= n - i - 1) continue;
          Vec2 c0(static_cast<double>(i) / n, static_cast<double>(j) / n);
          Vec2 e1(1.0 / n, 0.0), e2(0.0, 1.0 / n);
          Vec2 r0 = up ? c0 + e1 + e2 : c0;
          Vec2 r1 = up ? c0 + e2 : c0 + e1;
          Vec2 r2 = up ? c0 + e1 : c0 + e2;
          const Vec3 y0 = closest_point(surface, mesh.face_point(k, r0[0], r0[1])).p;
          const Vec3 y1 = closest_point(surface, mesh.face_point(k, r1[0], r1[1])).p;
          const Vec3 y2 = closest_point(surface, mesh.face_point(k, r2[0], r2[1])).p;
          const double area = 0.5 * ((y1 - y0).cross(y2 - y0)).norm();

          const Vec2 rc = (r0 + r1 + r2) / 3.0;
          const Vec3 xc = mesh.face_point(k, rc[0], rc[1]);
          const Mat3 def_lifted =
              lifted_deformation(surface, mesh, dofs, velocity, k, xc, step);
          const Mat3 def_mesh = deformation(vel.gradient(k, rc[0], rc[1]));
          num += area * (def_lifted - def_mesh).squaredNorm();
        }
      }
    }
  }

  // ||v||_{H1_h} through the quadrature of value and gradient squares.
  const QuadratureRule quad = QuadratureRule::make(6);
  double h1 = 0.0;
  for (int k = 0; k < mesh.n_faces(); ++k) {
    const double jac = mesh.face_geometry[k].J;
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const double xi = quad.points[q][0], eta = quad.points[q][1];
      h1 += quad.weights[q] * jac *
            (vel.value(k, xi, eta).squaredNorm() +
             vel.gradient(k, xi, eta).squaredNorm());
    }
  }
  return std::sqrt(num) / (mesh.max_edge() * std::sqrt(h1));
}

double conformity_max_jump(const SurfaceMesh& mesh, const DofMap& dofs,
                           const Eigen::VectorXd& velocity) {
  const auto frames = build_edge_frames(mesh);
  const VelocityField vel{&mesh, &dofs, &velocity};
  double worst = 0.0, scale = 0.0;
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const SurfaceMesh::Edge& edge = mesh.edges[e];
    const Vec3& p0 = mesh.vertices[edge.v0];
    const Vec3& p1 = mesh.vertices[edge.v1];
    for (double s : {0.0, 0.5, 1.0}) {
      const Vec3 x = (1.0 - s) * p0 + s * p1;
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
  return scale > 0.0 ? worst / scale : worst;
}

double tangency_max(const SurfaceMesh& mesh, const DofMap& dofs,
                    const Eigen::VectorXd& velocity, int quadrature_degree) {
  const QuadratureRule quad = QuadratureRule::make(quadrature_degree);
  const VelocityField vel{&mesh, &dofs, &velocity};
  double worst = 0.0, scale = 0.0;
  for (int k = 0; k < mesh.n_faces(); ++k) {
    const Vec3& nu = mesh.face_geometry[k].nu;
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Vec3 v = vel.value(k, quad.points[q][0], quad.points[q][1]);
      worst = std::max(worst, std::abs(v.dot(nu)));
      scale = std::max(scale, v.norm());
    }
  }
  return scale > 0.0 ? worst / scale : worst;
}

}  // namespace surfstokes
