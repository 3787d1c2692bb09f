#include "surfstokes/assembly.hpp"

#include <vector>

namespace surfstokes {

Eigen::SparseMatrix<double> SaddleSystem::full_matrix() const {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * A.nonZeros() + 4 * B.nonZeros() + 2 * np);
  for (int k = 0; k < A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it)
      trips.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < B.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(B, k); it; ++it) {
      trips.emplace_back(nv + it.row(), it.col(), it.value());
      trips.emplace_back(it.col(), nv + it.row(), it.value());
    }
  for (int k = 0; k < np; ++k) {
    trips.emplace_back(nv + k, nv + np, c[k]);
    trips.emplace_back(nv + np, nv + k, c[k]);
  }
  Eigen::SparseMatrix<double> K(total_dim(), total_dim());
  K.setFromTriplets(trips.begin(), trips.end());
  return K;
}

Eigen::VectorXd SaddleSystem::full_rhs() const {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(total_dim());
  rhs.head(nv) = F;
  rhs.segment(nv, np) = G;
  return rhs;
}

SaddleSystem assemble(const LevelSetSurface& surface, const SurfaceMesh& mesh,
                      const DofMap& dofs, const ProblemData& data,
                      const AssemblyOptions& opts) {
  SaddleSystem sys;
  sys.nv = dofs.velocity_dofs();
  sys.np = dofs.pressure_dofs();
  if (static_cast<std::size_t>(sys.total_dim()) > opts.max_dim)
    throw AssemblyOverflow("assemble: system dimension exceeds the cap");

  const QuadratureRule quad = QuadratureRule::make(opts.quadrature_degree);

  std::vector<Eigen::Triplet<double>> a_trips, b_trips, mp_trips;
  a_trips.reserve(64 * mesh.n_faces());
  b_trips.reserve(24 * mesh.n_faces());
  mp_trips.reserve(9 * mesh.n_faces());
  sys.c = Eigen::VectorXd::Zero(sys.np);
  sys.F = Eigen::VectorXd::Zero(sys.nv);
  sys.G = Eigen::VectorXd::Zero(sys.np);

  for (int k = 0; k < mesh.n_faces(); ++k) {
    const double jac = mesh.face_geometry[k].J;
    Eigen::Matrix<double, 8, 8> Aloc = Eigen::Matrix<double, 8, 8>::Zero();
    Eigen::Matrix<double, 3, 8> Bloc = Eigen::Matrix<double, 3, 8>::Zero();
    Mat3 Mploc = Mat3::Zero();
    Eigen::Matrix<double, 8, 1> Floc = Eigen::Matrix<double, 8, 1>::Zero();
    Vec3 Gloc = Vec3::Zero();
    Vec3 cloc = Vec3::Zero();
    FaceBasisEval ev;

    for (std::size_t q = 0; q < quad.size(); ++q) {
      const double w = quad.weights[q] * jac;
      const double xi = quad.points[q][0], eta = quad.points[q][1];
      ev = eval_face_basis(mesh, dofs, k, xi, eta);

      std::array<Mat3, 8> defs;
      for (int l = 0; l < 8; ++l) defs[l] = deformation(ev.grad[l]);

      for (int i = 0; i < 8; ++i) {
        for (int j = i; j < 8; ++j) {
          const double val =
              w * (defs[i].cwiseProduct(defs[j]).sum() + ev.value[i].dot(ev.value[j]));
          Aloc(i, j) += val;
          if (j != i) Aloc(j, i) += val;
        }
      }
      for (int r = 0; r < 3; ++r) {
        for (int j = 0; j < 8; ++j) Bloc(r, j) -= w * ev.div[j] * ev.pvalue[r];
        for (int s = 0; s < 3; ++s) Mploc(r, s) += w * ev.pvalue[r] * ev.pvalue[s];
        cloc[r] += w * ev.pvalue[r];
      }

      if (data.momentum_load || data.divergence_data) {
        const Vec3 x = mesh.face_point(k, xi, eta);
        const SurfacePointData spd = closest_point(surface, x);
        if (data.momentum_load) {
          const Vec3 f = data.momentum_load(k, x, spd);
          for (int i = 0; i < 8; ++i) Floc[i] += w * f.dot(ev.value[i]);
        }
        if (data.divergence_data) {
          const double gval = data.divergence_data(k, x, spd);
          for (int r = 0; r < 3; ++r) Gloc[r] -= w * gval * ev.pvalue[r];
        }
      }
    }

    for (int i = 0; i < 8; ++i) {
      sys.F[ev.global[i]] += Floc[i];
      for (int j = 0; j < 8; ++j)
        a_trips.emplace_back(ev.global[i], ev.global[j], Aloc(i, j));
    }
    for (int r = 0; r < 3; ++r) {
      sys.c[ev.pglobal[r]] += cloc[r];
      sys.G[ev.pglobal[r]] += Gloc[r];
      for (int j = 0; j < 8; ++j)
        b_trips.emplace_back(ev.pglobal[r], ev.global[j], Bloc(r, j));
      for (int s = 0; s < 3; ++s)
        mp_trips.emplace_back(ev.pglobal[r], ev.pglobal[s], Mploc(r, s));
    }
  }

  sys.A.resize(sys.nv, sys.nv);
  sys.A.setFromTriplets(a_trips.begin(), a_trips.end());
  // Element matrices are symmetric; the half-sum makes the assembled matrix
  // symmetric to the last bit regardless of duplicate accumulation order.
  sys.A = (0.5 * (sys.A + Eigen::SparseMatrix<double>(sys.A.transpose()))).eval();
  sys.B.resize(sys.np, sys.nv);
  sys.B.setFromTriplets(b_trips.begin(), b_trips.end());
  sys.Mp.resize(sys.np, sys.np);
  sys.Mp.setFromTriplets(mp_trips.begin(), mp_trips.end());

  // Remove the residual c-component of G so the constrained system stays
  // consistent in floating point.
  const double shift = sys.G.dot(sys.c) / sys.c.squaredNorm();
  sys.G -= shift * sys.c;
  return sys;
}

}  // namespace surfstokes
