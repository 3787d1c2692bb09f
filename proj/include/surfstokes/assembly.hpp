#pragma once

#include <Eigen/Sparse>
#include <functional>

#include "surfstokes/dofmap.hpp"
#include "surfstokes/element.hpp"
#include "surfstokes/geometry.hpp"
#include "surfstokes/mesh.hpp"
#include "surfstokes/quadrature.hpp"

namespace surfstokes {

/// Problem data evaluated at quadrature points. `momentum_load` is the mesh
/// forcing f_h; `divergence_data` is the scaled divergence mu_h (g o p). Null
/// callables mean zero data.
struct ProblemData {
  std::function<Vec3(int face, const Vec3& x, const SurfacePointData& spd)>
      momentum_load;
  std::function<double(int face, const Vec3& x, const SurfacePointData& spd)>
      divergence_data;
};

/// Sparse blocks of the saddle-point system
///   [ A  B^T  0 ] [u]   [F]
///   [ B  0    c ] [p] = [G]
///   [ 0  c^T  0 ] [m]   [0]
/// with A the deformation + mass form, B the (negative) divergence form, and
/// c the pressure integrals enforcing the zero-mean constraint through a
/// scalar multiplier m.
struct SaddleSystem {
  Eigen::SparseMatrix<double> A;   // nv x nv
  Eigen::SparseMatrix<double> B;   // np x nv
  Eigen::SparseMatrix<double> Mp;  // np x np pressure mass (diagnostics)
  Eigen::VectorXd c;               // np
  Eigen::VectorXd F;               // nv
  Eigen::VectorXd G;               // np, shifted to c-mean zero
  int nv = 0;
  int np = 0;

  int total_dim() const { return nv + np + 1; }
  Eigen::SparseMatrix<double> full_matrix() const;
  Eigen::VectorXd full_rhs() const;
};

struct AssemblyOptions {
  int quadrature_degree = 6;
  std::size_t max_dim = 500000;
};

SaddleSystem assemble(const LevelSetSurface& surface, const SurfaceMesh& mesh,
                      const DofMap& dofs, const ProblemData& data,
                      const AssemblyOptions& opts = {});

}  // namespace surfstokes
