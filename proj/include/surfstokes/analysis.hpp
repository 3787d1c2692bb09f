#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "surfstokes/assembly.hpp"
#include "surfstokes/manufactured.hpp"
#include "surfstokes/solver.hpp"

namespace surfstokes {

/// Evaluator for the inverse-Piola pull of the exact velocity onto the mesh
/// and the extended exact pressure. The tangential gradient is in-plane
/// central differences projected with the face projector (step scale relative
/// to the face diameter).
class LiftedExact {
 public:
  LiftedExact(const LevelSetSurface& surface, const ExactSolution& exact,
              double fd_step_factor = 1e-4)
      : surface_(&surface), exact_(&exact), fd_step_factor_(fd_step_factor) {}

  Vec3 value(const SurfaceMesh& mesh, int face, const Vec3& x) const;
  Mat3 gradient(const SurfaceMesh& mesh, int face, const Vec3& x) const;
  double pressure(const Vec3& x) const;

 private:
  const LevelSetSurface* surface_;
  const ExactSolution* exact_;
  double fd_step_factor_;
};

/// Reference fields an error computation compares against.
struct ReferenceField {
  std::function<Vec3(int face, const Vec3& x)> velocity;
  std::function<Mat3(int face, const Vec3& x)> velocity_gradient;
  std::function<double(int face, const Vec3& x)> pressure;  // may be null
};

struct ErrorReport {
  int level = 0;
  double h = 0.0;
  double e_energy = 0.0;   // H1(velocity) + L2(pressure)
  double e_l2_vel = 0.0;
  double e_h1_vel = 0.0;   // full H1 norm of the velocity error
  double e_l2_pres = 0.0;
  int dof_velocity = 0;
  int dof_pressure = 0;
  double seconds = 0.0;
};

/// Elementwise quadrature of the squared differences between a discrete
/// velocity/pressure pair and a reference field. The reference pressure is
/// compared after subtracting its mesh mean (the discrete pressure is
/// mean-zero by construction).
ErrorReport error_norms(const SurfaceMesh& mesh, const DofMap& dofs,
                        const Eigen::VectorXd& velocity,
                        const std::optional<Eigen::VectorXd>& pressure,
                        const ReferenceField& reference,
                        int quadrature_degree = 6);

/// Vertex interpolant of a surface-tangential field: vertex DOFs are the
/// master-face inverse-Piola samples, bubbles vanish. Returns coefficients of
/// size 2V + 2F.
Eigen::VectorXd interpolate(const LevelSetSurface& surface,
                            const SurfaceMesh& mesh, const DofMap& dofs,
                            const std::function<Vec3(const Vec3&)>& field_on_surface);

/// log2 error ratio under one refinement.
inline double eoc(double coarse, double fine) {
  return std::log2(coarse / fine);
}

// --- lemma-diagnostic suite -------------------------------------------------

/// max over quadrature points of |1 - mu_h| / h^2.
double mu_deviation_constant(const LevelSetSurface& surface,
                             const SurfaceMesh& mesh, int quadrature_degree = 6);

/// max over vertices and incident faces of
/// |breve(u)_K - M_a^K breve(u)_{K_a}| / (h^2 |u(p(a))|) for a tangential
/// field on the surface (defaults to the exact velocity).
double transfer_defect_constant(const LevelSetSurface& surface,
                                const SurfaceMesh& mesh, const DofMap& dofs,
                                const std::function<Vec3(const Vec3&)>& field);

/// max over face centroids of |d| / h_K^2.
double distance_constant(const LevelSetSurface& surface, const SurfaceMesh& mesh);

/// max over face centroids of |nu(p) - nu_K| / h.
double normal_deviation_constant(const LevelSetSurface& surface,
                                 const SurfaceMesh& mesh);

/// Discrete inf-sup constant beta_h: square root of the smallest nonzero
/// eigenvalue of B A^{-1} B^T q = beta^2 Mp q (the constant-pressure mode is
/// deflated). Dense eigensolve; intended for coarse levels.
double infsup_constant(const SaddleSystem& sys);

/// Smallest eigenvalue of A (dense; coarse levels only).
double a_min_eigenvalue(const SaddleSystem& sys);

/// L2(surface) norm of Def_gamma(piola_forward v) - (Def_mesh v) o p^{-1}
/// over the lifted mesh divided by h ||v||_{H1_h}; v given by velocity
/// coefficients. Uses subdivision quadrature on the lifted faces and surface
/// finite differences for the lifted deformation.
double deformation_transfer_ratio(const LevelSetSurface& surface,
                                  const SurfaceMesh& mesh, const DofMap& dofs,
                                  const Eigen::VectorXd& velocity,
                                  int subdivision = 2);

/// max over edges and 3 points per edge of the in-plane normal jump of a
/// discrete velocity, relative to the max coefficient magnitude.
double conformity_max_jump(const SurfaceMesh& mesh, const DofMap& dofs,
                           const Eigen::VectorXd& velocity);

/// max over faces and quadrature points of |v . nu_K| / max|v|.
double tangency_max(const SurfaceMesh& mesh, const DofMap& dofs,
                    const Eigen::VectorXd& velocity, int quadrature_degree = 6);

}  // namespace surfstokes
