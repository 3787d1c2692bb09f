#pragma once

#include <functional>

#include "surfstokes/geometry.hpp"
#include "surfstokes/jets.hpp"

namespace surfstokes {

/// Value, Jacobian and per-component Hessians of an ambient vector field,
/// obtained by evaluating the field on seeded jets.
struct AmbientDerivatives {
  Vec3 value = Vec3::Zero();
  Mat3 jacobian = Mat3::Zero();        // (i,j) = d_j value_i
  std::array<Mat3, 3> hessian = {};    // hessian[i] = Hess(value_i)
};

using JetField = std::function<Jet2Vec3(const Jet2Vec3&)>;

AmbientDerivatives ambient_derivatives(const JetField& field, const Vec3& x);

/// Surface differential operators of an ambient tangential field at a point
/// on the surface. All first-order operators come from the exact Jacobian of
/// the extension; the second-order term differentiates the extended
/// deformation field row-wise.
struct SurfaceOperators {
  Vec3 u = Vec3::Zero();
  Mat3 grad_u = Mat3::Zero();  // Pi grad(u_ext) Pi
  Mat3 def_u = Mat3::Zero();   // symmetric part
  double div_u = 0.0;          // trace
  double p = 0.0;
  Vec3 grad_p = Vec3::Zero();
  Vec3 div_def_u = Vec3::Zero();  // row-wise surface divergence of def_u
  Vec3 f = Vec3::Zero();          // -Pi div_def_u + grad_p + u
};

/// Surface divergence of the tangentially extended deformation tensor of an
/// arbitrary jet-evaluable field; exposed for oracle-style cross checks.
Vec3 tangential_def_divergence(const LevelSetSurface& surface, const Vec3& x,
                               const JetField& field);

/// The test solution pair: velocity u = Pi (-z^2, x, y)^T with
/// Pi = I - n otimes n, n = grad_psi/|grad_psi|, and pressure p = x y^3 + z.
class ExactSolution {
 public:
  enum class ForcingMode { Piola, Projected };

  explicit ExactSolution(const LevelSetSurface& surface) : surface_(surface) {}

  const LevelSetSurface& surface() const { return surface_; }

  /// Smooth extension of the velocity, valid anywhere grad_psi != 0.
  Vec3 velocity(const Vec3& x) const;
  double pressure(const Vec3& x) const { return x[0] * x[1] * x[1] * x[1] + x[2]; }

  /// All operators at a point on the surface. Throws OffSurface when
  /// |psi(x)| exceeds the tolerance.
  SurfaceOperators surface_ops(const Vec3& x, double tol_factor = 1e-10) const;

  /// Mesh forcing at x on a face with normal nu_K: the inverse Piola
  /// transform of f(p(x)) or its plain tangential projection.
  Vec3 forcing_on_mesh(const Vec3& nu_K, const SurfacePointData& spd,
                       ForcingMode mode = ForcingMode::Piola) const;

  /// Scaled divergence data mu_h(x) (div_gamma u)(p(x)).
  double divergence_data_on_mesh(const Vec3& nu_K,
                                 const SurfacePointData& spd) const;

  /// The velocity extension as a jet field (for oracles and cross checks).
  Jet2Vec3 velocity_jets(const Jet2Vec3& x) const;
  Jet2 pressure_jets(const Jet2Vec3& x) const;

 private:
  LevelSetSurface surface_;
};

/// Surface operators of an arbitrary jet-evaluable tangential field and
/// scalar at a surface point (the engine behind ExactSolution::surface_ops).
SurfaceOperators surface_ops_of(const LevelSetSurface& surface, const Vec3& x,
                                const JetField& velocity,
                                const std::function<Jet2(const Jet2Vec3&)>& pressure);

}  // namespace surfstokes
