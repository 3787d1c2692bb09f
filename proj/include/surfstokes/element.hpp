#pragma once

#include "surfstokes/dofmap.hpp"
#include "surfstokes/mesh.hpp"

namespace surfstokes {

/// Scalar MINI ingredients on the reference triangle (0,0),(1,0),(0,1):
/// vertex hats and the plain-product cubic bubble (integral 1/120).
struct ReferenceMini {
  static std::array<double, 3> hats(double xi, double eta) {
    return {1.0 - xi - eta, xi, eta};
  }
  static std::array<Vec2, 3> hat_grads() {
    return {Vec2(-1.0, -1.0), Vec2(1.0, 0.0), Vec2(0.0, 1.0)};
  }
  static double bubble(double xi, double eta) {
    return (1.0 - xi - eta) * xi * eta;
  }
  static Vec2 bubble_grad(double xi, double eta) {
    return Vec2(eta * (1.0 - 2.0 * xi - eta), xi * (1.0 - xi - 2.0 * eta));
  }
};

/// Values, tangential gradients and divergences of the 8 local velocity basis
/// functions (6 vertex-direction + 2 bubble-direction) and of the 3 pressure
/// hats at one reference point of a face.
struct FaceBasisEval {
  std::array<Vec3, 8> value;
  std::array<Mat3, 8> grad;  // Pi_K (grad) Pi_K
  std::array<double, 8> div;
  std::array<int, 8> global;  // global velocity dof indices

  std::array<double, 3> pvalue;
  std::array<Vec3, 3> pgrad;
  std::array<int, 3> pglobal;
};

FaceBasisEval eval_face_basis(const SurfaceMesh& mesh, const DofMap& dofs,
                              int face, double xi, double eta);

/// Symmetric part of a tangential gradient.
inline Mat3 deformation(const Mat3& grad) {
  return 0.5 * (grad + grad.transpose());
}

/// In-plane gradients of the three hats of a face (constant, tangent to the
/// face plane).
std::array<Vec3, 3> face_hat_gradients(const SurfaceMesh& mesh, int face);

/// Discrete velocity field view over a coefficient vector of size 2V + 2F.
struct VelocityField {
  const SurfaceMesh* mesh = nullptr;
  const DofMap* dofs = nullptr;
  const Eigen::VectorXd* coeffs = nullptr;

  Vec3 value(int face, double xi, double eta) const;
  Mat3 gradient(int face, double xi, double eta) const;
  double divergence(int face, double xi, double eta) const;
};

/// Discrete pressure field view over a coefficient vector of size V.
struct PressureField {
  const SurfaceMesh* mesh = nullptr;
  const Eigen::VectorXd* coeffs = nullptr;

  double value(int face, double xi, double eta) const;
};

}  // namespace surfstokes
