#pragma once

#include <array>

#include "surfstokes/jets.hpp"
#include "surfstokes/types.hpp"

namespace surfstokes {

/// Closed implicit surface psi(x) = x^2/a^2 + y^2/b^2 + z^2/c^2 - 1 = 0.
/// A sphere is the special case a = b = c = r.
struct LevelSetSurface {
  enum class Kind { Sphere, Ellipsoid };

  Kind kind = Kind::Sphere;
  Vec3 semi_axes = Vec3::Ones();
  /// Sanity half-width of the tubular neighborhood in which projections are
  /// trusted; meshes whose centroid distances exceed it are rejected.
  double tube_halfwidth = 0.5;

  static LevelSetSurface sphere(double radius);
  static LevelSetSurface ellipsoid(double a, double b, double c);

  double psi(const Vec3& x) const;
  Vec3 grad_psi(const Vec3& x) const;
  Mat3 hess_psi() const;  // constant for quadrics
  double diameter() const { return 2.0 * semi_axes.maxCoeff(); }

  /// Gradient of psi evaluated on any scalar type supporting arithmetic
  /// (double for plain evaluation, Jet2 for derivative propagation).
  template <class T>
  std::array<T, 3> grad_psi_t(const std::array<T, 3>& x) const {
    return {x[0] * (2.0 / (semi_axes[0] * semi_axes[0])),
            x[1] * (2.0 / (semi_axes[1] * semi_axes[1])),
            x[2] * (2.0 / (semi_axes[2] * semi_axes[2]))};
  }
};

/// Projection data at a query point x in the tube: closest point p on the
/// surface, signed distance d (negative inside), unit outward normal
/// nu = nu(p(x)), Weingarten map H at x, and tangential projector Pi.
struct SurfacePointData {
  Vec3 p = Vec3::Zero();
  double d = 0.0;
  Vec3 nu = Vec3::UnitZ();
  Mat3 H = Mat3::Zero();
  Mat3 Pi = Mat3::Identity();
};

struct ProjectionOptions {
  double tol_factor = 1e-12;  // scaled by surface diameter
  int max_iter = 50;
};

/// Closest point projection by damped Newton on the Lagrange system
/// y + lambda grad_psi(y) = x, psi(y) = 0. Throws NoConvergence when the
/// iteration fails (query outside the tube or degenerate).
SurfacePointData closest_point(const LevelSetSurface& surface, const Vec3& x,
                               const ProjectionOptions& opts = {});

/// Weingarten map at a point p on the surface: Pi grad(nu_tilde) Pi with
/// nu_tilde = grad_psi/|grad_psi|. Symmetric, H nu = 0.
Mat3 weingarten_on_surface(const LevelSetSurface& surface, const Vec3& p);

/// Surface-measure ratio mu_h(x) = (nu . nu_K) det(I - d H(x)) relating the
/// area elements of the surface and of a face with normal nu_K. Throws
/// DegenerateGeometry when nu . nu_K <= 0.
double measure_ratio(const Vec3& nu_K, const SurfacePointData& spd);

/// Piola transform of a face-tangent vector to a surface-tangent vector at
/// p(x): mu^{-1} [Pi - d H] v.
Vec3 piola_forward(const Vec3& nu_K, const SurfacePointData& spd, const Vec3& v);

/// Matrix M = [I - nu otimes nu_K / (nu . nu_K)] [I - d H]^{-1} of the inverse
/// transform; the full inverse Piola is mu * M.
Mat3 transfer_matrix_m(const Vec3& nu_K, const SurfacePointData& spd,
                       double min_alignment = 0.1);

/// Piola transform of a surface-tangent vector at p(x) back to the face:
/// mu [I - nu otimes nu_K / (nu . nu_K)] [I - d H]^{-1} w. Throws
/// DegenerateGeometry when nu . nu_K <= min_alignment.
Vec3 piola_inverse(const Vec3& nu_K, const SurfacePointData& spd, const Vec3& w,
                   double min_alignment = 0.1);

/// Inter-plane vertex transfer (nu_a . nu_K)[I - nu_a otimes nu_K/(nu_a . nu_K)]
/// carrying tangent vectors from a vertex's master face plane to an incident
/// face plane. Reduces to the face projector when the planes coincide.
Mat3 edge_transfer(const Vec3& nu_master, const Vec3& nu_K,
                   double min_alignment = 0.1);

}  // namespace surfstokes
