#include "surfstokes/geometry.hpp"

#include <cmath>

namespace surfstokes {

LevelSetSurface LevelSetSurface::sphere(double radius) {
  LevelSetSurface s;
  s.kind = Kind::Sphere;
  s.semi_axes = Vec3::Constant(radius);
  s.tube_halfwidth = 0.5 * radius;
  return s;
}

LevelSetSurface LevelSetSurface::ellipsoid(double a, double b, double c) {
  LevelSetSurface s;
  s.kind = Kind::Ellipsoid;
  s.semi_axes = Vec3(a, b, c);
  s.tube_halfwidth = 0.5 * s.semi_axes.minCoeff();
  return s;
}

double LevelSetSurface::psi(const Vec3& x) const {
  const Vec3& s = semi_axes;
  return x[0] * x[0] / (s[0] * s[0]) + x[1] * x[1] / (s[1] * s[1]) +
         x[2] * x[2] / (s[2] * s[2]) - 1.0;
}

Vec3 LevelSetSurface::grad_psi(const Vec3& x) const {
  const Vec3& s = semi_axes;
  return Vec3(2.0 * x[0] / (s[0] * s[0]), 2.0 * x[1] / (s[1] * s[1]),
              2.0 * x[2] / (s[2] * s[2]));
}

Mat3 LevelSetSurface::hess_psi() const {
  const Vec3& s = semi_axes;
  return Vec3(2.0 / (s[0] * s[0]), 2.0 / (s[1] * s[1]), 2.0 / (s[2] * s[2]))
      .asDiagonal();
}

namespace {

// Gradient of the normalized level-set gradient nu_tilde = grad_psi/|grad_psi|.
Mat3 grad_unit_normal(const LevelSetSurface& surface, const Vec3& x) {
  const Vec3 g = surface.grad_psi(x);
  const Mat3 Hp = surface.hess_psi();
  const double n = g.norm();
  // d/dx (g/|g|) = Hp/|g| - g (g^T Hp)/|g|^3
  return Hp / n - g * (g.transpose() * Hp) / (n * n * n);
}

}  // namespace

Mat3 weingarten_on_surface(const LevelSetSurface& surface, const Vec3& p) {
  const Vec3 nu = surface.grad_psi(p).normalized();
  const Mat3 Pi = Mat3::Identity() - nu * nu.transpose();
  Mat3 H = Pi * grad_unit_normal(surface, p) * Pi;
  return 0.5 * (H + H.transpose());  // kill roundoff asymmetry
}

SurfacePointData closest_point(const LevelSetSurface& surface, const Vec3& x,
                               const ProjectionOptions& opts) {
  const double scale = surface.diameter();
  const double tol = opts.tol_factor * scale;

  if (x.norm() < 1e-14 * scale)
    throw NoConvergence("closest_point: query at the surface center");

  // Initial guess: scale x onto the surface radially, lambda from the
  // stationarity relation lambda grad_psi(y) = x - y.
  const double q = surface.psi(x) + 1.0;
  Vec3 y = x / std::sqrt(q);
  Vec3 g = surface.grad_psi(y);
  double lambda = (x - y).dot(g) / g.squaredNorm();

  const Mat3 Hp = surface.hess_psi();
  auto residual = [&](const Vec3& yy, double ll) {
    Eigen::Vector4d r;
    r.head<3>() = yy + ll * surface.grad_psi(yy) - x;
    r[3] = surface.psi(yy) * 0.5 * scale;  // comparable scaling of the rows
    return r;
  };

  Eigen::Vector4d r = residual(y, lambda);
  for (int it = 0; it < opts.max_iter && r.norm() > tol; ++it) {
    g = surface.grad_psi(y);
    Eigen::Matrix4d J;
    J.topLeftCorner<3, 3>() = Mat3::Identity() + lambda * Hp;
    J.topRightCorner<3, 1>() = g;
    J.bottomLeftCorner<1, 3>() = (0.5 * scale) * g.transpose();
    J(3, 3) = 0.0;
    const Eigen::Vector4d step = J.partialPivLu().solve(-r);

    double t = 1.0;
    bool improved = false;
    for (int back = 0; back < 30; ++back, t *= 0.5) {
      const Vec3 y_new = y + t * step.head<3>();
      const double l_new = lambda + t * step[3];
      const Eigen::Vector4d r_new = residual(y_new, l_new);
      if (r_new.norm() < r.norm() || r_new.norm() <= tol) {
        y = y_new;
        lambda = l_new;
        r = r_new;
        improved = true;
        break;
      }
    }
    if (!improved) break;  // stalled at the floating point floor
  }
  if (r.norm() > tol) throw NoConvergence("closest_point: max iterations");

  SurfacePointData spd;
  spd.p = y;
  const double psix = surface.psi(x);
  spd.d = (psix >= 0.0 ? 1.0 : -1.0) * (x - y).norm();
  spd.nu = surface.grad_psi(y).normalized();
  spd.Pi = Mat3::Identity() - spd.nu * spd.nu.transpose();
  // Transport the surface Weingarten map along the normal:
  // eigenvalues kappa_i(x) = kappa_i(p) / (1 + d kappa_i(p)).
  const Mat3 Hs = weingarten_on_surface(surface, y);
  Mat3 H = Hs * (Mat3::Identity() + spd.d * Hs).inverse();
  spd.H = 0.5 * (H + H.transpose());
  return spd;
}

double measure_ratio(const Vec3& nu_K, const SurfacePointData& spd) {
  const double align = spd.nu.dot(nu_K);
  if (align <= 0.0)
    throw DegenerateGeometry("measure_ratio: nu . nu_K <= 0");
  // det(I - d H) = (1 - d kappa_1)(1 - d kappa_2); the third eigenvalue of H
  // vanishes on the normal direction.
  return align * (Mat3::Identity() - spd.d * spd.H).determinant();
}

Vec3 piola_forward(const Vec3& nu_K, const SurfacePointData& spd, const Vec3& v) {
  const double mu = measure_ratio(nu_K, spd);
  return (spd.Pi * v - spd.d * (spd.H * v)) / mu;
}

Mat3 transfer_matrix_m(const Vec3& nu_K, const SurfacePointData& spd,
                       double min_alignment) {
  const double align = spd.nu.dot(nu_K);
  if (align <= min_alignment)
    throw DegenerateGeometry("transfer_matrix_m: nu . nu_K below threshold");
  const Mat3 slant = Mat3::Identity() - spd.nu * nu_K.transpose() / align;
  return slant * (Mat3::Identity() - spd.d * spd.H).inverse();
}

Vec3 piola_inverse(const Vec3& nu_K, const SurfacePointData& spd, const Vec3& w,
                   double min_alignment) {
  const double mu = measure_ratio(nu_K, spd);
  return mu * (transfer_matrix_m(nu_K, spd, min_alignment) * w);
}

Mat3 edge_transfer(const Vec3& nu_master, const Vec3& nu_K,
                   double min_alignment) {
  const double align = nu_master.dot(nu_K);
  if (align <= min_alignment)
    throw DegenerateGeometry("edge_transfer: nu_master . nu_K below threshold");
  return align * Mat3::Identity() - nu_master * nu_K.transpose();
}

}  // namespace surfstokes
