#include "surfstokes/manufactured.hpp"

#include <cmath>

namespace surfstokes {

AmbientDerivatives ambient_derivatives(const JetField& field, const Vec3& x) {
  const Jet2Vec3 out = field(seed_point(x));
  AmbientDerivatives d;
  for (int i = 0; i < 3; ++i) {
    d.value[i] = out[i].v;
    d.jacobian.row(i) = out[i].g.transpose();
    d.hessian[i] = out[i].h;
  }
  return d;
}

namespace {

// Unit normal extension n = grad_psi/|grad_psi| as jets.
Jet2Vec3 normal_jets(const LevelSetSurface& surface, const Jet2Vec3& x) {
  const std::array<Jet2, 3> g = surface.grad_psi_t(x);
  const Jet2 norm = sqrt(dot(g, g));
  return {g[0] / norm, g[1] / norm, g[2] / norm};
}

}  // namespace

Vec3 tangential_def_divergence(const LevelSetSurface& surface, const Vec3& x,
                               const JetField& field) {
  const AmbientDerivatives du = ambient_derivatives(field, x);
  const AmbientDerivatives dn = ambient_derivatives(
      [&](const Jet2Vec3& xx) { return normal_jets(surface, xx); }, x);

  const Vec3 nu = dn.value;
  const Mat3 Pi = Mat3::Identity() - nu * nu.transpose();

  // d_j Pi_{im} = -(d_j n_i) n_m - n_i (d_j n_m)
  const Mat3& J = du.jacobian;
  std::array<Mat3, 3> dA;  // dA[j] = d_j (Pi J Pi)
  for (int j = 0; j < 3; ++j) {
    Mat3 dPi;
    for (int i = 0; i < 3; ++i)
      for (int m = 0; m < 3; ++m)
        dPi(i, m) = -dn.jacobian(i, j) * nu[m] - nu[i] * dn.jacobian(m, j);
    Mat3 dJ;
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) dJ(m, n) = du.hessian[m](n, j);
    dA[j] = dPi * J * Pi + Pi * dJ * Pi + Pi * J * dPi;
  }

  // (div_gamma D)_i = tr(Pi grad(D_{i,:}) Pi) with D = sym(Pi J Pi).
  Vec3 div = Vec3::Zero();
  for (int i = 0; i < 3; ++i) {
    Mat3 grad_row;  // (k, j) = d_j D_{ik}
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        grad_row(k, j) = 0.5 * (dA[j](i, k) + dA[j](k, i));
    div[i] = (Pi * grad_row * Pi).trace();
  }
  return div;
}

SurfaceOperators surface_ops_of(const LevelSetSurface& surface, const Vec3& x,
                                const JetField& velocity,
                                const std::function<Jet2(const Jet2Vec3&)>& pressure) {
  SurfaceOperators ops;
  const Vec3 nu = surface.grad_psi(x).normalized();
  const Mat3 Pi = Mat3::Identity() - nu * nu.transpose();

  const AmbientDerivatives du = ambient_derivatives(velocity, x);
  ops.u = du.value;
  ops.grad_u = Pi * du.jacobian * Pi;
  ops.def_u = 0.5 * (ops.grad_u + ops.grad_u.transpose());
  ops.div_u = ops.grad_u.trace();

  const Jet2 pj = pressure(seed_point(x));
  ops.p = pj.v;
  ops.grad_p = Pi * pj.g;

  ops.div_def_u = tangential_def_divergence(surface, x, velocity);
  ops.f = -(Pi * ops.div_def_u) + ops.grad_p + ops.u;
  return ops;
}

Jet2Vec3 ExactSolution::velocity_jets(const Jet2Vec3& x) const {
  const Jet2Vec3 n = normal_jets(surface_, x);
  const Jet2Vec3 w = {-(x[2] * x[2]), x[0], x[1]};
  const Jet2 nw = dot(n, w);
  return {w[0] - nw * n[0], w[1] - nw * n[1], w[2] - nw * n[2]};
}

Jet2 ExactSolution::pressure_jets(const Jet2Vec3& x) const {
  return x[0] * x[1] * x[1] * x[1] + x[2];
}

Vec3 ExactSolution::velocity(const Vec3& x) const {
  const Vec3 n = surface_.grad_psi(x).normalized();
  const Vec3 w(-x[2] * x[2], x[0], x[1]);
  return w - n.dot(w) * n;
}

SurfaceOperators ExactSolution::surface_ops(const Vec3& x, double tol_factor) const {
  if (std::abs(surface_.psi(x)) > tol_factor * surface_.diameter())
    throw OffSurface("surface_ops: point is not on the surface");
  return surface_ops_of(
      surface_, x, [this](const Jet2Vec3& xx) { return velocity_jets(xx); },
      [this](const Jet2Vec3& xx) { return pressure_jets(xx); });
}

Vec3 ExactSolution::forcing_on_mesh(const Vec3& nu_K, const SurfacePointData& spd,
                                    ForcingMode mode) const {
  const Vec3 f = surface_ops(spd.p).f;
  if (mode == ForcingMode::Projected)
    return f - nu_K.dot(f) * nu_K;
  return piola_inverse(nu_K, spd, f);
}

double ExactSolution::divergence_data_on_mesh(const Vec3& nu_K,
                                              const SurfacePointData& spd) const {
  return measure_ratio(nu_K, spd) * surface_ops(spd.p).div_u;
}

}  // namespace surfstokes
