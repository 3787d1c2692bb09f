#include "surfstokes/element.hpp"

namespace surfstokes {

std::array<Vec3, 3> face_hat_gradients(const SurfaceMesh& mesh, int face) {
  const FaceGeometry& fg = mesh.face_geometry[face];
  const Mat2 Ginv = (fg.DF.transpose() * fg.DF).inverse();
  std::array<Vec3, 3> grads;
  const auto ref = ReferenceMini::hat_grads();
  for (int j = 0; j < 3; ++j) grads[j] = fg.DF * (Ginv * ref[j]);
  return grads;
}

FaceBasisEval eval_face_basis(const SurfaceMesh& mesh, const DofMap& dofs,
                              int face, double xi, double eta) {
  FaceBasisEval ev;
  const FaceGeometry& fg = mesh.face_geometry[face];
  const auto hats = ReferenceMini::hats(xi, eta);
  const auto hat_grads = face_hat_gradients(mesh, face);

  for (int slot = 0; slot < 3; ++slot) {
    const int a = mesh.faces[face][slot];
    for (int i = 0; i < 2; ++i) {
      const int l = 2 * slot + i;
      const Vec3& dir = dofs.vertex_dirs[face][l];
      ev.value[l] = hats[slot] * dir;
      ev.grad[l] = dir * hat_grads[slot].transpose();
      ev.div[l] = dir.dot(hat_grads[slot]);
      ev.global[l] = dofs.vertex_dof(a, i);
    }
    ev.pvalue[slot] = hats[slot];
    ev.pgrad[slot] = hat_grads[slot];
    ev.pglobal[slot] = a;
  }

  // Bubble: scalar factor in reference coordinates, in-plane gradient through
  // the chart.
  const double b = ReferenceMini::bubble(xi, eta);
  const Mat2 Ginv = (fg.DF.transpose() * fg.DF).inverse();
  const Vec3 bgrad = fg.DF * (Ginv * ReferenceMini::bubble_grad(xi, eta));
  const Vec3 bubble_dirs[2] = {dofs.bubble_dir1[face], dofs.bubble_dir2[face]};
  for (int i = 0; i < 2; ++i) {
    const int l = 6 + i;
    ev.value[l] = b * bubble_dirs[i];
    ev.grad[l] = bubble_dirs[i] * bgrad.transpose();
    ev.div[l] = bubble_dirs[i].dot(bgrad);
    ev.global[l] = dofs.bubble_dof(face, i);
  }
  return ev;
}

Vec3 VelocityField::value(int face, double xi, double eta) const {
  const FaceBasisEval ev = eval_face_basis(*mesh, *dofs, face, xi, eta);
  Vec3 v = Vec3::Zero();
  for (int l = 0; l < 8; ++l) v += (*coeffs)[ev.global[l]] * ev.value[l];
  return v;
}

Mat3 VelocityField::gradient(int face, double xi, double eta) const {
  const FaceBasisEval ev = eval_face_basis(*mesh, *dofs, face, xi, eta);
  Mat3 g = Mat3::Zero();
  for (int l = 0; l < 8; ++l) g += (*coeffs)[ev.global[l]] * ev.grad[l];
  return g;
}

double VelocityField::divergence(int face, double xi, double eta) const {
  const FaceBasisEval ev = eval_face_basis(*mesh, *dofs, face, xi, eta);
  double d = 0.0;
  for (int l = 0; l < 8; ++l) d += (*coeffs)[ev.global[l]] * ev.div[l];
  return d;
}

double PressureField::value(int face, double xi, double eta) const {
  const auto hats = ReferenceMini::hats(xi, eta);
  double v = 0.0;
  for (int slot = 0; slot < 3; ++slot)
    v += (*coeffs)[mesh->faces[face][slot]] * hats[slot];
  return v;
}

}  // namespace surfstokes
