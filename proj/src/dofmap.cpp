#include "surfstokes/dofmap.hpp"

#include <cmath>

namespace surfstokes {

std::pair<Vec3, Vec3> tangent_frame(const Vec3& nu) {
  int axis = 0;
  double best = std::abs(nu[0]);
  for (int j = 1; j < 3; ++j) {
    if (std::abs(nu[j]) < best) {
      best = std::abs(nu[j]);
      axis = j;
    }
  }
  const Vec3 e = Vec3::Unit(axis);
  const Vec3 t1 = (e - nu.dot(e) * nu).normalized();
  return {t1, nu.cross(t1)};
}

std::vector<int> assign_masters(const SurfaceMesh& mesh) {
  std::vector<int> masters(mesh.n_vertices());
  for (int a = 0; a < mesh.n_vertices(); ++a)
    masters[a] = mesh.vertex_stars[a].front();  // stars are sorted
  return masters;
}

void build_frames(const SurfaceMesh& mesh, std::vector<int> masters, DofMap& dofs) {
  dofs.n_vertices = mesh.n_vertices();
  dofs.n_faces = mesh.n_faces();
  dofs.master_face = std::move(masters);
  dofs.frame1.resize(dofs.n_vertices);
  dofs.frame2.resize(dofs.n_vertices);
  for (int a = 0; a < dofs.n_vertices; ++a) {
    const Vec3& nu = mesh.face_geometry[dofs.master_face[a]].nu;
    std::tie(dofs.frame1[a], dofs.frame2[a]) = tangent_frame(nu);
  }
}

void build_rosetta(const SurfaceMesh& mesh, DofMap& dofs, const DofMapOptions& opts) {
  dofs.vertex_dirs.assign(dofs.n_faces, {});
  dofs.alphas.assign(dofs.n_faces, {});
  dofs.bubble_dir1.resize(dofs.n_faces);
  dofs.bubble_dir2.resize(dofs.n_faces);

  for (int k = 0; k < dofs.n_faces; ++k) {
    const FaceGeometry& fg = mesh.face_geometry[k];
    std::tie(dofs.bubble_dir1[k], dofs.bubble_dir2[k]) = tangent_frame(fg.nu);

    // alpha solves P_F alpha = v with P_F = DF/J via the 2x2 normal equations.
    const Mat2 G = fg.DF.transpose() * fg.DF;
    const Mat2 Ginv = G.inverse();

    for (int slot = 0; slot < 3; ++slot) {
      const int a = mesh.faces[k][slot];
      const int ka = dofs.master_face[a];
      const Mat3 M = edge_transfer(mesh.face_geometry[ka].nu, fg.nu,
                                   opts.min_alignment);
      const Vec3 frames[2] = {dofs.frame1[a], dofs.frame2[a]};
      for (int i = 0; i < 2; ++i) {
        const Vec3 dir = (ka == k) ? frames[i] : Vec3(M * frames[i]);
        dofs.vertex_dirs[k][2 * slot + i] = dir;
        dofs.alphas[k][2 * slot + i] = fg.J * (Ginv * (fg.DF.transpose() * dir));
      }
    }
  }
}

DofMap build_dofmap(const SurfaceMesh& mesh, const DofMapOptions& opts) {
  DofMap dofs;
  build_frames(mesh, assign_masters(mesh), dofs);
  build_rosetta(mesh, dofs, opts);
  return dofs;
}

}  // namespace surfstokes
