#pragma once

#include <utility>
#include <vector>

#include "surfstokes/mesh.hpp"

namespace surfstokes {

struct DofMapOptions {
  double min_alignment = 0.1;
};

/// Orthonormal tangent frame of a plane with unit normal nu: the first vector
/// is the normalized projection of the canonical axis least aligned with nu
/// (lowest index on ties), the second is nu x first.
std::pair<Vec3, Vec3> tangent_frame(const Vec3& nu);

/// Master face per vertex: the lowest face index in the vertex star.
std::vector<int> assign_masters(const SurfaceMesh& mesh);

/// Velocity/pressure degree-of-freedom tables. Velocity DOFs are two per
/// vertex (components of the value on the master face in that face's tangent
/// frame) followed by two per face (bubble coefficients in the face frame).
struct DofMap {
  std::vector<int> master_face;             // per vertex
  std::vector<Vec3> frame1, frame2;         // per vertex, tangent to master
  std::vector<std::array<Vec3, 6>> vertex_dirs;  // per face, slot*2 + i
  std::vector<std::array<Vec2, 6>> alphas;       // reference coefficients
  std::vector<Vec3> bubble_dir1, bubble_dir2;    // per face
  int n_vertices = 0;
  int n_faces = 0;

  int velocity_dofs() const { return 2 * n_vertices + 2 * n_faces; }
  int pressure_dofs() const { return n_vertices; }
  int vertex_dof(int vertex, int i) const { return 2 * vertex + i; }
  int bubble_dof(int face, int i) const { return 2 * n_vertices + 2 * face + i; }
};

/// Frames for previously assigned masters; fills master_face/frame1/frame2.
void build_frames(const SurfaceMesh& mesh, std::vector<int> masters, DofMap& dofs);

/// Transfer the master frames to every incident face and solve the 3x2
/// reference-coefficient systems; fills the remaining DofMap tables.
void build_rosetta(const SurfaceMesh& mesh, DofMap& dofs,
                   const DofMapOptions& opts = {});

DofMap build_dofmap(const SurfaceMesh& mesh, const DofMapOptions& opts = {});

}  // namespace surfstokes
