#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "surfstokes/geometry.hpp"
#include "surfstokes/types.hpp"

namespace surfstokes {

/// Per-face geometric data of the affine chart F_K(xhat) = base + DF xhat.
struct FaceGeometry {
  Vec3 nu = Vec3::UnitZ();  // outward unit normal
  double area = 0.0;
  Mat32 DF = Mat32::Zero();  // columns span the face plane
  double J = 0.0;            // sqrt(det(DF^T DF)) = 2 area
  Vec3 base = Vec3::Zero();  // first vertex of the face
  double diam = 0.0;         // longest edge
};

struct MeshOptions {
  int max_level = 8;
  double min_angle_deg = 20.0;
};

/// Triangulated polyhedral surface inscribed in a level-set surface, with the
/// full topology the vertex-DOF construction needs: edges with their two
/// incident faces and per-vertex face stars.
struct SurfaceMesh {
  struct Edge {
    int v0 = -1, v1 = -1;  // v0 < v1
    int f0 = -1, f1 = -1;  // incident faces, f0 < f1
  };

  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;  // consistent outward orientation
  std::vector<Edge> edges;
  std::vector<std::vector<int>> vertex_stars;  // sorted face ids per vertex
  std::vector<FaceGeometry> face_geometry;
  int level = 0;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_faces() const { return static_cast<int>(faces.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }

  double max_edge() const;
  double min_edge() const;
  double min_angle_deg() const;

  Vec3 face_point(int face, double xi, double eta) const {
    const FaceGeometry& fg = face_geometry[face];
    return fg.base + fg.DF * Vec2(xi, eta);
  }
  Vec3 face_centroid(int face) const { return face_point(face, 1.0 / 3.0, 1.0 / 3.0); }

  /// Reference coordinates of a physical point assumed to lie on the face
  /// plane (least-squares chart inversion).
  Vec2 reference_coordinates(int face, const Vec3& x) const;

  void write_off(std::ostream& os) const;
};

/// Icosahedron-based triangulation of the surface: the regular icosahedron is
/// mapped radially onto the surface and subdivided `level` times, projecting
/// each new midpoint with the closest point map. 20 * 4^level faces.
SurfaceMesh generate(const LevelSetSurface& surface, int level,
                     const MeshOptions& opts = {});

/// One 4-way midpoint subdivision round. The parent vertex set is a prefix of
/// the child's, bitwise unchanged.
SurfaceMesh refine(const LevelSetSurface& surface, const SurfaceMesh& mesh,
                   const MeshOptions& opts = {});

/// In-plane outward unit normal of the edge (e0,e1) within the face with
/// normal nu and third vertex `opposite`.
Vec3 in_plane_edge_normal(const Vec3& e0, const Vec3& e1, const Vec3& opposite,
                          const Vec3& nu);

/// Per-edge pair of in-plane outward normals, one for each incident face
/// (index 0 for edge.f0, 1 for edge.f1). Throws NonManifold if the mesh has
/// an edge without exactly two faces.
std::vector<std::array<Vec3, 2>> build_edge_frames(const SurfaceMesh& mesh);

}  // namespace surfstokes
