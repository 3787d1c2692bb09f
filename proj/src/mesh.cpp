#include "surfstokes/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

namespace surfstokes {

namespace {

constexpr double kPi = 3.14159265358979323846;

void build_face_geometry(SurfaceMesh& mesh) {
  mesh.face_geometry.resize(mesh.faces.size());
  for (std::size_t k = 0; k < mesh.faces.size(); ++k) {
    const auto& f = mesh.faces[k];
    const Vec3& p0 = mesh.vertices[f[0]];
    const Vec3& p1 = mesh.vertices[f[1]];
    const Vec3& p2 = mesh.vertices[f[2]];
    FaceGeometry& fg = mesh.face_geometry[k];
    fg.base = p0;
    fg.DF.col(0) = p1 - p0;
    fg.DF.col(1) = p2 - p0;
    const Vec3 n = (p1 - p0).cross(p2 - p0);
    fg.area = 0.5 * n.norm();
    fg.nu = n.normalized();
    fg.J = std::sqrt((fg.DF.transpose() * fg.DF).determinant());
    fg.diam = std::max({(p1 - p0).norm(), (p2 - p1).norm(), (p0 - p2).norm()});
  }
}

void build_topology(SurfaceMesh& mesh) {
  mesh.vertex_stars.assign(mesh.vertices.size(), {});
  std::map<std::pair<int, int>, SurfaceMesh::Edge> edge_map;
  for (int k = 0; k < mesh.n_faces(); ++k) {
    const auto& f = mesh.faces[k];
    for (int j = 0; j < 3; ++j) {
      mesh.vertex_stars[f[j]].push_back(k);
      const int a = std::min(f[j], f[(j + 1) % 3]);
      const int b = std::max(f[j], f[(j + 1) % 3]);
      auto& e = edge_map[{a, b}];
      e.v0 = a;
      e.v1 = b;
      if (e.f0 < 0)
        e.f0 = k;
      else if (e.f1 < 0)
        e.f1 = k;
      else
        throw NonManifold("edge with more than two incident faces");
    }
  }
  mesh.edges.clear();
  mesh.edges.reserve(edge_map.size());
  for (auto& [key, e] : edge_map) {
    if (e.f1 < 0) throw NonManifold("edge with a single incident face");
    if (e.f0 > e.f1) std::swap(e.f0, e.f1);
    mesh.edges.push_back(e);
  }
  for (auto& star : mesh.vertex_stars) std::sort(star.begin(), star.end());
}

void validate(const SurfaceMesh& mesh, const LevelSetSurface& surface,
              const MeshOptions& opts) {
  if (mesh.n_vertices() - mesh.n_edges() + mesh.n_faces() != 2)
    throw NonManifold("Euler characteristic is not 2");
  const double psi_tol = 1e-12;
  for (const Vec3& v : mesh.vertices) {
    if (std::abs(surface.psi(v)) > psi_tol)
      throw NonManifold("mesh vertex off the surface");
  }
  for (int k = 0; k < mesh.n_faces(); ++k) {
    if (mesh.face_geometry[k].nu.dot(mesh.face_centroid(k)) <= 0.0)
      throw NonManifold("face oriented inward");
  }
  if (mesh.min_angle_deg() < opts.min_angle_deg)
    throw NonManifold("mesh violates the minimum angle bound");
  for (int k = 0; k < mesh.n_faces(); ++k) {
    const SurfacePointData spd = closest_point(surface, mesh.face_centroid(k));
    if (std::abs(spd.d) > surface.tube_halfwidth)
      throw NonManifold("mesh leaves the projection tube");
  }
}

// Regular icosahedron on the unit sphere, outward-oriented faces.
void unit_icosahedron(std::vector<Vec3>& verts,
                      std::vector<std::array<int, 3>>& faces) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double s = 1.0 / std::sqrt(1.0 + phi * phi);
  const double a = s, b = phi * s;
  verts = {{-a, b, 0}, {a, b, 0},   {-a, -b, 0}, {a, -b, 0},
           {0, -a, b}, {0, a, b},   {0, -a, -b}, {0, a, -b},
           {b, 0, -a}, {b, 0, a},   {-b, 0, -a}, {-b, 0, a}};
  faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
           {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
           {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
           {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
}

Vec3 radial_to_surface(const LevelSetSurface& surface, const Vec3& x) {
  // Scale x so that psi(t x) = 0; psi + 1 is quadratic along rays.
  return x / std::sqrt(surface.psi(x) + 1.0);
}

}  // namespace

double SurfaceMesh::max_edge() const {
  double h = 0.0;
  for (const Edge& e : edges)
    h = std::max(h, (vertices[e.v0] - vertices[e.v1]).norm());
  return h;
}

double SurfaceMesh::min_edge() const {
  double h = std::numeric_limits<double>::max();
  for (const Edge& e : edges)
    h = std::min(h, (vertices[e.v0] - vertices[e.v1]).norm());
  return h;
}

double SurfaceMesh::min_angle_deg() const {
  double amin = 180.0;
  for (const auto& f : faces) {
    for (int j = 0; j < 3; ++j) {
      const Vec3 u = vertices[f[(j + 1) % 3]] - vertices[f[j]];
      const Vec3 w = vertices[f[(j + 2) % 3]] - vertices[f[j]];
      const double cosang = u.dot(w) / (u.norm() * w.norm());
      amin = std::min(amin, std::acos(std::clamp(cosang, -1.0, 1.0)) * 180.0 / kPi);
    }
  }
  return amin;
}

Vec2 SurfaceMesh::reference_coordinates(int face, const Vec3& x) const {
  const FaceGeometry& fg = face_geometry[face];
  const Mat2 G = fg.DF.transpose() * fg.DF;
  return G.inverse() * (fg.DF.transpose() * (x - fg.base));
}

void SurfaceMesh::write_off(std::ostream& os) const {
  os << "OFF\n" << n_vertices() << ' ' << n_faces() << ' ' << n_edges() << '\n';
  os.precision(17);
  for (const Vec3& v : vertices) os << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  for (const auto& f : faces) os << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

SurfaceMesh generate(const LevelSetSurface& surface, int level,
                     const MeshOptions& opts) {
  if (level < 0 || level > opts.max_level)
    throw MemoryGuard("generate: refinement level outside [0, max_level]");
  SurfaceMesh mesh;
  unit_icosahedron(mesh.vertices, mesh.faces);
  for (Vec3& v : mesh.vertices) v = radial_to_surface(surface, v);
  mesh.level = 0;
  build_face_geometry(mesh);
  build_topology(mesh);
  for (int l = 0; l < level; ++l) mesh = refine(surface, mesh, opts);
  validate(mesh, surface, opts);
  return mesh;
}

SurfaceMesh refine(const LevelSetSurface& surface, const SurfaceMesh& mesh,
                   const MeshOptions& opts) {
  if (mesh.level + 1 > opts.max_level)
    throw MemoryGuard("refine: refinement level exceeds max_level");
  SurfaceMesh out;
  out.level = mesh.level + 1;
  out.vertices = mesh.vertices;
  out.faces.reserve(4 * mesh.faces.size());

  ProjectionOptions proj;
  proj.tol_factor = 1e-13;  // headroom below the mesh vertex tolerance

  std::map<std::pair<int, int>, int> midpoint;
  auto midpoint_index = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const Vec3 m = 0.5 * (mesh.vertices[a] + mesh.vertices[b]);
    const int idx = static_cast<int>(out.vertices.size());
    out.vertices.push_back(closest_point(surface, m, proj).p);
    midpoint.emplace(key, idx);
    return idx;
  };

  for (const auto& f : mesh.faces) {
    const int m01 = midpoint_index(f[0], f[1]);
    const int m12 = midpoint_index(f[1], f[2]);
    const int m20 = midpoint_index(f[2], f[0]);
    out.faces.push_back({f[0], m01, m20});
    out.faces.push_back({f[1], m12, m01});
    out.faces.push_back({f[2], m20, m12});
    out.faces.push_back({m01, m12, m20});
  }
  build_face_geometry(out);
  build_topology(out);
  return out;
}

Vec3 in_plane_edge_normal(const Vec3& e0, const Vec3& e1, const Vec3& opposite,
                          const Vec3& nu) {
  Vec3 n = (e1 - e0).cross(nu).normalized();
  if (n.dot(opposite - 0.5 * (e0 + e1)) > 0.0) n = -n;
  return n;
}

std::vector<std::array<Vec3, 2>> build_edge_frames(const SurfaceMesh& mesh) {
  std::vector<std::array<Vec3, 2>> frames(mesh.edges.size());
  for (std::size_t i = 0; i < mesh.edges.size(); ++i) {
    const SurfaceMesh::Edge& e = mesh.edges[i];
    if (e.f0 < 0 || e.f1 < 0) throw NonManifold("edge without two faces");
    const int fs[2] = {e.f0, e.f1};
    for (int j = 0; j < 2; ++j) {
      const auto& f = mesh.faces[fs[j]];
      int opp = -1;
      for (int v : f)
        if (v != e.v0 && v != e.v1) opp = v;
      frames[i][j] =
          in_plane_edge_normal(mesh.vertices[e.v0], mesh.vertices[e.v1],
                               mesh.vertices[opp], mesh.face_geometry[fs[j]].nu);
    }
  }
  return frames;
}

}  // namespace surfstokes
