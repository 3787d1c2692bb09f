#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace surfstokes {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat32 = Eigen::Matrix<double, 3, 2>;

/// Closest-point iteration failed to reach tolerance (query outside the
/// projection tube or degenerate geometry).
struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Surface and mesh normals are too far apart for the transforms to be valid.
struct DegenerateGeometry : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An edge of the mesh does not have exactly two incident faces.
struct NonManifold : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested refinement level exceeds the configured cap.
struct MemoryGuard : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Quadrature degree outside the supported set.
struct UnsupportedDegree : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Assembled system dimension exceeds the configured cap.
struct AssemblyOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Linear solver failed to produce a solution within tolerance.
struct SolverBreakdown : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Point handed to an on-surface evaluation does not lie on the surface.
struct OffSurface : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace surfstokes
