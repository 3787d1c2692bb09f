#pragma once

#include <vector>

#include "surfstokes/types.hpp"

namespace surfstokes {

/// Symmetric quadrature rule on the reference triangle (0,0),(1,0),(0,1).
/// Weights sum to the reference area 1/2. Exactness for all monomials up to
/// the stated degree is verified against the closed-form integrals
/// xi^a eta^b -> a! b! / (a+b+2)! at construction.
struct QuadratureRule {
  int degree = 0;
  std::vector<Vec2> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }

  /// Supported degrees: 2, 4, 6. Throws UnsupportedDegree otherwise.
  static QuadratureRule make(int degree);
};

}  // namespace surfstokes
