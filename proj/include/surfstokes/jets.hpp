#pragma once

#include <cmath>

#include "surfstokes/types.hpp"

namespace surfstokes {

/// Second-order forward-mode scalar: carries a value together with its full
/// gradient and Hessian with respect to the three ambient coordinates.
/// Arithmetic on Jet2 propagates derivatives exactly, so evaluating a closed
/// form expression at a seeded point yields its value, Jacobian row and
/// Hessian with no truncation error.
struct Jet2 {
  double v = 0.0;
  Vec3 g = Vec3::Zero();
  Mat3 h = Mat3::Zero();

  Jet2() = default;
  explicit Jet2(double value) : v(value) {}

  static Jet2 constant(double c) { return Jet2(c); }

  /// Seed coordinate `axis` at value c: gradient e_axis, zero Hessian.
  static Jet2 variable(double c, int axis) {
    Jet2 j(c);
    j.g[axis] = 1.0;
    return j;
  }

  Jet2 operator-() const {
    Jet2 r;
    r.v = -v;
    r.g = -g;
    r.h = -h;
    return r;
  }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.v = a.v + b.v;
  r.g = a.g + b.g;
  r.h = a.h + b.h;
  return r;
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.v = a.v - b.v;
  r.g = a.g - b.g;
  r.h = a.h - b.h;
  return r;
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.v = a.v * b.v;
  r.g = a.g * b.v + b.g * a.v;
  r.h = a.h * b.v + b.h * a.v + a.g * b.g.transpose() + b.g * a.g.transpose();
  return r;
}

inline Jet2 operator+(const Jet2& a, double s) { return a + Jet2::constant(s); }
inline Jet2 operator+(double s, const Jet2& a) { return a + Jet2::constant(s); }
inline Jet2 operator-(const Jet2& a, double s) { return a - Jet2::constant(s); }
inline Jet2 operator-(double s, const Jet2& a) { return Jet2::constant(s) - a; }

inline Jet2 operator*(const Jet2& a, double s) {
  Jet2 r;
  r.v = a.v * s;
  r.g = a.g * s;
  r.h = a.h * s;
  return r;
}
inline Jet2 operator*(double s, const Jet2& a) { return a * s; }

/// Reciprocal via 1/u: d(1/u) = -u'/u^2, d2(1/u) = -u''/u^2 + 2 u' u'^T/u^3.
inline Jet2 reciprocal(const Jet2& a) {
  Jet2 r;
  const double inv = 1.0 / a.v;
  r.v = inv;
  r.g = -a.g * (inv * inv);
  r.h = -a.h * (inv * inv) + 2.0 * inv * inv * inv * a.g * a.g.transpose();
  return r;
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }
inline Jet2 operator/(const Jet2& a, double s) { return a * (1.0 / s); }
inline Jet2 operator/(double s, const Jet2& a) { return reciprocal(a) * s; }

inline Jet2 sqrt(const Jet2& a) {
  Jet2 r;
  const double s = std::sqrt(a.v);
  r.v = s;
  r.g = a.g / (2.0 * s);
  r.h = a.h / (2.0 * s) - a.g * a.g.transpose() / (4.0 * s * s * s);
  return r;
}

using Jet2Vec3 = std::array<Jet2, 3>;

/// Seed the three ambient coordinates at x.
inline Jet2Vec3 seed_point(const Vec3& x) {
  return {Jet2::variable(x[0], 0), Jet2::variable(x[1], 1),
          Jet2::variable(x[2], 2)};
}

inline Jet2 dot(const Jet2Vec3& a, const Jet2Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace surfstokes
