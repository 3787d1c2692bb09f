#include <doctest.h>

#include <cmath>

#include "surfstokes/quadrature.hpp"

using namespace surfstokes;

namespace {
double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}
}  // namespace

TEST_CASE("supported rules have positive weights summing to the area") {
  for (int degree : {2, 4, 6}) {
    const QuadratureRule rule = QuadratureRule::make(degree);
    double sum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(sum == doctest::Approx(0.5).epsilon(1e-15));
  }
}

TEST_CASE("degree six rule integrates all monomials up to degree six") {
  const QuadratureRule rule = QuadratureRule::make(6);
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; a + b <= 6; ++b) {
      double s = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q)
        s += rule.weights[q] * std::pow(rule.points[q][0], a) *
             std::pow(rule.points[q][1], b);
      CHECK(std::abs(s - factorial(a) * factorial(b) / factorial(a + b + 2)) <=
            1e-15);
    }
  }
}

TEST_CASE("bubble moments") {
  const QuadratureRule rule = QuadratureRule::make(6);
  auto bubble = [](double x, double y) { return (1.0 - x - y) * x * y; };
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double b = bubble(rule.points[q][0], rule.points[q][1]);
    b1 += rule.weights[q] * b;
    b2 += rule.weights[q] * b * b;
  }
  CHECK(b1 == doctest::Approx(1.0 / 120.0).epsilon(1e-14));
  // (2!)^3 / 8! = 8/40320
  CHECK(b2 == doctest::Approx(1.0 / 5040.0).epsilon(1e-13));
}

TEST_CASE("unsupported degrees are rejected") {
  CHECK_THROWS_AS(QuadratureRule::make(3), UnsupportedDegree);
  CHECK_THROWS_AS(QuadratureRule::make(8), UnsupportedDegree);
}
