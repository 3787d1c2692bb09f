#include "surfstokes/quadrature.hpp"

#include <cmath>

namespace surfstokes {

namespace {

// Append the three permutations of barycentric (a, a, 1-2a) as reference
// coordinates (l2, l3); w is the area fraction of each point.
void orbit3(std::vector<Vec2>& pts, std::vector<double>& wts, double a, double w) {
  const double c = 1.0 - 2.0 * a;
  pts.emplace_back(a, a);
  pts.emplace_back(c, a);
  pts.emplace_back(a, c);
  wts.insert(wts.end(), 3, 0.5 * w);
}

// All six permutations of barycentric (a, b, 1-a-b).
void orbit6(std::vector<Vec2>& pts, std::vector<double>& wts, double a, double b,
            double w) {
  const double c = 1.0 - a - b;
  const double l[6][2] = {{b, c}, {c, b}, {a, c}, {c, a}, {a, b}, {b, a}};
  for (const auto& p : l) pts.emplace_back(p[0], p[1]);
  wts.insert(wts.end(), 6, 0.5 * w);
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void verify_exactness(const QuadratureRule& rule) {
  for (int a = 0; a + 0 <= rule.degree; ++a) {
    for (int b = 0; a + b <= rule.degree; ++b) {
      double s = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q)
        s += rule.weights[q] * std::pow(rule.points[q][0], a) *
             std::pow(rule.points[q][1], b);
      const double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
      if (std::abs(s - exact) > 1e-15)
        throw UnsupportedDegree("quadrature rule fails its exactness check");
    }
  }
}

}  // namespace

QuadratureRule QuadratureRule::make(int degree) {
  QuadratureRule rule;
  rule.degree = degree;
  switch (degree) {
    case 2:
      orbit3(rule.points, rule.weights, 1.0 / 6.0, 1.0 / 3.0);
      break;
    case 4:
      orbit3(rule.points, rule.weights, 0.445948490915964886318329253883,
             0.223381589678011465695007008433);
      orbit3(rule.points, rule.weights, 0.0915762135097707434595714634022,
             0.109951743655321868638326324966);
      break;
    case 6:
      orbit3(rule.points, rule.weights, 0.0630890144915022283403316028708,
             0.0508449063702068169209368091069);
      orbit3(rule.points, rule.weights, 0.249286745170910421291638553107,
             0.116786275726379366025289611386);
      orbit6(rule.points, rule.weights, 0.0531450498448169473532496716314,
             0.310352451033784405416607733957,
             0.0828510756183735751935534564204);
      break;
    default:
      throw UnsupportedDegree("quadrature degree must be one of {2, 4, 6}");
  }
  verify_exactness(rule);
  return rule;
}

}  // namespace surfstokes
