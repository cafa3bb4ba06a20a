#pragma once

#include <cmath>
#include <memory>

#include "ripm/problem.hpp"
#include "ripm/product.hpp"

namespace ripm::test {

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline double rel(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

/// min 1/2 |x - a|^2 on R^{n x 1} subject to x >= 0.
inline Problem box_problem(const Vector& a) {
  const Index n = a.size();
  Objective f;
  f.value = [a](const Point& x) { return 0.5 * (x.X.col(0) - a).squaredNorm(); };
  f.egrad = [a](const Point& x) -> Matrix { return x.X.col(0) - a; };
  f.ehess = [](const Point&, const Matrix& xi) -> Matrix { return xi; };
  return Problem(make_euclidean(n, 1), f, std::make_shared<NonnegativityConstraints>(n, 1));
}

/// f = 0 on R^{n x 1} with the single inequality g(x) = c' x - b.
inline Problem linear_constraint_problem(const Vector& c, double b) {
  const Index n = c.size();
  Objective f;
  f.value = [](const Point&) { return 0.0; };
  f.egrad = [n](const Point&) -> Matrix { return Matrix::Zero(n, 1); };
  f.ehess = [n](const Point&, const Matrix&) -> Matrix { return Matrix::Zero(n, 1); };
  ComponentConstraints::Component g;
  g.value = [c, b](const Point& x) { return c.dot(x.X.col(0)) - b; };
  g.egrad = [c](const Point&) -> Matrix { return c; };
  g.ehess = [n](const Point&, const Matrix&) -> Matrix { return Matrix::Zero(n, 1); };
  return Problem(make_euclidean(n, 1), f,
                 std::make_shared<ComponentConstraints>(std::vector<ComponentConstraints::Component>{g}));
}

inline Point column_point(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return Point{v, {}, {}, {}};
}

inline TangentVector column_tangent(std::initializer_list<double> values) {
  return TangentVector(column_point(values).X);
}

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

inline Vector randv(Index n, Rng& rng) { return randn(n, 1, rng).col(0); }

inline ProductTangent random_product_tangent(const Manifold& m, const Iterate& w, Rng& rng) {
  return ProductTangent{m.rand_tangent(w.x, rng), randv(w.y.size(), rng), randv(w.z.size(), rng),
                        randv(w.s.size(), rng)};
}

}  // namespace ripm::test
