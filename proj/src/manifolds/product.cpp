#include "ripm/product.hpp"

#include <cmath>

namespace ripm {

ProductTangent& ProductTangent::operator+=(const ProductTangent& o) {
  dx += o.dx;
  dy += o.dy;
  dz += o.dz;
  ds += o.ds;
  return *this;
}

ProductTangent& ProductTangent::operator-=(const ProductTangent& o) {
  dx -= o.dx;
  dy -= o.dy;
  dz -= o.dz;
  ds -= o.ds;
  return *this;
}

ProductTangent& ProductTangent::operator*=(double a) {
  dx *= a;
  dy *= a;
  dz *= a;
  ds *= a;
  return *this;
}

double ProductTangent::squared_norm() const {
  return dx.squared_norm() + dy.squaredNorm() + dz.squaredNorm() + ds.squaredNorm();
}

double ProductTangent::norm() const { return std::sqrt(squared_norm()); }

ProductTangent operator+(ProductTangent a, const ProductTangent& b) { return a += b; }
ProductTangent operator-(ProductTangent a, const ProductTangent& b) { return a -= b; }
ProductTangent operator*(double a, ProductTangent v) { return v *= a; }

double inner(const ProductTangent& a, const ProductTangent& b) {
  return inner(a.dx, b.dx) + a.dy.dot(b.dy) + a.dz.dot(b.dz) + a.ds.dot(b.ds);
}

void axpy(double a, const ProductTangent& x, ProductTangent& y) {
  axpy(a, x.dx, y.dx);
  y.dy += a * x.dy;
  y.dz += a * x.dz;
  y.ds += a * x.ds;
}

ProductTangent zero_product_tangent(const Manifold& manifold, const Iterate& w) {
  return ProductTangent{manifold.zero_tangent(w.x), Vector::Zero(w.y.size()),
                        Vector::Zero(w.z.size()), Vector::Zero(w.s.size())};
}

Iterate product_retract(const Manifold& manifold, const Iterate& w, const ProductTangent& dw,
                        double alpha) {
  require(dw.dy.size() == w.y.size() && dw.dz.size() == w.z.size() &&
              dw.ds.size() == w.s.size(),
          "product_retract: direction does not match iterate dimensions");
  Iterate out;
  out.x = alpha == 0.0 ? w.x : manifold.retract(w.x, alpha * dw.dx);
  out.y = w.y + alpha * dw.dy;
  out.z = w.z + alpha * dw.dz;
  out.s = w.s + alpha * dw.ds;
  return out;
}

Index product_dim(const Manifold& manifold, const Iterate& w) {
  return manifold.dim() + w.y.size() + w.z.size() + w.s.size();
}

}  // namespace ripm
