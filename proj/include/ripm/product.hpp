#pragma once

// The product manifold N = M x R^l x R^m x R^m carrying primal-dual iterates
// w = (x, y, z, s), and its tangent space T_w N.

#include "ripm/manifold.hpp"

namespace ripm {

/// Primal-dual iterate: manifold point, equality multipliers y, inequality
/// multipliers z and slacks s.
struct Iterate {
  Point x;
  Vector y;
  Vector z;
  Vector s;
};

/// Element of T_w N. Also carries KKT field values (Fx, Fy, Fz, Fs).
struct ProductTangent {
  TangentVector dx;
  Vector dy;
  Vector dz;
  Vector ds;

  ProductTangent& operator+=(const ProductTangent& o);
  ProductTangent& operator-=(const ProductTangent& o);
  ProductTangent& operator*=(double a);
  double squared_norm() const;
  double norm() const;
};

ProductTangent operator+(ProductTangent a, const ProductTangent& b);
ProductTangent operator-(ProductTangent a, const ProductTangent& b);
ProductTangent operator*(double a, ProductTangent v);

double inner(const ProductTangent& a, const ProductTangent& b);
void axpy(double a, const ProductTangent& x, ProductTangent& y);

ProductTangent zero_product_tangent(const Manifold& manifold, const Iterate& w);

/// (R_x(alpha dx), y + alpha dy, z + alpha dz, s + alpha ds)
Iterate product_retract(const Manifold& manifold, const Iterate& w, const ProductTangent& dw,
                        double alpha);

/// Total number of coordinates d + l + 2m.
Index product_dim(const Manifold& manifold, const Iterate& w);

}  // namespace ripm
