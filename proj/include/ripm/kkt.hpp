#pragma once

// KKT vector field F(w) = (grad_x L, h(x), g(x) + s, ZSe) on the product
// manifold, its covariant derivative and adjoint as matrix-free operators,
// the merit function phi = |F|^2 and the reporting residual.

#include "ripm/problem.hpp"
#include "ripm/product.hpp"

namespace ripm {

/// Value of F at w: Fx = grad_x L, Fy = h(x), Fz = g(x) + s, Fs = ZSe.
using KktValue = ProductTangent;

/// Everything about F that depends only on w, evaluated once.
///
/// Keeps a reference to the problem; the problem must outlive the system.
class KktSystem {
 public:
  KktSystem(const Problem& problem, Iterate w);

  const Problem& problem() const { return *problem_; }
  const Manifold& manifold() const { return problem_->manifold(); }
  const Iterate& iterate() const { return w_; }
  ConstraintOps constraints() const { return ConstraintOps(*problem_, w_.x); }

  const KktValue& field() const { return field_; }
  double field_norm() const { return field_norm_; }
  /// phi(w) = |F(w)|^2
  double merit() const { return field_norm_ * field_norm_; }
  /// g(x) and h(x)
  const Vector& g() const { return g_; }
  const Vector& h() const { return h_; }

  /// Hess_x L(w)[dx]
  TangentVector hess_lagrangian(const TangentVector& dx) const;

  /// nabla F(w)[dw] = (HessL dx + H dy + G dz, H* dx, G* dx + ds, Z ds + S dz)
  ProductTangent apply(const ProductTangent& dw) const;

  /// nabla F(w)*[v] = (HessL vx + H vy + G vz, H* vx, G* vx + S vs, vz + Z vs)
  ProductTangent adjoint_apply(const ProductTangent& v) const;

  /// grad phi(w) = 2 nabla F(w)*[F(w)]
  ProductTangent merit_gradient() const;

  /// sqrt(|grad_x L|^2 + sum([z_i]_-^2 + [g_i]_+^2 + (z_i g_i)^2) + sum h_i^2)
  double kkt_residual() const;

 private:
  void check_direction(const ProductTangent& dw, const char* where) const;

  const Problem* problem_;
  Iterate w_;
  Vector g_;
  Vector h_;
  Matrix egrad_lagrangian_;
  KktValue field_;
  double field_norm_ = 0.0;
};

KktValue kkt_field(const Problem& problem, const Iterate& w);
ProductTangent nablaF_apply(const Problem& problem, const Iterate& w, const ProductTangent& dw);
ProductTangent nablaF_adjoint_apply(const Problem& problem, const Iterate& w,
                                    const ProductTangent& v);
double merit(const Problem& problem, const Iterate& w);
ProductTangent grad_merit(const Problem& problem, const Iterate& w);
double kkt_residual(const Problem& problem, const Iterate& w);

/// Check that every entry of z and s is strictly positive.
bool strictly_interior(const Iterate& w);
void require_interior(const Iterate& w, const char* where);

}  // namespace ripm
