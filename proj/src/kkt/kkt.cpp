#include "ripm/kkt.hpp"

#include <algorithm>
#include <cmath>

namespace ripm {

KktSystem::KktSystem(const Problem& problem, Iterate w) : problem_(&problem), w_(std::move(w)) {
  const Manifold& mf = problem.manifold();
  mf.check_point(w_.x, "KktSystem");
  require(w_.y.size() == problem.l(), "KktSystem: y must have length l");
  require(w_.z.size() == problem.m() && w_.s.size() == problem.m(),
          "KktSystem: z and s must have length m");

  g_ = problem.inequalities().values(w_.x);
  h_ = problem.l() > 0 ? problem.equalities().values(w_.x) : Vector(0);
  egrad_lagrangian_ = lagrangian_egrad(problem, w_.x, w_.y, w_.z);

  // grad_x L, projected onto T_x M a second time.
  field_.dx = mf.proj(w_.x, mf.egrad2rgrad(w_.x, egrad_lagrangian_));
  field_.dy = h_;
  field_.dz = g_ + w_.s;
  field_.ds = w_.z.cwiseProduct(w_.s);
  field_norm_ = field_.norm();
}

TangentVector KktSystem::hess_lagrangian(const TangentVector& dx) const {
  const Manifold& mf = manifold();
  const Matrix ehess = lagrangian_ehess(*problem_, w_.x, w_.y, w_.z, mf.to_ambient(w_.x, dx));
  return mf.ehess2rhess(w_.x, egrad_lagrangian_, ehess, dx);
}

void KktSystem::check_direction(const ProductTangent& dw, const char* where) const {
  manifold().check_tangent(w_.x, dw.dx, where);
  require(dw.dy.size() == w_.y.size() && dw.dz.size() == w_.z.size() &&
              dw.ds.size() == w_.s.size(),
          std::string(where) + ": block sizes do not match the iterate");
}

ProductTangent KktSystem::apply(const ProductTangent& dw) const {
  check_direction(dw, "nablaF_apply");
  const ConstraintOps ops = constraints();
  ProductTangent out;
  out.dx = hess_lagrangian(dw.dx);
  out.dx += ops.Gx_apply(dw.dz);
  if (problem_->l() > 0) out.dx += ops.Hx_apply(dw.dy);
  out.dy = ops.Hx_adjoint(dw.dx);
  out.dz = ops.Gx_adjoint(dw.dx) + dw.ds;
  out.ds = w_.z.cwiseProduct(dw.ds) + w_.s.cwiseProduct(dw.dz);
  return out;
}

ProductTangent KktSystem::adjoint_apply(const ProductTangent& v) const {
  check_direction(v, "nablaF_adjoint_apply");
  const ConstraintOps ops = constraints();
  ProductTangent out;
  out.dx = hess_lagrangian(v.dx);
  out.dx += ops.Gx_apply(v.dz);
  if (problem_->l() > 0) out.dx += ops.Hx_apply(v.dy);
  out.dy = ops.Hx_adjoint(v.dx);
  out.dz = ops.Gx_adjoint(v.dx) + w_.s.cwiseProduct(v.ds);
  out.ds = v.dz + w_.z.cwiseProduct(v.ds);
  return out;
}

ProductTangent KktSystem::merit_gradient() const { return 2.0 * adjoint_apply(field_); }

double KktSystem::kkt_residual() const {
  double sum = field_.dx.squared_norm();
  for (Index i = 0; i < g_.size(); ++i) {
    const double zi = w_.z(i);
    const double gi = g_(i);
    const double neg_z = std::min(zi, 0.0);
    const double pos_g = std::max(gi, 0.0);
    sum += neg_z * neg_z + pos_g * pos_g + (zi * gi) * (zi * gi);
  }
  sum += h_.squaredNorm();
  return std::sqrt(sum);
}

KktValue kkt_field(const Problem& problem, const Iterate& w) {
  return KktSystem(problem, w).field();
}

ProductTangent nablaF_apply(const Problem& problem, const Iterate& w, const ProductTangent& dw) {
  return KktSystem(problem, w).apply(dw);
}

ProductTangent nablaF_adjoint_apply(const Problem& problem, const Iterate& w,
                                    const ProductTangent& v) {
  return KktSystem(problem, w).adjoint_apply(v);
}

double merit(const Problem& problem, const Iterate& w) { return KktSystem(problem, w).merit(); }

ProductTangent grad_merit(const Problem& problem, const Iterate& w) {
  return KktSystem(problem, w).merit_gradient();
}

double kkt_residual(const Problem& problem, const Iterate& w) {
  return KktSystem(problem, w).kkt_residual();
}

bool strictly_interior(const Iterate& w) {
  return (w.z.size() == 0 || w.z.minCoeff() > 0.0) && (w.s.size() == 0 || w.s.minCoeff() > 0.0);
}

void require_interior(const Iterate& w, const char* where) {
  if (!strictly_interior(w))
    throw InteriorViolation(std::string(where) + ": z and s must be strictly positive");
}

}  // namespace ripm
