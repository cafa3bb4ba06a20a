#include "ripm/problem.hpp"

namespace ripm {

Matrix EmptyConstraints::egrad_combination(const Point&, const Vector& u) const {
  require(u.size() == 0, "EmptyConstraints: expected empty coefficient vector");
  return Matrix::Zero(rows_, cols_);
}

Matrix EmptyConstraints::ehess_combination(const Point&, const Vector& u, const Matrix&) const {
  require(u.size() == 0, "EmptyConstraints: expected empty coefficient vector");
  return Matrix::Zero(rows_, cols_);
}

Vector NonnegativityConstraints::values(const Point& x) const {
  require_shape(x.X, rows_, cols_, "NonnegativityConstraints::values");
  return -x.X.reshaped();
}

Matrix NonnegativityConstraints::egrad_combination(const Point&, const Vector& u) const {
  require(u.size() == size(), "NonnegativityConstraints: coefficient size mismatch");
  return -u.reshaped(rows_, cols_);
}

Vector NonnegativityConstraints::egrad_pairing(const Point&, const Matrix& a) const {
  require_shape(a, rows_, cols_, "NonnegativityConstraints::egrad_pairing");
  return -a.reshaped();
}

Matrix NonnegativityConstraints::ehess_combination(const Point&, const Vector& u,
                                                   const Matrix&) const {
  require(u.size() == size(), "NonnegativityConstraints: coefficient size mismatch");
  return Matrix::Zero(rows_, cols_);
}

ComponentConstraints::ComponentConstraints(std::vector<Component> components)
    : components_(std::move(components)) {
  for (const auto& c : components_)
    require(c.value && c.egrad && c.ehess, "ComponentConstraints: missing callback");
}

Vector ComponentConstraints::values(const Point& x) const {
  Vector v(size());
  for (Index i = 0; i < size(); ++i) v(i) = components_[i].value(x);
  return v;
}

Matrix ComponentConstraints::egrad_combination(const Point& x, const Vector& u) const {
  require(u.size() == size(), "ComponentConstraints: coefficient size mismatch");
  Matrix out = Matrix::Zero(x.X.rows(), x.X.cols());
  for (Index i = 0; i < size(); ++i) out += u(i) * components_[i].egrad(x);
  return out;
}

Vector ComponentConstraints::egrad_pairing(const Point& x, const Matrix& a) const {
  Vector v(size());
  for (Index i = 0; i < size(); ++i) v(i) = components_[i].egrad(x).cwiseProduct(a).sum();
  return v;
}

Matrix ComponentConstraints::ehess_combination(const Point& x, const Vector& u,
                                               const Matrix& xi) const {
  require(u.size() == size(), "ComponentConstraints: coefficient size mismatch");
  Matrix out = Matrix::Zero(x.X.rows(), x.X.cols());
  for (Index i = 0; i < size(); ++i) {
    if (u(i) != 0.0) out += u(i) * components_[i].ehess(x, xi);
  }
  return out;
}

Problem::Problem(ManifoldPtr manifold, Objective objective, ConstraintSetPtr inequalities,
                 ConstraintSetPtr equalities)
    : manifold_(std::move(manifold)),
      objective_(std::move(objective)),
      inequalities_(std::move(inequalities)),
      equalities_(std::move(equalities)) {
  require(manifold_ != nullptr, "Problem: manifold is required");
  require(objective_.value && objective_.egrad && objective_.ehess,
          "Problem: objective needs value, egrad and ehess");
  require(inequalities_ != nullptr && inequalities_->size() >= 1,
          "Problem: interior point methods need at least one inequality");
  if (!equalities_) {
    equalities_ = std::make_shared<EmptyConstraints>(manifold_->ambient_rows(),
                                                     manifold_->ambient_cols());
  }
}

ConstraintOps::ConstraintOps(const Problem& problem, const Point& x)
    : problem_(&problem), x_(&x) {}

TangentVector ConstraintOps::Gx_apply(const Vector& u) const {
  require(u.size() == problem_->m(), "Gx_apply: expected a vector of length m");
  return problem_->manifold().proj(*x_, problem_->inequalities().egrad_combination(*x_, u));
}

// For tangent xi, <proj(egrad g_i), xi> = <egrad g_i, xi>: one ambient
// pairing per component.
Vector ConstraintOps::Gx_adjoint(const TangentVector& xi) const {
  const Manifold& mf = problem_->manifold();
  mf.check_tangent(*x_, xi, "Gx_adjoint");
  return problem_->inequalities().egrad_pairing(*x_, mf.to_ambient(*x_, xi));
}

TangentVector ConstraintOps::Hx_apply(const Vector& v) const {
  require(v.size() == problem_->l(), "Hx_apply: expected a vector of length l");
  if (problem_->l() == 0) return problem_->manifold().zero_tangent(*x_);
  return problem_->manifold().proj(*x_, problem_->equalities().egrad_combination(*x_, v));
}

Vector ConstraintOps::Hx_adjoint(const TangentVector& xi) const {
  const Manifold& mf = problem_->manifold();
  mf.check_tangent(*x_, xi, "Hx_adjoint");
  if (problem_->l() == 0) return Vector(0);
  return problem_->equalities().egrad_pairing(*x_, mf.to_ambient(*x_, xi));
}

TangentVector ConstraintOps::inequality_gradient(Index i) const {
  require(i >= 0 && i < problem_->m(), "inequality_gradient: index out of range");
  return Gx_apply(Vector::Unit(problem_->m(), i));
}

TangentVector ConstraintOps::equality_gradient(Index i) const {
  require(i >= 0 && i < problem_->l(), "equality_gradient: index out of range");
  return Hx_apply(Vector::Unit(problem_->l(), i));
}

Matrix lagrangian_egrad(const Problem& problem, const Point& x, const Vector& y,
                        const Vector& z) {
  require(y.size() == problem.l(), "lagrangian: y must have length l");
  require(z.size() == problem.m(), "lagrangian: z must have length m");
  Matrix g = problem.objective().egrad(x);
  g += problem.inequalities().egrad_combination(x, z);
  if (problem.l() > 0) g += problem.equalities().egrad_combination(x, y);
  return g;
}

Matrix lagrangian_ehess(const Problem& problem, const Point& x, const Vector& y,
                        const Vector& z, const Matrix& xi) {
  Matrix h = problem.objective().ehess(x, xi);
  h += problem.inequalities().ehess_combination(x, z, xi);
  if (problem.l() > 0) h += problem.equalities().ehess_combination(x, y, xi);
  return h;
}

TangentVector lagrangian_gradx(const Problem& problem, const Point& x, const Vector& y,
                               const Vector& z) {
  return problem.manifold().egrad2rgrad(x, lagrangian_egrad(problem, x, y, z));
}

// The Weingarten correction is linear in the Euclidean gradient, so summing
// the ambient data first and converting once equals converting every term.
TangentVector lagrangian_hessvec(const Problem& problem, const Point& x, const Vector& y,
                                 const Vector& z, const TangentVector& dx) {
  const Manifold& mf = problem.manifold();
  const Matrix egrad = lagrangian_egrad(problem, x, y, z);
  const Matrix ehess = lagrangian_ehess(problem, x, y, z, mf.to_ambient(x, dx));
  return mf.ehess2rhess(x, egrad, ehess, dx);
}

}  // namespace ripm
