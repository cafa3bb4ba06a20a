#pragma once

// Constrained problem on a manifold:
//
//   min f(x)  s.t.  h(x) = 0,  g(x) <= 0,  x in M
//
// All callbacks work in ambient coordinates; Riemannian quantities come from
// the manifold's projection and Weingarten corrections.

#include <functional>
#include <memory>
#include <vector>

#include "ripm/manifold.hpp"

namespace ripm {

struct Objective {
  std::function<double(const Point&)> value;
  std::function<Matrix(const Point&)> egrad;
  /// Euclidean Hessian applied to an ambient direction.
  std::function<Matrix(const Point&, const Matrix&)> ehess;
};

/// A vector-valued constraint map c: R^{rows x cols} -> R^count, accessed in
/// batch so that structured families (elementwise bounds) never loop over
/// components.
class ConstraintSet {
 public:
  virtual ~ConstraintSet() = default;

  virtual Index size() const = 0;
  virtual Vector values(const Point& x) const = 0;
  /// sum_i u_i * egrad c_i(x)
  virtual Matrix egrad_combination(const Point& x, const Vector& u) const = 0;
  /// ( <egrad c_i(x), a> )_i for an ambient matrix a
  virtual Vector egrad_pairing(const Point& x, const Matrix& a) const = 0;
  /// sum_i u_i * ehess c_i(x)[xi]
  virtual Matrix ehess_combination(const Point& x, const Vector& u, const Matrix& xi) const = 0;
};

using ConstraintSetPtr = std::shared_ptr<const ConstraintSet>;

/// No constraints (l = 0).
class EmptyConstraints final : public ConstraintSet {
 public:
  EmptyConstraints(Index rows, Index cols) : rows_(rows), cols_(cols) {}
  Index size() const override { return 0; }
  Vector values(const Point&) const override { return Vector(0); }
  Matrix egrad_combination(const Point&, const Vector&) const override;
  Vector egrad_pairing(const Point&, const Matrix&) const override { return Vector(0); }
  Matrix ehess_combination(const Point&, const Vector&, const Matrix&) const override;

 private:
  Index rows_, cols_;
};

/// g(X) = -vec(X), i.e. X >= 0 entrywise; component index is column-major.
class NonnegativityConstraints final : public ConstraintSet {
 public:
  NonnegativityConstraints(Index rows, Index cols) : rows_(rows), cols_(cols) {}
  Index size() const override { return rows_ * cols_; }
  Vector values(const Point& x) const override;
  Matrix egrad_combination(const Point& x, const Vector& u) const override;
  Vector egrad_pairing(const Point& x, const Matrix& a) const override;
  Matrix ehess_combination(const Point& x, const Vector& u, const Matrix& xi) const override;

 private:
  Index rows_, cols_;
};

/// General constraints given component by component.
class ComponentConstraints final : public ConstraintSet {
 public:
  using Component = Objective;

  explicit ComponentConstraints(std::vector<Component> components);
  Index size() const override { return static_cast<Index>(components_.size()); }
  Vector values(const Point& x) const override;
  Matrix egrad_combination(const Point& x, const Vector& u) const override;
  Vector egrad_pairing(const Point& x, const Matrix& a) const override;
  Matrix ehess_combination(const Point& x, const Vector& u, const Matrix& xi) const override;

 private:
  std::vector<Component> components_;
};

/// Problem instance. Immutable once built; callbacks must be pure.
class Problem {
 public:
  Problem(ManifoldPtr manifold, Objective objective, ConstraintSetPtr inequalities,
          ConstraintSetPtr equalities = nullptr);

  const Manifold& manifold() const { return *manifold_; }
  const ManifoldPtr& manifold_ptr() const { return manifold_; }
  const Objective& objective() const { return objective_; }
  const ConstraintSet& inequalities() const { return *inequalities_; }
  const ConstraintSet& equalities() const { return *equalities_; }
  /// Number of inequalities m (>= 1).
  Index m() const { return inequalities_->size(); }
  /// Number of equalities l (>= 0).
  Index l() const { return equalities_->size(); }

 private:
  ManifoldPtr manifold_;
  Objective objective_;
  ConstraintSetPtr inequalities_;
  ConstraintSetPtr equalities_;
};

/// The operators G_x: R^m -> T_x M, H_x: R^l -> T_x M and their adjoints at a
/// fixed point.
class ConstraintOps {
 public:
  ConstraintOps(const Problem& problem, const Point& x);

  /// sum_i u_i grad g_i(x)
  TangentVector Gx_apply(const Vector& u) const;
  /// ( <grad g_i(x), xi> )_i
  Vector Gx_adjoint(const TangentVector& xi) const;
  TangentVector Hx_apply(const Vector& v) const;
  Vector Hx_adjoint(const TangentVector& xi) const;

  TangentVector inequality_gradient(Index i) const;
  TangentVector equality_gradient(Index i) const;

  const Point& point() const { return *x_; }

 private:
  const Problem* problem_;
  const Point* x_;
};

/// grad f(x) + H_x y + G_x z
TangentVector lagrangian_gradx(const Problem& problem, const Point& x, const Vector& y,
                               const Vector& z);

/// Hess_x L(x, y, z)[dx]
TangentVector lagrangian_hessvec(const Problem& problem, const Point& x, const Vector& y,
                                 const Vector& z, const TangentVector& dx);

/// Euclidean gradient of the Lagrangian, egrad f + sum y_i egrad h_i + sum z_i egrad g_i.
Matrix lagrangian_egrad(const Problem& problem, const Point& x, const Vector& y,
                        const Vector& z);

/// Euclidean Hessian of the Lagrangian applied to an ambient direction.
Matrix lagrangian_ehess(const Problem& problem, const Point& x, const Vector& y,
                        const Vector& z, const Matrix& xi);

}  // namespace ripm
