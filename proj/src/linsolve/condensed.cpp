#include "ripm/linsolve.hpp"

namespace ripm {

CondensedVector& CondensedVector::operator+=(const CondensedVector& o) {
  x += o.x;
  y += o.y;
  return *this;
}

CondensedVector& CondensedVector::operator*=(double a) {
  x *= a;
  y *= a;
  return *this;
}

double inner(const CondensedVector& a, const CondensedVector& b) {
  return inner(a.x, b.x) + a.y.dot(b.y);
}

void axpy(double a, const CondensedVector& x, CondensedVector& y) {
  axpy(a, x.x, y.x);
  y.y += a * x.y;
}

std::string to_string(CrStatus status) {
  switch (status) {
    case CrStatus::converged: return "converged";
    case CrStatus::max_iter: return "max_iter";
    case CrStatus::breakdown: return "breakdown";
  }
  return "unknown";
}

CondensedOperator::CondensedOperator(const KktSystem& system) : system_(&system) {
  require_interior(system.iterate(), "CondensedOperator");
  z_over_s_ = system.iterate().z.cwiseQuotient(system.iterate().s);
}

TangentVector CondensedOperator::theta(const TangentVector& dx) const {
  const ConstraintOps ops = system_->constraints();
  const Vector t = z_over_s_.cwiseProduct(ops.Gx_adjoint(dx));
  return ops.Gx_apply(t);
}

TangentVector CondensedOperator::apply_reduced(const TangentVector& v) const {
  // Tangent part of v.
  const TangentVector dx = system_->manifold().proj(system_->iterate().x, v);
  TangentVector out = system_->hess_lagrangian(dx);
  out += theta(dx);
  return out;
}

CondensedVector CondensedOperator::apply(const CondensedVector& v) const {
  require(v.y.size() == system_->problem().l(), "condensed_apply: dy must have length l");
  const ConstraintOps ops = system_->constraints();
  CondensedVector out;
  out.x = apply_reduced(v.x);
  if (v.y.size() > 0) out.x += ops.Hx_apply(v.y);
  out.y = ops.Hx_adjoint(v.x);
  return out;
}

CondensedVector condensed_rhs(const KktSystem& system, double mu) {
  const Iterate& w = system.iterate();
  require_interior(w, "condensed_rhs");
  const KktValue& F = system.field();
  const Vector inner_term =
      (w.z.cwiseProduct(F.dz) + Vector::Constant(w.z.size(), mu) - F.ds).cwiseQuotient(w.s);
  CondensedVector rhs;
  rhs.x = -F.dx;
  rhs.x -= system.constraints().Gx_apply(inner_term);
  rhs.y = -F.dy;
  return rhs;
}

DzDs recover_dz_ds(const KktSystem& system, double mu, const TangentVector& dx) {
  const Iterate& w = system.iterate();
  require_interior(w, "recover_dz_ds");
  const KktValue& F = system.field();
  const Vector mu_e = Vector::Constant(w.z.size(), mu);
  const Vector gdx_fz = system.constraints().Gx_adjoint(dx) + F.dz;
  DzDs out;
  out.dz = (w.z.cwiseProduct(gdx_fz) + mu_e - F.ds).cwiseQuotient(w.s);
  out.ds = -gdx_fz;
  return out;
}

NewtonStep solve_newton(const KktSystem& system, double mu, double cr_tol, int cr_max_iter) {
  const CondensedOperator op(system);
  CondensedVector rhs = condensed_rhs(system, mu);
  NewtonStep step;
  if (system.problem().l() == 0) {
    auto result = cr_solve(op, rhs.x, cr_tol, cr_max_iter);
    step.dw.dx = std::move(result.solution);
    step.dw.dy = Vector(0);
    step.report = result.report;
  } else {
    auto result = cr_solve(op, rhs, cr_tol, cr_max_iter);
    step.dw.dx = std::move(result.solution.x);
    step.dw.dy = std::move(result.solution.y);
    step.report = result.report;
  }
  step.dw.dx = system.manifold().proj(system.iterate().x, step.dw.dx);
  DzDs zs = recover_dz_ds(system, mu, step.dw.dx);
  step.dw.dz = std::move(zs.dz);
  step.dw.ds = std::move(zs.ds);
  return step;
}

double newton_slope_error(const KktSystem& system, double mu, const ProductTangent& dw) {
  ProductTangent res = system.apply(dw);
  res += system.field();
  res.ds.array() -= mu;
  return 2.0 * inner(system.field(), res);
}

NewtonStep refine_newton(const KktSystem& system, double mu, NewtonStep step, double cr_tol,
                         int cr_max_iter, double slope_tol, int max_rounds) {
  const Iterate& w = system.iterate();
  const double target = slope_tol * std::abs(2.0 * (-system.merit() + mu * w.z.dot(w.s)));
  const CondensedOperator op(system);
  const CondensedVector rhs = condensed_rhs(system, mu);
  const double rhs_norm = std::sqrt(inner(rhs, rhs));
  double err = std::abs(newton_slope_error(system, mu, step.dw));

  for (int round = 0; round < max_rounds && err > target; ++round) {
    CondensedVector r = op.apply(CondensedVector{step.dw.dx, step.dw.dy});
    r *= -1.0;
    r += rhs;
    r.x = system.manifold().proj(w.x, r.x);
    CondensedVector delta;
    CrReport rep;
    if (system.problem().l() == 0) {
      auto result = cr_solve(op, r.x, cr_tol, cr_max_iter);
      delta.x = std::move(result.solution);
      delta.y = Vector(0);
      rep = result.report;
    } else {
      auto result = cr_solve(op, r, cr_tol, cr_max_iter);
      delta = std::move(result.solution);
      rep = result.report;
    }
    step.report.iterations += rep.iterations;

    NewtonStep trial = step;
    trial.dw.dx += system.manifold().proj(w.x, delta.x);
    trial.dw.dy += delta.y;
    DzDs zs = recover_dz_ds(system, mu, trial.dw.dx);
    trial.dw.dz = std::move(zs.dz);
    trial.dw.ds = std::move(zs.ds);
    const double trial_err = std::abs(newton_slope_error(system, mu, trial.dw));
    if (!(trial_err < err)) break;
    err = trial_err;
    step.dw = std::move(trial.dw);
    if (rhs_norm > 0.0) {
      CondensedVector res = op.apply(CondensedVector{step.dw.dx, step.dw.dy});
      res *= -1.0;
      res += rhs;
      step.report.relative_residual = std::sqrt(inner(res, res)) / rhs_norm;
    }
    if (rep.status == CrStatus::breakdown) break;
  }
  return step;
}

CondensedVector condensed_apply(const Problem& problem, const Iterate& w,
                                const CondensedVector& v) {
  const KktSystem system(problem, w);
  return CondensedOperator(system).apply(v);
}

}  // namespace ripm
