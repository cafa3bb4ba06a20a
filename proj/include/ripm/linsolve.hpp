#pragma once

// Newton systems for the perturbed KKT field.
//
// Eliminating ds and dz from nabla F(w)[dw] = -F(w) + mu e_hat leaves the
// symmetric condensed system on T_x M x R^l
//
//   [ A_w  H_x ] [dx]   [c]      A_w = Hess_x L + G_x S^-1 Z G_x*
//   [ H_x*  0  ] [dy] = [q],     c = -Fx - G_x S^-1 (Z Fz + mu e - Fs),  q = -Fy
//
// which is solved matrix-free with the conjugate residual method.

#include <cmath>
#include <limits>
#include <string>

#include "ripm/kkt.hpp"

namespace ripm {

/// Element of T_x M x R^l.
struct CondensedVector {
  TangentVector x;
  Vector y;

  CondensedVector& operator+=(const CondensedVector& o);
  CondensedVector& operator*=(double a);
  double squared_norm() const { return x.squared_norm() + y.squaredNorm(); }
};

double inner(const CondensedVector& a, const CondensedVector& b);
void axpy(double a, const CondensedVector& x, CondensedVector& y);

inline double inner(const Vector& a, const Vector& b) { return a.dot(b); }
inline void axpy(double a, const Vector& x, Vector& y) { y += a * x; }

/// (dx, dy) -> (A_w dx + H_x dy, H_x* dx). Requires (z, s) > 0.
class CondensedOperator {
 public:
  explicit CondensedOperator(const KktSystem& system);

  CondensedVector apply(const CondensedVector& v) const;
  CondensedVector operator()(const CondensedVector& v) const { return apply(v); }

  /// A_w dx (the whole operator when l = 0).
  TangentVector apply_reduced(const TangentVector& dx) const;
  TangentVector operator()(const TangentVector& dx) const { return apply_reduced(dx); }

  /// Theta dx = G_x S^-1 Z G_x* dx.
  TangentVector theta(const TangentVector& dx) const;

  const KktSystem& system() const { return *system_; }

 private:
  const KktSystem* system_;
  Vector z_over_s_;
};

enum class CrStatus { converged, max_iter, breakdown };

std::string to_string(CrStatus status);

struct CrReport {
  int iterations = 0;
  double relative_residual = 0.0;
  CrStatus status = CrStatus::converged;
};

template <class Vec>
struct CrResult {
  Vec solution;
  CrReport report;
};

/// Conjugate residual method for a self-adjoint operator, started from zero.
///
/// Each loop iteration applies the operator exactly once; A p is carried by
/// the recurrence A p_{n+1} = A r_{n+1} + beta_n A p_n. Stops when
/// |r_n| / |rhs| <= tol or after max_iter iterations. On breakdown
/// (<r, A r> or <Ap, Ap> vanishing) the iterate with the smallest residual
/// seen so far is returned.
template <class Vec, class Op>
CrResult<Vec> cr_solve(const Op& op, const Vec& rhs, double tol, int max_iter) {
  CrResult<Vec> out;
  Vec v = rhs;
  v *= 0.0;
  const double rhs_norm = std::sqrt(inner(rhs, rhs));
  if (rhs_norm == 0.0) {
    out.solution = std::move(v);
    return out;
  }

  Vec r = rhs;
  Vec p = r;
  Vec Ar = op(r);
  Vec Ap = Ar;
  double rAr = inner(r, Ar);
  double res = rhs_norm;

  Vec best = v;
  double best_res = res;
  int n = 0;
  CrStatus status = CrStatus::max_iter;

  while (true) {
    if (res / rhs_norm <= tol) {
      status = CrStatus::converged;
      break;
    }
    if (n >= max_iter) {
      status = CrStatus::max_iter;
      break;
    }
    const double ApAp = inner(Ap, Ap);
    if (std::abs(rAr) <= 1e-300 * res * res || ApAp <= std::numeric_limits<double>::min()) {
      status = CrStatus::breakdown;
      break;
    }
    const double alpha = rAr / ApAp;
    axpy(alpha, p, v);
    axpy(-alpha, Ap, r);
    ++n;
    res = std::sqrt(inner(r, r));
    if (res < best_res) {
      best_res = res;
      best = v;
    }
    if (res / rhs_norm <= tol) {
      status = CrStatus::converged;
      break;
    }
    if (n >= max_iter) break;

    Ar = op(r);  // the only operator application per iteration
    const double rAr_next = inner(r, Ar);
    const double beta = rAr_next / rAr;
    rAr = rAr_next;
    p *= beta;
    p += r;
    Ap *= beta;
    Ap += Ar;
  }

  if (status == CrStatus::breakdown && best_res < res) {
    v = best;
    res = best_res;
  }
  out.solution = std::move(v);
  out.report.iterations = n;
  out.report.relative_residual = res / rhs_norm;
  out.report.status = status;
  return out;
}

/// Right-hand side (c, q) of the condensed system. Requires (z, s) > 0.
CondensedVector condensed_rhs(const KktSystem& system, double mu);

struct DzDs {
  Vector dz;
  Vector ds;
};

/// dz = S^-1 [Z (G_x* dx + Fz) + mu e - Fs],  ds = -(G_x* dx + Fz)
/// (= Z^-1 (mu e - Fs - S dz) in exact arithmetic, without the division by z).
DzDs recover_dz_ds(const KktSystem& system, double mu, const TangentVector& dx);

struct NewtonStep {
  ProductTangent dw;
  CrReport report;
};

/// Solve nabla F(w)[dw] = -F(w) + mu e_hat through the condensed system. With
/// l = 0 only A_w dx = c on T_x M is solved.
NewtonStep solve_newton(const KktSystem& system, double mu, double cr_tol, int cr_max_iter);

/// 2 <F, nabla F[dw] + F - mu e_hat>: the amount by which <grad phi, dw>
/// differs from 2(-phi + mu z^T s) for an inexact Newton step.
double newton_slope_error(const KktSystem& system, double mu, const ProductTangent& dw);

/// Iterative refinement: while |newton_slope_error| > slope_tol |2(-phi + mu z^T s)|,
/// rerun CR on the true condensed residual and add the correction. At most
/// max_rounds extra CR runs; a round that does not reduce the slope error is
/// discarded. CR iterations are accumulated in the report.
NewtonStep refine_newton(const KktSystem& system, double mu, NewtonStep step, double cr_tol,
                         int cr_max_iter, double slope_tol, int max_rounds);

CondensedVector condensed_apply(const Problem& problem, const Iterate& w,
                                const CondensedVector& v);

}  // namespace ripm
