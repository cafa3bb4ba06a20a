#include <algorithm>
#include <cmath>

#include "ripm/diagnostics.hpp"

namespace ripm {

Objective constraint_combination(ConstraintSetPtr constraints, Vector weights) {
  require(constraints != nullptr && weights.size() == constraints->size(),
          "constraint_combination: weight size mismatch");
  Objective f;
  f.value = [c = constraints, u = weights](const Point& x) { return u.dot(c->values(x)); };
  f.egrad = [c = constraints, u = weights](const Point& x) { return c->egrad_combination(x, u); };
  f.ehess = [c = constraints, u = weights](const Point& x, const Matrix& xi) {
    return c->ehess_combination(x, u, xi);
  };
  return f;
}

double loglog_slope(const std::vector<double>& steps, const std::vector<double>& errors) {
  require(steps.size() == errors.size() && steps.size() >= 2, "loglog_slope: need >= 2 points");
  // Theil-Sen: median of pairwise slopes, insensitive to the few points at
  // either end of the range that sit in round-off or higher-order territory.
  std::vector<double> slopes;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    for (std::size_t j = i + 1; j < steps.size(); ++j) {
      const double dx = std::log10(steps[j]) - std::log10(steps[i]);
      const double dy = std::log10(std::max(errors[j], 1e-300)) -
                        std::log10(std::max(errors[i], 1e-300));
      slopes.push_back(dy / dx);
    }
  }
  const std::size_t mid = slopes.size() / 2;
  std::nth_element(slopes.begin(), slopes.begin() + static_cast<std::ptrdiff_t>(mid), slopes.end());
  if (slopes.size() % 2) return slopes[mid];
  const double upper = slopes[mid];
  std::nth_element(slopes.begin(), slopes.begin() + static_cast<std::ptrdiff_t>(mid - 1),
                   slopes.end());
  return 0.5 * (upper + slopes[mid - 1]);
}

Point second_order_retract(const Manifold& manifold, const Point& x, const TangentVector& xi) {
  if (manifold.kind() == ManifoldKind::stiefel)
    return manifold.project_point(x.X + manifold.to_ambient(x, xi));
  return manifold.retract(x, xi);
}

TaylorResult taylor_check(const Manifold& manifold, const Point& x, const Objective& f,
                          const TangentVector& xi, const TaylorOptions& options) {
  require(options.points >= 2 && options.t_min > 0.0 && options.t_max > options.t_min,
          "taylor_check: invalid step range");
  manifold.require_tangent(x, xi, "taylor_check");
  const double f0 = f.value(x);
  const Matrix eg = f.egrad(x);
  const TangentVector grad = manifold.egrad2rgrad(x, eg);
  const TangentVector hess = manifold.ehess2rhess(x, eg, f.ehess(x, manifold.to_ambient(x, xi)), xi);
  const double slope1 = inner(grad, xi);
  const double slope2 = inner(hess, xi);

  TaylorResult out;
  const double lmax = std::log10(options.t_max);
  const double lmin = std::log10(options.t_min);
  for (int i = 0; i < options.points; ++i) {
    const double t = std::pow(10.0, lmax + (lmin - lmax) * i / (options.points - 1));
    TangentVector step = xi;
    step *= t;
    const double f1 = f.value(manifold.retract(x, step));
    const double f2 = f.value(second_order_retract(manifold, x, step));
    out.steps.push_back(t);
    out.gradient_errors.push_back(std::abs(f1 - f0 - t * slope1));
    out.hessian_errors.push_back(std::abs(f2 - f0 - t * slope1 - 0.5 * t * t * slope2));
  }
  out.gradient_slope = loglog_slope(out.steps, out.gradient_errors);
  out.hessian_slope = loglog_slope(out.steps, out.hessian_errors);
  return out;
}

}  // namespace ripm
