#include "ripm/local_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace ripm {

void LocalConfig::validate() const {
  require(gamma_hat > 0.0 && gamma_hat < 1.0, "LocalConfig: gamma_hat must lie in (0, 1)");
  require(mu0 > 0.0, "LocalConfig: mu0 must be positive");
  require(max_iter >= 0, "LocalConfig: max_iter must be nonnegative");
  require(cr_tol > 0.0 && cr_max_iter > 0, "LocalConfig: invalid CR settings");
  require(divergence_factor > 1.0, "LocalConfig: divergence_factor must exceed 1");
}

double fraction_to_boundary(const Vector& z, const Vector& s, const Vector& dz, const Vector& ds,
                            double gamma) {
  require(z.size() == s.size() && dz.size() == z.size() && ds.size() == s.size(),
          "fraction_to_boundary: size mismatch");
  require(gamma > 0.0 && gamma <= 1.0, "fraction_to_boundary: gamma must lie in (0, 1]");
  if (!((z.array() > 0.0).all() && (s.array() > 0.0).all()))
    throw InteriorViolation("fraction_to_boundary: z and s must be strictly positive");
  double limit = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < z.size(); ++i) {
    if (dz(i) < 0.0) limit = std::min(limit, -z(i) / dz(i));
    if (ds(i) < 0.0) limit = std::min(limit, -s(i) / ds(i));
  }
  return std::min(1.0, gamma * limit);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

SolveReport local_solve(const Problem& problem, Iterate w0, const LocalConfig& config) {
  config.validate();
  require_interior(w0, "local_solve");
  const auto start = Clock::now();

  SolveReport report;
  KktSystem system(problem, std::move(w0));
  double mu_prev = 1.5 * config.mu0;
  double min_norm = system.field_norm();

  for (int k = 0;; ++k) {
    IterationRecord rec;
    rec.iteration = k;
    rec.field_norm = system.field_norm();
    rec.kkt_residual = system.kkt_residual();
    rec.elapsed_seconds = seconds_since(start);
    report.iterations = k;

    auto finish = [&](SolveStatus status, std::string message = {}) {
      rec.alpha = 0.0;
      report.history.push_back(rec);
      report.status = status;
      report.message = std::move(message);
    };

    if (!std::isfinite(rec.field_norm)) {
      finish(SolveStatus::numerical_failure, "non-finite KKT field");
      break;
    }
    if (rec.kkt_residual <= config.tol_kkt) {
      finish(SolveStatus::success);
      break;
    }
    min_norm = std::min(min_norm, rec.field_norm);
    if (rec.field_norm > config.divergence_factor * min_norm) {
      finish(SolveStatus::diverged, "|F| grew past the divergence guard");
      break;
    }
    if (k >= config.max_iter) {
      finish(SolveStatus::max_iterations);
      break;
    }
    if (rec.elapsed_seconds > config.max_time_seconds) {
      finish(SolveStatus::max_time);
      break;
    }

    const double nf = rec.field_norm;
    const double target =
        config.schedule == LocalSchedule::quadratic ? 0.5 * nf * nf : std::pow(nf, 1.5);
    const double mu = std::min(mu_prev / 1.5, target);
    const double gamma = std::max(config.gamma_hat, 1.0 - nf);
    mu_prev = mu;

    NewtonStep step;
    try {
      step = solve_newton(system, mu, config.cr_tol, config.cr_max_iter);
    } catch (const NumericalFailure& e) {
      finish(SolveStatus::linear_solve_failure, e.what());
      break;
    }
    rec.mu = mu;
    rec.gamma = gamma;
    rec.cr_iterations = step.report.iterations;
    rec.cr_status = step.report.status;
    rec.cr_relative_residual = step.report.relative_residual;
    rec.step_norm = step.dw.norm();
    report.cr_iterations_total += step.report.iterations;
    if (step.report.status == CrStatus::breakdown) {
      finish(SolveStatus::linear_solve_failure, "conjugate residual breakdown");
      break;
    }
    if (step.report.status == CrStatus::max_iter) {
      std::ostringstream msg;
      msg << "iteration " << k << ": CR hit the iteration limit (relative residual "
          << step.report.relative_residual << ")";
      report.warnings.push_back(msg.str());
    }

    const Iterate& w = system.iterate();
    const double alpha = fraction_to_boundary(w.z, w.s, step.dw.dz, step.dw.ds, gamma);
    rec.alpha = alpha;
    Iterate next;
    try {
      next = product_retract(problem.manifold(), w, step.dw, alpha);
    } catch (const Error& e) {
      rec.alpha = 0.0;
      finish(SolveStatus::numerical_failure, e.what());
      break;
    }
    require_interior(next, "local_solve");
    report.history.push_back(rec);
    system = KktSystem(problem, std::move(next));
  }

  report.solution = system.iterate();
  report.final_field_norm = system.field_norm();
  report.final_kkt_residual = system.kkt_residual();
  report.wall_time_seconds = seconds_since(start);
  return report;
}

}  // namespace ripm
