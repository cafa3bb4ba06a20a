#include "ripm/global_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace ripm {

void GlobalConfig::validate() const {
  require(beta > 0.0 && beta <= 0.5, "GlobalConfig: beta must lie in (0, 0.5]");
  require(theta > 0.0 && theta < 1.0, "GlobalConfig: theta must lie in (0, 1)");
  require(gamma_init > 0.5 && gamma_init < 1.0, "GlobalConfig: gamma_init must lie in (0.5, 1)");
  require(cr_tol > 0.0 && cr_max_iter > 0, "GlobalConfig: invalid CR settings");
  require(slope_tol > 0.0 && max_refinements >= 0, "GlobalConfig: invalid refinement settings");
  require(max_outer >= 0, "GlobalConfig: max_outer must be nonnegative");
  require(min_alpha > 0.0, "GlobalConfig: min_alpha must be positive");
}

CentralityState initial_centrality(const KktSystem& system, double gamma_init) {
  const Iterate& w = system.iterate();
  require_interior(w, "initial_centrality");
  const double m = static_cast<double>(w.z.size());
  const double zs = w.z.dot(w.s);
  CentralityState st;
  st.tau1 = (w.z.array() * w.s.array()).minCoeff() / (zs / m);
  st.tau2 = zs / system.field_norm();
  st.gamma = gamma_init;
  return st;
}

SigmaRho select_sigma_rho(const KktSystem& system) {
  const Iterate& w = system.iterate();
  return {std::min(0.5, std::sqrt(system.field_norm())),
          w.z.dot(w.s) / static_cast<double>(w.z.size())};
}

double centrality_I(const Vector& z, const Vector& s, const Vector& dz, const Vector& ds,
                    double alpha, double gamma, double tau1) {
  const Vector za = z + alpha * dz;
  const Vector sa = s + alpha * ds;
  const Vector p = za.cwiseProduct(sa);
  return p.minCoeff() - gamma * tau1 / static_cast<double>(z.size()) * p.sum();
}

namespace {

/// Smallest strictly positive root of a t^2 + b t + c, or +inf.
double smallest_positive_root(double a, double b, double c) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (a == 0.0) {
    if (b == 0.0) return inf;
    const double t = -c / b;
    return t > 0.0 ? t : inf;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return inf;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double best = inf;
  const double r1 = q / a;
  if (r1 > 0.0) best = r1;
  if (q != 0.0) {
    const double r2 = c / q;
    if (r2 > 0.0) best = std::min(best, r2);
  }
  return best;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool leq_with_rounding(double a, double b) {
  return a <= b + 1e-12 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

double alpha_centrality_I(const Vector& z, const Vector& s, const Vector& dz, const Vector& ds,
                          double gamma, double tau1) {
  require(z.size() == s.size() && dz.size() == z.size() && ds.size() == s.size(),
          "alpha_centrality_I: size mismatch");
  const double kappa = gamma * tau1 / static_cast<double>(z.size());
  const double sum_a = dz.dot(ds);
  const double sum_b = z.dot(ds) + s.dot(dz);
  const double sum_c = z.dot(s);
  double alpha = 1.0;
  for (Index i = 0; i < z.size(); ++i) {
    const double a = dz(i) * ds(i) - kappa * sum_a;
    const double b = z(i) * ds(i) + s(i) * dz(i) - kappa * sum_b;
    const double c = z(i) * s(i) - kappa * sum_c;
    alpha = std::min(alpha, smallest_positive_root(a, b, c));
  }
  // The root is exact only up to rounding; step inside until f^I evaluates >= 0.
  double shrink = 1e-15;
  for (int t = 0; t < 40 && centrality_I(z, s, dz, ds, alpha, gamma, tau1) < 0.0; ++t) {
    alpha *= 1.0 - shrink;
    shrink = std::min(0.5, shrink * 4.0);
  }
  if (centrality_I(z, s, dz, ds, alpha, gamma, tau1) < 0.0) return 0.0;
  return alpha;
}

StepAcceptance accept_step(const KktSystem& system, const ProductTangent& dw, double dphi,
                           double alpha_bar, const CentralityState& state,
                           const GlobalConfig& config) {
  const Iterate& w = system.iterate();
  const double phi0 = system.merit();
  StepAcceptance out;
  double alpha = std::min(alpha_bar, 1.0);
  while (alpha >= config.min_alpha) {
    try {
      Iterate trial = product_retract(system.manifold(), w, dw, alpha);
      if (strictly_interior(trial)) {
        KktSystem next(system.problem(), std::move(trial));
        const double f2 =
            next.iterate().z.dot(next.iterate().s) - state.gamma * state.tau2 * next.field_norm();
        const double phi = next.merit();
        if (std::isfinite(phi) && f2 >= 0.0 && phi - phi0 <= alpha * config.beta * dphi) {
          out.accepted = true;
          out.alpha = alpha;
          out.centrality_II = f2;
          out.next.emplace(std::move(next));
          return out;
        }
      }
    } catch (const RankDropError&) {
    } catch (const NumericalFailure&) {
    }
    alpha *= config.theta;
    ++out.backtracks;
  }
  return out;
}

namespace {

void check_iterate(const KktSystem& system, int k, std::vector<std::string>& violations) {
  const Iterate& w = system.iterate();
  auto fail = [&](const std::string& what) {
    std::ostringstream msg;
    msg << "iterate " << k << ": " << what;
    violations.push_back(msg.str());
  };
  if (!strictly_interior(w)) fail("z or s not strictly positive");
  const double sqrt_m = std::sqrt(static_cast<double>(w.z.size()));
  const double zs = w.z.dot(w.s);
  const double zs_norm = w.z.cwiseProduct(w.s).norm();
  const double f = system.field_norm();
  if (!leq_with_rounding(zs_norm / sqrt_m, zs / sqrt_m)) fail("|ZSe|/sqrt(m) > z's/sqrt(m)");
  if (!leq_with_rounding(zs / sqrt_m, zs_norm)) fail("z's/sqrt(m) > |ZSe|");
  if (!leq_with_rounding(zs_norm, f)) fail("|ZSe| > |F|");
}

}  // namespace

SolveReport global_solve(const Problem& problem, Iterate w0, const GlobalConfig& config) {
  config.validate();
  require_interior(w0, "global_solve");
  const auto start = Clock::now();

  SolveReport report;
  KktSystem system(problem, std::move(w0));
  CentralityState state = initial_centrality(system, config.gamma_init);
  bool warned_multipliers = false;

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
    if (config.check_invariants) check_iterate(system, k, report.invariant_violations);
    if (rec.kkt_residual <= config.tol_kkt) {
      finish(SolveStatus::success);
      break;
    }
    if (k >= config.max_outer) {
      finish(SolveStatus::max_iterations);
      break;
    }
    if (rec.elapsed_seconds > config.max_time_seconds) {
      finish(SolveStatus::max_time);
      break;
    }

    const Iterate& w = system.iterate();
    const double mult = std::max(w.z.lpNorm<Eigen::Infinity>(),
                                 w.y.size() > 0 ? w.y.lpNorm<Eigen::Infinity>() : 0.0);
    if (!warned_multipliers && mult > config.multiplier_warning) {
      std::ostringstream msg;
      msg << "iteration " << k << ": multiplier norm " << mult << " exceeds "
          << config.multiplier_warning;
      report.warnings.push_back(msg.str());
      warned_multipliers = true;
    }

    const SigmaRho sr = select_sigma_rho(system);
    const double mu = sr.sigma * sr.rho;
    rec.sigma = sr.sigma;
    rec.mu = mu;
    if (config.check_invariants) {
      const double upper = system.field_norm() / std::sqrt(static_cast<double>(w.z.size()));
      if (!leq_with_rounding(sr.rho, upper)) {
        std::ostringstream msg;
        msg << "iterate " << k << ": rho = " << sr.rho << " above |F|/sqrt(m) = " << upper;
        report.invariant_violations.push_back(msg.str());
      }
    }

    NewtonStep step;
    try {
      step = solve_newton(system, mu, config.cr_tol, config.cr_max_iter);
      step = refine_newton(system, mu, std::move(step), config.cr_tol, config.cr_max_iter,
                           config.slope_tol, config.max_refinements);
    } catch (const NumericalFailure& e) {
      finish(SolveStatus::linear_solve_failure, e.what());
      break;
    }
    rec.cr_iterations = step.report.iterations;
    rec.cr_status = step.report.status;
    rec.cr_relative_residual = step.report.relative_residual;
    rec.step_norm = step.dw.norm();
    report.cr_iterations_total += step.report.iterations;

    state.gamma = 0.5 * (state.gamma + 0.5);
    rec.gamma = state.gamma;

    const double dphi = inner(system.merit_gradient(), step.dw);
    if (!(dphi < 0.0)) {
      std::ostringstream msg;
      msg << "Newton direction is not a descent direction (dphi = " << dphi
          << ", CR " << to_string(step.report.status) << ")";
      finish(SolveStatus::linear_solve_failure, msg.str());
      break;
    }
    if (step.report.status != CrStatus::converged) {
      std::ostringstream msg;
      msg << "iteration " << k << ": CR " << to_string(step.report.status)
          << " (relative residual " << step.report.relative_residual
          << "), continuing with descent direction";
      report.warnings.push_back(msg.str());
    }

    const double alpha_I =
        alpha_centrality_I(w.z, w.s, step.dw.dz, step.dw.ds, state.gamma, state.tau1);
    StepAcceptance acc = accept_step(system, step.dw, dphi, alpha_I, state, config);
    rec.backtracks = acc.backtracks;
    if (!acc.accepted) {
      std::ostringstream msg;
      msg << "step size fell below " << config.min_alpha << " (alpha_I = " << alpha_I << ")";
      finish(SolveStatus::line_search_failure, msg.str());
      break;
    }
    rec.alpha = acc.alpha;

    if (config.check_invariants) {
      auto fail = [&](const std::string& what) {
        std::ostringstream msg;
        msg << "step " << k << ": " << what;
        report.invariant_violations.push_back(msg.str());
      };
      const double closed = 2.0 * (-system.merit() + mu * w.z.dot(w.s));
      if (std::abs(dphi - closed) > 1e-10 * std::abs(closed)) {
        std::ostringstream msg;
        const double floor = std::numeric_limits<double>::epsilon() *
                             system.merit_gradient().norm() * step.dw.norm() / std::abs(closed);
        msg << "descent identity off by " << std::abs(dphi - closed) / std::abs(closed)
            << " relative (rounding floor " << floor << ")";
        fail(msg.str());
      }
      const double phi0 = system.merit();
      const double phi = acc.next->merit();
      if (!(phi <= (1.0 - 2.0 * acc.alpha * config.beta * (1.0 - sr.sigma)) * phi0)) {
        fail("merit decrease bound violated");
      }
      const Iterate& wn = acc.next->iterate();
      const double f1 =
          centrality_I(wn.z, wn.s, wn.z * 0.0, wn.s * 0.0, 0.0, state.gamma, state.tau1);
      if (f1 < 0.0) fail("f^I < 0 at accepted step");
      if (acc.centrality_II < 0.0) fail("f^II < 0 at accepted step");
      if (!strictly_interior(wn)) fail("accepted step left the interior");
    }

    report.history.push_back(rec);
    system = std::move(*acc.next);
  }

  report.solution = system.iterate();
  report.final_field_norm = system.field_norm();
  report.final_kkt_residual = system.kkt_residual();
  report.wall_time_seconds = seconds_since(start);
  return report;
}

}  // namespace ripm
