#pragma once

// Globally convergent interior point method: centrality-safeguarded
// backtracking on the merit function phi = |F|^2.

#include <limits>
#include <optional>

#include "ripm/report.hpp"

namespace ripm {

struct GlobalConfig {
  double beta = 1e-4;
  double theta = 0.5;
  double gamma_init = 0.9;
  double cr_tol = 1e-9;
  int cr_max_iter = 1000;
  /// Newton steps are refined until <grad phi, dw> matches its exact-solve
  /// value to this relative accuracy, with at most max_refinements extra CR runs.
  double slope_tol = 1e-11;
  int max_refinements = 3;
  double tol_kkt = 1e-6;
  int max_outer = 10000;
  double max_time_seconds = std::numeric_limits<double>::infinity();
  double min_alpha = 1e-16;
  /// Verify the descent identity, merit decrease, centrality and interior
  /// invariants on every step; violations are collected in the report.
  bool check_invariants = false;
  /// Multiplier norm above which a warning is emitted.
  double multiplier_warning = 1e8;

  void validate() const;
};

struct CentralityState {
  double tau1 = 1.0;
  double tau2 = 1.0;
  double gamma = 0.9;
};

/// tau1 = min(Z0 S0 e) / (z0's0 / m), tau2 = z0's0 / |F(w0)|
CentralityState initial_centrality(const KktSystem& system, double gamma_init);

struct SigmaRho {
  double sigma;
  double rho;
};

/// sigma = min(0.5, |F|^1/2), rho = z's / m
SigmaRho select_sigma_rho(const KktSystem& system);

/// f^I(alpha) = min_i z_i(alpha) s_i(alpha) - (gamma tau1 / m) z(alpha)'s(alpha)
double centrality_I(const Vector& z, const Vector& s, const Vector& dz, const Vector& ds,
                    double alpha, double gamma, double tau1);

/// Largest alpha in (0, 1] with f^I >= 0 on (0, alpha], from the roots of the
/// per-component quadratics.
double alpha_centrality_I(const Vector& z, const Vector& s, const Vector& dz, const Vector& ds,
                          double gamma, double tau1);

struct StepAcceptance {
  bool accepted = false;
  double alpha = 0.0;
  int backtracks = 0;
  double centrality_II = 0.0;
  /// Present when accepted.
  std::optional<KktSystem> next;
};

/// Backtrack from alpha_bar by theta until f^II(alpha) >= 0 and
/// phi(alpha) - phi(0) <= alpha beta dphi both hold. Trial points where the
/// retraction fails or leaves the interior are rejected like any other.
StepAcceptance accept_step(const KktSystem& system, const ProductTangent& dw, double dphi,
                           double alpha_bar, const CentralityState& state,
                           const GlobalConfig& config);

SolveReport global_solve(const Problem& problem, Iterate w0, const GlobalConfig& config);

}  // namespace ripm
