#pragma once

// Prototype interior point iteration without globalization: perturbed Newton
// steps with the fraction-to-boundary rule. Converges from good starts only.

#include <limits>

#include "ripm/report.hpp"

namespace ripm {

enum class LocalSchedule {
  /// mu_k = min(mu_{k-1} / 1.5, 0.5 |F_k|^2), gamma_k = max(gamma_hat, 1 - |F_k|)
  quadratic,
  /// mu_k = min(mu_{k-1} / 1.5, |F_k|^1.5), same gamma rule
  superlinear,
};

struct LocalConfig {
  double gamma_hat = 0.5;
  /// Upper bound for the first barrier value.
  double mu0 = 0.1;
  double tol_kkt = 1e-10;
  int max_iter = 100;
  LocalSchedule schedule = LocalSchedule::quadratic;
  double cr_tol = 1e-9;
  int cr_max_iter = 1000;
  /// Abort once |F| exceeds this multiple of the smallest |F| seen.
  double divergence_factor = 1e6;
  double max_time_seconds = std::numeric_limits<double>::infinity();

  void validate() const;
};

/// min{1, gamma min{-s_i/ds_i : ds_i < 0}, gamma min{-z_i/dz_i : dz_i < 0}}
double fraction_to_boundary(const Vector& z, const Vector& s, const Vector& dz, const Vector& ds,
                            double gamma);

SolveReport local_solve(const Problem& problem, Iterate w0, const LocalConfig& config);

}  // namespace ripm
