#pragma once

// Finite-difference and oracle checks on problems and operators.

#include <iosfwd>
#include <string>
#include <vector>

#include "ripm/bench.hpp"
#include "ripm/parallel.hpp"

namespace ripm {

/// Scalar function u' c(x) built from a constraint family and fixed weights.
Objective constraint_combination(ConstraintSetPtr constraints, Vector weights);

struct TaylorOptions {
  double t_max = 1e-2;
  double t_min = 1e-5;
  int points = 13;
};

struct TaylorResult {
  std::vector<double> steps;
  /// |f(R(t xi)) - f(x) - t <grad f, xi>|
  std::vector<double> gradient_errors;
  /// |f(c(t)) - f(x) - t <grad f, xi> - t^2/2 <Hess f[xi], xi>| along a
  /// second-order retraction curve c
  std::vector<double> hessian_errors;
  double gradient_slope = 0.0;
  double hessian_slope = 0.0;

  bool passes() const {
    return gradient_slope >= 1.9 && gradient_slope <= 2.1 && hessian_slope >= 2.9 &&
           hessian_slope <= 3.1;
  }
};

/// Robust (Theil-Sen) slope of log(errors) against log(steps).
double loglog_slope(const std::vector<double>& steps, const std::vector<double>& errors);

/// Point on a second-order retraction curve: the metric projection of X + xi.
/// Coincides with retract() except on Stiefel, whose QR retraction is only
/// first order.
Point second_order_retract(const Manifold& manifold, const Point& x, const TangentVector& xi);

TaylorResult taylor_check(const Manifold& manifold, const Point& x, const Objective& f,
                          const TangentVector& xi, const TaylorOptions& options = {});

/// Draw xi as a random tangent of norm scale * R, with R the local curvature
/// radius (1 on Stiefel and oblique, the smallest singular value on
/// fixed-rank, max(1, |X|) on Euclidean space).
TangentVector taylor_direction(const Manifold& manifold, const Point& x, Rng& rng,
                               double scale = 3.0);

/// Median slopes over several random (point, direction) draws.
struct TaylorSummary {
  std::string label;
  double gradient_slope = 0.0;
  double hessian_slope = 0.0;
  bool passes() const {
    return gradient_slope >= 1.9 && gradient_slope <= 2.1 && hessian_slope >= 2.9 &&
           hessian_slope <= 3.1;
  }
};

/// Taylor checks of the objective, the inequality family and the equality
/// family (through random weight vectors) of a problem.
std::vector<TaylorSummary> taylor_suite(const Problem& problem, const std::string& name, Rng& rng,
                                        int draws = 5);

// Check suite shared by the command line tool and the acceptance tests.

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct CheckOptions {
  std::uint64_t seed = 20240601;
  int oracle_points = 50;
  int adjoint_pairs = 100;
  int cr_systems = 20;
  int taylor_draws = 5;
  Execution exec = Execution::parallel;
};

/// The three desk-scale benchmark problems used by the checks.
struct BenchmarkProblem {
  std::string name;
  GeneratedInstance instance;
};
std::vector<BenchmarkProblem> benchmark_problems(std::uint64_t seed);

/// Random w with x = rand_point, y Gaussian, z and s uniform on (0, 1].
Iterate random_interior_iterate(const Problem& problem, Rng& rng);

/// Matrix-free nabla F and condensed operator against the dense block
/// representation at random interior points; relative error <= 1e-10.
CheckLine check_oracle_equivalence(const CheckOptions& options);
/// <nabla F[u], v> = <u, nabla F*[v]> and <T u, v> = <u, T v>, relative to
/// |Au| |v|, <= 1e-10.
CheckLine check_adjointness(const CheckOptions& options);
/// Gradient slope in [1.9, 2.1], Hessian-model slope in [2.9, 3.1].
CheckLine check_taylor(const CheckOptions& options);
/// cr_solve against dense solves on random symmetric nonsingular systems.
CheckLine check_cr(const CheckOptions& options);
/// Smallest singular value of nabla F at a strictly complementary KKT point.
CheckLine check_spectral_witness(const CheckOptions& options);

std::vector<CheckLine> run_check_suite(const CheckOptions& options, std::ostream* log = nullptr);

void print_check_line(std::ostream& os, const CheckLine& line);

}  // namespace ripm
