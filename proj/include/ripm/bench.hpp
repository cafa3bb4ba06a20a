#pragma once

// Benchmark instances (nonnegative low-rank approximation and the projection
// onto the nonnegative part of Stiefel / oblique), trial harness and CSV
// output.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "ripm/global_solver.hpp"

namespace ripm {

enum class ProblemKind { nlrm, model_st, model_ob };

std::string to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(const std::string& name);

struct InstanceSpec {
  ProblemKind problem = ProblemKind::nlrm;
  /// (m, n, r) for nlrm, (n, k) otherwise.
  std::vector<Index> dims;
  /// Standard deviation of the additive Gaussian noise (nlrm only).
  double noise = 0.0;
  std::uint64_t seed = 0;
  double tol_kkt = 1e-6;
  double t_max_seconds = std::numeric_limits<double>::infinity();
  int max_outer = 10000;

  void validate() const;
  /// "20x16x2"
  std::string dims_string() const;
};

struct GeneratedInstance {
  std::shared_ptr<const Problem> problem;
  Point x0;
  /// A for nlrm, C otherwise.
  Matrix data;
  /// Known solution; empty when unknown (noisy nlrm).
  Matrix solution;
};

GeneratedInstance gen_nlrm(Index m, Index n, Index r, double noise, std::uint64_t seed);
GeneratedInstance gen_model_st(Index n, Index k, std::uint64_t seed);
GeneratedInstance gen_model_ob(Index n, Index k, std::uint64_t seed);
GeneratedInstance generate(const InstanceSpec& spec, std::uint64_t seed);

/// x0 with z0, s0 i.i.d. uniform on (0, 1] and y0 = 0.
Iterate initial_iterate(const Problem& problem, const Point& x0, std::uint64_t seed);

/// Retract w along a random product tangent of the given norm. The dz and ds
/// components are drawn nonnegative so the result stays interior.
Iterate perturb_iterate(const Problem& problem, const Iterate& w, double norm,
                        std::uint64_t seed);

/// Seed of trial `trial` of a spec with seed `seed`.
std::uint64_t trial_seed(std::uint64_t seed, int trial);

struct TrialResult {
  InstanceSpec spec;
  int trial_index = 0;
  SolveStatus status = SolveStatus::max_iterations;
  int outer_iters = 0;
  double wall_time_seconds = 0.0;
  double final_kkt_residual = 0.0;
  /// |X - X*|_F, NaN when X* is unknown.
  double final_error = std::numeric_limits<double>::quiet_NaN();
  long cr_iters_total = 0;
  std::size_t invariant_violations = 0;
  std::string message;
};

/// One trial: fresh instance and start from trial_seed(spec.seed, trial).
TrialResult run_trial(const InstanceSpec& spec, int trial, bool check_invariants = false,
                      std::vector<std::string>* violations = nullptr);

struct BenchOptions {
  int trials = 20;
  int jobs = 1;
  bool check_invariants = false;
};

/// Results ordered by (spec, trial) independent of jobs.
std::vector<TrialResult> run_bench(const std::vector<InstanceSpec>& suite,
                                   const BenchOptions& options);

struct AggregateRow {
  InstanceSpec spec;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  /// Means and median over successful trials; NaN when there are none.
  double mean_time = 0.0;
  double mean_iters = 0.0;
  double median_iters = 0.0;
  double mean_error = 0.0;
  double total_time = 0.0;
};

std::vector<AggregateRow> aggregate(const std::vector<TrialResult>& results);

void write_csv(std::ostream& os, const std::vector<TrialResult>& results);
void print_aggregate(std::ostream& os, const std::vector<AggregateRow>& rows);

/// Named suites: paper1, paper2-st, paper2-ob.
std::vector<InstanceSpec> named_suite(const std::string& name, std::uint64_t seed);
bool is_named_suite(const std::string& name);
/// JSON array of InstanceSpec objects.
std::vector<InstanceSpec> parse_suite_json(const std::string& text);
std::vector<InstanceSpec> load_suite_file(const std::string& path);

}  // namespace ripm
