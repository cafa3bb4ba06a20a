#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ripm/linsolve.hpp"

namespace ripm {

enum class SolveStatus {
  success,
  max_iterations,
  max_time,
  line_search_failure,
  linear_solve_failure,
  diverged,
  numerical_failure,
};

std::string to_string(SolveStatus status);

/// State of iterate w_k and the step taken from it. The last record of a run
/// describes the final iterate and has alpha = 0.
struct IterationRecord {
  int iteration = 0;
  double field_norm = 0.0;
  double kkt_residual = 0.0;
  double alpha = 0.0;
  double sigma = 0.0;
  double mu = 0.0;
  double gamma = 0.0;
  double step_norm = 0.0;
  int cr_iterations = 0;
  CrStatus cr_status = CrStatus::converged;
  double cr_relative_residual = 0.0;
  int backtracks = 0;
  double elapsed_seconds = 0.0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::max_iterations;
  int iterations = 0;
  Iterate solution;
  double final_kkt_residual = 0.0;
  double final_field_norm = 0.0;
  long cr_iterations_total = 0;
  double wall_time_seconds = 0.0;
  std::vector<IterationRecord> history;
  std::vector<std::string> warnings;
  /// Filled only when invariant checking is switched on.
  std::vector<std::string> invariant_violations;
  std::string message;

  bool succeeded() const { return status == SolveStatus::success; }
};

void print_report(std::ostream& os, const SolveReport& report);

/// One CSV row per IterationRecord.
void write_trace_csv(std::ostream& os, const SolveReport& report);

}  // namespace ripm
