#include "ripm/report.hpp"

#include <ostream>

#include "ripm/csv.hpp"

namespace ripm {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::success: return "success";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::max_time: return "max_time";
    case SolveStatus::line_search_failure: return "line_search_failure";
    case SolveStatus::linear_solve_failure: return "linear_solve_failure";
    case SolveStatus::diverged: return "diverged";
    case SolveStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

void print_report(std::ostream& os, const SolveReport& report) {
  os << "status:              " << to_string(report.status) << '\n'
     << "outer iterations:    " << report.iterations << '\n'
     << "CR iterations total: " << report.cr_iterations_total << '\n'
     << "final KKT residual:  " << format_double(report.final_kkt_residual) << '\n'
     << "final |F(w)|:        " << format_double(report.final_field_norm) << '\n'
     << "wall time [s]:       " << format_double(report.wall_time_seconds) << '\n';
  if (!report.message.empty()) os << "message:             " << report.message << '\n';
  for (const auto& w : report.warnings) os << "warning: " << w << '\n';
  for (const auto& v : report.invariant_violations) os << "invariant violation: " << v << '\n';
}

void write_trace_csv(std::ostream& os, const SolveReport& report) {
  os << "iter,field_norm,kkt_residual,alpha,sigma,mu,gamma,step_norm,cr_iters,cr_status,"
        "cr_relres,backtracks,elapsed_s\n";
  for (const auto& r : report.history) {
    os << r.iteration << ',' << format_double(r.field_norm) << ','
       << format_double(r.kkt_residual) << ',' << format_double(r.alpha) << ','
       << format_double(r.sigma) << ',' << format_double(r.mu) << ',' << format_double(r.gamma)
       << ',' << format_double(r.step_norm) << ',' << r.cr_iterations << ','
       << to_string(r.cr_status) << ',' << format_double(r.cr_relative_residual) << ','
       << r.backtracks << ',' << format_double(r.elapsed_seconds) << '\n';
  }
}

}  // namespace ripm
