#pragma once

// Data-parallel kernels. Every kernel has a serial reference implementation
// with the same signature; tests check that both produce identical results
// and bench/ compares their speed.

#include <exception>
#include <mutex>

#include <omp.h>

#include "ripm/types.hpp"

namespace ripm {

enum class Execution { serial, parallel };

namespace kernels {

/// Build a rows x cols matrix whose column j is column(j).
template <class ColumnFn>
Matrix assemble_columns_serial(Index rows, Index cols, const ColumnFn& column) {
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) out.col(j) = column(j);
  return out;
}

/// OpenMP version of assemble_columns_serial. column must be safe to call
/// concurrently; the first exception thrown by any column is rethrown.
template <class ColumnFn>
Matrix assemble_columns_parallel(Index rows, Index cols, const ColumnFn& column) {
  Matrix out(rows, cols);
  std::exception_ptr error;
  std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic)
  for (Index j = 0; j < cols; ++j) {
    try {
      out.col(j) = column(j);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

template <class ColumnFn>
Matrix assemble_columns(Execution exec, Index rows, Index cols, const ColumnFn& column) {
  return exec == Execution::parallel ? assemble_columns_parallel(rows, cols, column)
                                     : assemble_columns_serial(rows, cols, column);
}

/// Run job(i) for i in [0, count). Serial reference.
template <class Job>
void for_each_index_serial(Index count, const Job& job) {
  for (Index i = 0; i < count; ++i) job(i);
}

/// OpenMP version with at most `threads` workers (0 = runtime default).
/// Jobs write to disjoint, pre-sized output slots, so results do not depend
/// on scheduling.
template <class Job>
void for_each_index_parallel(Index count, int threads, const Job& job) {
  std::exception_ptr error;
  std::mutex error_mutex;
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
  for (Index i = 0; i < count; ++i) {
    try {
      job(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace kernels
}  // namespace ripm
