// Command line front end: solve one instance, run benchmark suites, or run
// the oracle and invariant checks.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ripm/bench.hpp"
#include "ripm/diagnostics.hpp"
#include "ripm/local_solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitCheck = 2;

struct SolveArgs {
  std::string problem = "nlrm";
  std::vector<ripm::Index> dims;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::string algorithm = "global";
  double tol = -1.0;
  int max_iter = -1;
  double tmax = std::numeric_limits<double>::infinity();
  double perturbation = 1e-2;
  double cr_tol = 1e-9;
  std::string schedule = "quadratic";
  std::string trace;
  bool check_invariants = false;
};

struct BenchArgs {
  std::string suite;
  int trials = 20;
  std::uint64_t seed = 0;
  double tol = -1.0;
  double tmax = -1.0;
  int max_outer = -1;
  std::string out;
  int jobs = 1;
  bool check_invariants = false;
};

int run_solve(const SolveArgs& a) {
  using namespace ripm;
  InstanceSpec spec;
  spec.problem = problem_kind_from_string(a.problem);
  spec.dims = a.dims;
  spec.noise = a.noise;
  spec.seed = a.seed;
  spec.validate();
  const GeneratedInstance inst = generate(spec, a.seed);
  const Problem& problem = *inst.problem;
  Iterate w0 = initial_iterate(problem, inst.x0, splitmix64(a.seed));

  SolveReport report;
  if (a.algorithm == "global") {
    GlobalConfig config;
    if (a.tol > 0) config.tol_kkt = a.tol;
    if (a.max_iter >= 0) config.max_outer = a.max_iter;
    config.max_time_seconds = a.tmax;
    config.check_invariants = a.check_invariants;
    config.cr_tol = a.cr_tol;
    report = global_solve(problem, w0, config);
  } else {
    GlobalConfig warm;
    warm.tol_kkt = 1e-10;
    warm.max_time_seconds = a.tmax;
    const SolveReport pre = global_solve(problem, w0, warm);
    std::cout << "near-solution start: global solve " << to_string(pre.status) << " in "
              << pre.iterations << " iterations, perturbation " << a.perturbation << "\n";
    LocalConfig config;
    if (a.tol > 0) config.tol_kkt = a.tol;
    if (a.max_iter >= 0) config.max_iter = a.max_iter;
    config.max_time_seconds = a.tmax;
    config.schedule = a.schedule == "superlinear" ? LocalSchedule::superlinear
                                                  : LocalSchedule::quadratic;
    report = local_solve(problem, perturb_iterate(problem, pre.solution, a.perturbation,
                                                  splitmix64(a.seed + 1)),
                         config);
  }
  print_report(std::cout, report);
  if (inst.solution.size() > 0)
    std::cout << "error |X - X*|_F:    " << (report.solution.x.X - inst.solution).norm() << '\n';
  if (!a.trace.empty()) {
    std::ofstream out(a.trace);
    if (!out) {
      std::cerr << "cannot write trace file '" << a.trace << "'\n";
      return kExitIo;
    }
    write_trace_csv(out, report);
    if (!out) return kExitIo;
  }
  return kExitOk;
}

int run_bench_cmd(const BenchArgs& a) {
  using namespace ripm;
  std::vector<InstanceSpec> suite;
  if (is_named_suite(a.suite)) {
    suite = named_suite(a.suite, a.seed);
  } else {
    try {
      suite = load_suite_file(a.suite);
    } catch (const ContractViolation& e) {
      std::cerr << e.what() << '\n';
      return kExitIo;
    } catch (const Error& e) {
      std::cerr << e.what() << '\n';
      return kExitIo;
    }
  }
  for (auto& s : suite) {
    if (a.tol > 0) s.tol_kkt = a.tol;
    if (a.tmax > 0) s.t_max_seconds = a.tmax;
    if (a.max_outer >= 0) s.max_outer = a.max_outer;
  }
  std::ofstream out;
  if (!a.out.empty()) {
    out.open(a.out);
    if (!out) {
      std::cerr << "cannot write '" << a.out << "'\n";
      return kExitIo;
    }
  }
  BenchOptions options;
  options.trials = a.trials;
  options.jobs = a.jobs;
  options.check_invariants = a.check_invariants;
  const auto results = run_bench(suite, options);
  if (out.is_open()) {
    write_csv(out, results);
    out.close();
    if (!out) {
      std::cerr << "failed writing '" << a.out << "'\n";
      return kExitIo;
    }
  } else {
    write_csv(std::cout, results);
  }
  print_aggregate(std::cout, aggregate(results));
  return kExitOk;
}

int run_check_cmd(const ripm::CheckOptions& options) {
  const auto lines = ripm::run_check_suite(options, &std::cout);
  for (const auto& l : lines)
    if (!l.pass) return kExitCheck;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemannian interior point solver"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve one generated instance");
  solve->add_option("--problem", sa.problem, "nlrm | model_st | model_ob")
      ->check(CLI::IsMember({"nlrm", "model_st", "model_ob"}));
  solve->add_option("--dims", sa.dims, "m,n,r for nlrm; n,k otherwise")
      ->delimiter(',')
      ->required();
  solve->add_option("--noise", sa.noise, "Noise level (nlrm)");
  solve->add_option("--seed", sa.seed, "Instance seed");
  solve->add_option("--algorithm", sa.algorithm, "global | local")
      ->check(CLI::IsMember({"global", "local"}));
  solve->add_option("--tol", sa.tol, "KKT residual tolerance");
  solve->add_option("--max-iter", sa.max_iter, "Iteration limit");
  solve->add_option("--tmax", sa.tmax, "Time limit in seconds");
  solve->add_option("--perturbation", sa.perturbation, "Start perturbation (local)");
  solve->add_option("--schedule", sa.schedule, "quadratic | superlinear (local)")
      ->check(CLI::IsMember({"quadratic", "superlinear"}));
  solve->add_option("--cr-tol", sa.cr_tol, "Relative residual tolerance of the CR solver");
  solve->add_option("--trace", sa.trace, "Write per-iteration CSV");
  solve->add_flag("--check-invariants", sa.check_invariants, "Verify step invariants");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  bench->add_option("--suite", ba.suite, "paper1 | paper2-st | paper2-ob | file.json")
      ->required();
  bench->add_option("--trials", ba.trials, "Trials per instance")->check(CLI::NonNegativeNumber);
  bench->add_option("--seed", ba.seed, "Suite seed");
  bench->add_option("--tol", ba.tol, "Override KKT tolerance");
  bench->add_option("--tmax", ba.tmax, "Override time limit per trial");
  bench->add_option("--max-outer", ba.max_outer, "Override outer iteration limit");
  bench->add_option("--out", ba.out, "CSV output path (stdout if omitted)");
  bench->add_option("--jobs", ba.jobs, "Concurrent trials")->check(CLI::PositiveNumber);
  bench->add_flag("--check-invariants", ba.check_invariants, "Verify step invariants");

  ripm::CheckOptions co;
  auto* check = app.add_subcommand("check", "Run oracle and invariant checks");
  check->add_option("--seed", co.seed, "Check seed");
  check->add_option("--points", co.oracle_points, "Random points per manifold");
  check->add_option("--pairs", co.adjoint_pairs, "Random pairs per problem");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(sa);
    if (*bench) return run_bench_cmd(ba);
    if (*check) return run_check_cmd(co);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}
