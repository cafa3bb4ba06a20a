// Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.
//
// usage: acceptance <path to ripm executable> <scratch directory>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ripm/bench.hpp"
#include "ripm/csv.hpp"
#include "ripm/diagnostics.hpp"
#include "ripm/local_solver.hpp"

namespace {

using namespace ripm;
using Clock = std::chrono::steady_clock;

struct Verdict {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

void print(const Verdict& v) {
  std::cout << (v.pass ? "PASS" : "FAIL") << " [" << v.id << "] " << v.name << ": " << v.detail
            << " (" << std::fixed << std::setprecision(1) << v.seconds << " s)" << std::endl;
  std::cout.unsetf(std::ios::floatfield);
}

Verdict from_check(int id, const CheckLine& line, double time_limit) {
  Verdict v{id, line.name, line.pass, line.detail, line.seconds};
  if (line.seconds >= time_limit) {
    v.pass = false;
    v.detail += ", over the " + std::to_string(static_cast<int>(time_limit)) + " s budget";
  }
  return v;
}

// Local rate on the noiseless (20, 16, 2) low-rank problem. The near-solution
// start is the known solution A reached by the global solver (tol 1e-10) and
// perturbed by a tangent of norm 1e-2; instances whose warm-up stops at a
// different KKT point are skipped. Seeds follow `ripm solve --algorithm local`.
Verdict local_rate() {
  const auto start = Clock::now();
  Verdict v{6, "local quadratic rate", false, {}, 0.0};
  std::ostringstream skipped;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    InstanceSpec spec;
    spec.dims = {20, 16, 2};
    spec.seed = seed;
    const GeneratedInstance inst = generate(spec, seed);
    const Problem& p = *inst.problem;
    GlobalConfig warm;
    warm.tol_kkt = 1e-10;
    const SolveReport pre = global_solve(p, initial_iterate(p, inst.x0, splitmix64(seed)), warm);
    const double err = (pre.solution.x.X - inst.solution).norm();
    if (!pre.succeeded() || err > 1e-6) {
      skipped << (skipped.tellp() > 0 ? ", " : "") << seed << " (error " << std::setprecision(2)
              << err << ")";
      continue;
    }
    LocalConfig config;
    const SolveReport rep =
        local_solve(p, perturb_iterate(p, pre.solution, 1e-2, splitmix64(seed + 1)), config);

    std::vector<double> f;
    for (const auto& r : rep.history) f.push_back(r.field_norm);
    std::size_t k0 = f.size(), k1 = f.size();
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (k0 == f.size() && f[k] <= 2e-3) k0 = k;
      if (k1 == f.size() && f[k] <= 1e-10) k1 = k;
    }
    std::ostringstream d;
    d << std::setprecision(3) << "seed " << seed;
    if (skipped.tellp() > 0) d << " (skipped, not at the known solution: " << skipped.str() << ")";
    d << ", |F|:";
    for (double x : f) d << ' ' << x;
    if (k0 == f.size() || k1 == f.size() || k1 < k0 + 3) {
      d << "; window from |F| <= 2e-3 to <= 1e-10 not found";
      v.detail = d.str();
      break;
    }
    std::vector<double> ratios;
    for (std::size_t k = k1 - 3; k < k1; ++k) ratios.push_back(f[k + 1] / (f[k] * f[k]));
    const double spread = *std::max_element(ratios.begin(), ratios.end()) /
                          *std::min_element(ratios.begin(), ratios.end());
    v.seconds = seconds_since(start);
    d << "; " << k1 - k0 << " iterations from " << f[k0] << " to " << f[k1]
      << ", last ratios |F+|/|F|^2:";
    for (double r : ratios) d << ' ' << r;
    d << " (spread " << spread << ")";
    v.pass = rep.succeeded() && k1 - k0 <= 4 && spread < 10.0 && v.seconds < 30.0;
    v.detail = d.str();
    break;
  }
  if (v.detail.empty()) v.detail = "no seed in [0, 20) reached the known solution";
  v.seconds = seconds_since(start);
  return v;
}

struct SuiteRun {
  std::vector<TrialResult> results;
  std::vector<std::string> violations;
  long steps = 0;
  double seconds = 0.0;
};

SuiteRun run_suite(const std::vector<InstanceSpec>& suite, int trials) {
  const auto start = Clock::now();
  SuiteRun run;
  for (const auto& spec : suite) {
    for (int t = 0; t < trials; ++t) {
      run.results.push_back(run_trial(spec, t, true, &run.violations));
      run.steps += run.results.back().outer_iters;
    }
  }
  run.seconds = seconds_since(start);
  return run;
}

InstanceSpec nlrm_spec(double noise) {
  InstanceSpec s;
  s.problem = ProblemKind::nlrm;
  s.dims = {20, 16, 2};
  s.noise = noise;
  s.tol_kkt = 1e-8;
  s.t_max_seconds = 180.0;
  return s;
}

InstanceSpec model_spec(ProblemKind kind) {
  InstanceSpec s;
  s.problem = kind;
  s.dims = {40, 8};
  s.tol_kkt = 1e-6;
  s.t_max_seconds = 600.0;
  return s;
}

Verdict invariants(const SuiteRun& low_rank, const SuiteRun& model) {
  Verdict v{7, "global step invariants", false, {}, low_rank.seconds + model.seconds};
  std::vector<std::string> all = low_rank.violations;
  all.insert(all.end(), model.violations.begin(), model.violations.end());
  int descent = 0, descent_at_floor = 0;
  double worst_excess = 0.0;
  for (const auto& msg : all) {
    const auto at = msg.find("descent identity off by ");
    if (at == std::string::npos) continue;
    ++descent;
    const double off = std::stod(msg.substr(at + 24));
    const auto f = msg.find("rounding floor ");
    const double floor = f == std::string::npos ? 0.0 : std::stod(msg.substr(f + 15));
    if (off <= 10.0 * floor) ++descent_at_floor;
    worst_excess = std::max(worst_excess, floor > 0.0 ? off / floor : INFINITY);
  }
  const std::size_t other = all.size() - static_cast<std::size_t>(descent);
  std::ostringstream d;
  d << all.size() << " violations over " << low_rank.steps + model.steps
    << " accepted steps of 100 checked trials; descent identity at 1e-10: " << descent << " ("
    << descent_at_floor << " within 10x of the double-precision rounding floor, worst "
    << std::setprecision(3) << worst_excess << "x), other invariants: " << other;
  if (!all.empty()) d << "; first: " << all.front();
  v.pass = all.empty();
  v.detail = d.str();
  return v;
}

std::string row_summary(const AggregateRow& r) {
  std::ostringstream d;
  d << to_string(r.spec.problem) << ' ' << r.spec.dims_string() << " noise "
    << format_double(r.spec.noise) << ": success " << r.success_rate << ", median iters "
    << r.median_iters << ", mean error " << std::setprecision(3) << r.mean_error;
  return d.str();
}

Verdict low_rank_benchmark(const SuiteRun& run) {
  Verdict v{8, "low-rank approximation benchmark (20x16x2)", true, {}, run.seconds};
  std::ostringstream d;
  for (const auto& r : aggregate(run.results)) {
    if (r.success_rate < 0.9 || !(r.median_iters <= 60.0)) v.pass = false;
    d << row_summary(r) << "; ";
  }
  if (run.seconds >= 15 * 60.0) v.pass = false;
  d << "total " << std::setprecision(3) << run.seconds << " s";
  v.detail = d.str();
  return v;
}

Verdict model_benchmark(const SuiteRun& run) {
  Verdict v{9, "nonnegative Stiefel and oblique benchmark (40x8)", true, {}, run.seconds};
  std::ostringstream d;
  for (const auto& r : aggregate(run.results)) {
    if (r.success_rate < 0.9 || !(r.mean_error <= 1e-6) || !(r.median_iters <= 70.0))
      v.pass = false;
    d << row_summary(r) << "; ";
  }
  double worst = 0.0;
  for (const auto& t : run.results)
    if (t.status == SolveStatus::success) worst = std::max(worst, t.final_error / t.spec.tol_kkt);
  if (run.seconds >= 30 * 60.0) v.pass = false;
  d << "largest error / tol_kkt over successes " << std::setprecision(3) << worst << "; total "
    << run.seconds << " s";
  v.detail = d.str();
  return v;
}

std::vector<std::string> csv_without_time(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell, kept;
    for (int col = 0; std::getline(ss, cell, ','); ++col)
      if (col != 7) kept += cell + ',';
    rows.push_back(kept);
  }
  return rows;
}

Verdict determinism(const std::string& cli, const std::string& dir) {
  const auto start = Clock::now();
  Verdict v{10, "determinism", false, {}, 0.0};
  const std::string suite = dir + "/determinism_suite.json";
  {
    std::ofstream out(suite);
    out << R"([{"problem": "nlrm", "dims": [20, 16, 2], "noise": 0.001, "seed": 5, "tol_kkt": 1e-8},
 {"problem": "model_st", "dims": [40, 8], "seed": 5},
 {"problem": "model_ob", "dims": [40, 8], "seed": 5}])";
  }
  std::vector<std::vector<std::string>> csv;
  for (const char* tag : {"a", "b"}) {
    const std::string out = dir + "/determinism_" + tag + ".csv";
    const std::string cmd = "\"" + cli + "\" bench --suite \"" + suite +
                            "\" --trials 4 --seed 11 --out \"" + out + "\" > /dev/null";
    const int rc = std::system(cmd.c_str());
    if (rc != 0) {
      v.detail = "bench exited with status " + std::to_string(rc);
      v.seconds = seconds_since(start);
      return v;
    }
    csv.push_back(csv_without_time(out));
  }
  v.pass = csv[0] == csv[1] && csv[0].size() == 13;
  v.detail = std::to_string(csv[0].size()) + " CSV lines per run, " +
             (csv[0] == csv[1] ? "identical" : "different") + " apart from time_s";
  v.seconds = seconds_since(start);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <ripm executable> <scratch directory>\n";
    return 2;
  }
  std::vector<Verdict> verdicts;
  auto report = [&](Verdict v) {
    print(v);
    verdicts.push_back(std::move(v));
  };

  CheckOptions options;
  report(from_check(1, check_oracle_equivalence(options), 60.0));
  report(from_check(2, check_adjointness(options), INFINITY));
  report(from_check(3, check_taylor(options), INFINITY));
  report(from_check(4, check_cr(options), INFINITY));
  report(from_check(5, check_spectral_witness(options), INFINITY));
  report(local_rate());

  const SuiteRun low_rank = run_suite({nlrm_spec(0.0), nlrm_spec(0.001), nlrm_spec(0.01)}, 20);
  const SuiteRun model =
      run_suite({model_spec(ProblemKind::model_st), model_spec(ProblemKind::model_ob)}, 20);
  report(invariants(low_rank, model));
  report(low_rank_benchmark(low_rank));
  report(model_benchmark(model));
  report(determinism(argv[1], argv[2]));

  int failed = 0;
  for (const auto& v : verdicts) failed += v.pass ? 0 : 1;
  std::cout << verdicts.size() - failed << "/" << verdicts.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
