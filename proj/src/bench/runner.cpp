#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ripm/bench.hpp"
#include "ripm/csv.hpp"
#include "ripm/parallel.hpp"

namespace ripm {

TrialResult run_trial(const InstanceSpec& spec, int trial, bool check_invariants,
                      std::vector<std::string>* violations) {
  TrialResult res;
  res.spec = spec;
  res.trial_index = trial;
  const std::uint64_t seed = trial_seed(spec.seed, trial);
  try {
    const GeneratedInstance inst = generate(spec, seed);
    const Iterate w0 = initial_iterate(*inst.problem, inst.x0, splitmix64(seed));
    GlobalConfig config;
    config.tol_kkt = spec.tol_kkt;
    config.max_time_seconds = spec.t_max_seconds;
    config.max_outer = spec.max_outer;
    config.check_invariants = check_invariants;
    const SolveReport rep = global_solve(*inst.problem, w0, config);
    res.status = rep.status;
    res.outer_iters = rep.iterations;
    res.wall_time_seconds = rep.wall_time_seconds;
    res.final_kkt_residual = rep.final_kkt_residual;
    res.cr_iters_total = rep.cr_iterations_total;
    res.invariant_violations = rep.invariant_violations.size();
    res.message = rep.message;
    if (inst.solution.size() > 0) res.final_error = (rep.solution.x.X - inst.solution).norm();
    if (violations) {
      for (const auto& v : rep.invariant_violations) {
        violations->push_back(to_string(spec.problem) + " " + spec.dims_string() + " trial " +
                              std::to_string(trial) + ": " + v);
      }
    }
  } catch (const std::exception& e) {
    res.status = SolveStatus::numerical_failure;
    res.message = e.what();
  }
  return res;
}

std::vector<TrialResult> run_bench(const std::vector<InstanceSpec>& suite,
                                   const BenchOptions& options) {
  require(options.trials >= 0, "run_bench: trials must be nonnegative");
  require(options.jobs >= 1, "run_bench: jobs must be at least 1");
  for (const auto& spec : suite) spec.validate();
  const Index per = options.trials;
  const Index total = static_cast<Index>(suite.size()) * per;
  std::vector<TrialResult> results(static_cast<std::size_t>(total));
  auto job = [&](Index i) {
    const auto& spec = suite[static_cast<std::size_t>(i / per)];
    results[static_cast<std::size_t>(i)] =
        run_trial(spec, static_cast<int>(i % per), options.check_invariants);
  };
  if (options.jobs == 1) {
    kernels::for_each_index_serial(total, job);
  } else {
    kernels::for_each_index_parallel(total, options.jobs, job);
  }
  return results;
}

namespace {

bool same_spec(const InstanceSpec& a, const InstanceSpec& b) {
  return a.problem == b.problem && a.dims == b.dims && a.noise == b.noise && a.seed == b.seed &&
         a.tol_kkt == b.tol_kkt && a.t_max_seconds == b.t_max_seconds &&
         a.max_outer == b.max_outer;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<AggregateRow> aggregate(const std::vector<TrialResult>& results) {
  std::vector<AggregateRow> rows;
  std::size_t i = 0;
  while (i < results.size()) {
    std::size_t j = i;
    while (j < results.size() && same_spec(results[j].spec, results[i].spec)) ++j;
    AggregateRow row;
    row.spec = results[i].spec;
    row.trials = static_cast<int>(j - i);
    std::vector<double> times, iters, errors;
    for (std::size_t t = i; t < j; ++t) {
      const auto& r = results[t];
      row.total_time += r.wall_time_seconds;
      if (r.status != SolveStatus::success) continue;
      ++row.successes;
      times.push_back(r.wall_time_seconds);
      iters.push_back(r.outer_iters);
      if (!std::isnan(r.final_error)) errors.push_back(r.final_error);
    }
    row.success_rate = row.trials ? static_cast<double>(row.successes) / row.trials : 0.0;
    row.mean_time = mean(times);
    row.mean_iters = mean(iters);
    row.median_iters = median(iters);
    row.mean_error = mean(errors);
    rows.push_back(row);
    i = j;
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<TrialResult>& results) {
  os << "problem,dims,noise,seed,trial,status,iters,time_s,kkt_residual,error\n";
  for (const auto& r : results) {
    os << to_string(r.spec.problem) << ',' << r.spec.dims_string() << ','
       << format_double(r.spec.noise) << ',' << r.spec.seed << ',' << r.trial_index << ','
       << to_string(r.status) << ',' << r.outer_iters << ',' << format_double(r.wall_time_seconds)
       << ',' << format_double(r.final_kkt_residual) << ',' << format_double(r.final_error)
       << '\n';
  }
}

void print_aggregate(std::ostream& os, const std::vector<AggregateRow>& rows) {
  os << std::left << std::setw(10) << "problem" << std::setw(10) << "dims" << std::setw(8)
     << "noise" << std::right << std::setw(9) << "success" << std::setw(11) << "time[s]"
     << std::setw(9) << "iters" << std::setw(9) << "med.it" << std::setw(12) << "error"
     << std::setw(12) << "total[s]" << '\n';
  for (const auto& r : rows) {
    os << std::left << std::setw(10) << to_string(r.spec.problem) << std::setw(10)
       << r.spec.dims_string() << std::setw(8) << format_double(r.spec.noise) << std::right
       << std::setw(9) << std::fixed << std::setprecision(2) << r.success_rate << std::setw(11)
       << std::setprecision(3) << r.mean_time << std::setw(9) << std::setprecision(1)
       << r.mean_iters << std::setw(9) << r.median_iters << std::setw(12) << std::scientific
       << std::setprecision(2) << r.mean_error << std::setw(12) << std::fixed
       << std::setprecision(2) << r.total_time << '\n';
    os.unsetf(std::ios::floatfield);
  }
}

bool is_named_suite(const std::string& name) {
  return name == "paper1" || name == "paper2-st" || name == "paper2-ob";
}

std::vector<InstanceSpec> named_suite(const std::string& name, std::uint64_t seed) {
  std::vector<InstanceSpec> suite;
  if (name == "paper1") {
    const std::vector<std::vector<Index>> sizes = {{20, 16, 2}, {30, 24, 3}, {40, 32, 4}};
    for (const auto& d : sizes) {
      for (double noise : {0.0, 0.001, 0.01}) {
        InstanceSpec s;
        s.problem = ProblemKind::nlrm;
        s.dims = d;
        s.noise = noise;
        s.seed = seed;
        s.tol_kkt = 1e-8;
        s.t_max_seconds = 180.0;
        suite.push_back(s);
      }
    }
  } else if (name == "paper2-st" || name == "paper2-ob") {
    const std::vector<std::vector<Index>> sizes = {{40, 8}, {50, 10}, {60, 12}, {70, 14}};
    for (const auto& d : sizes) {
      InstanceSpec s;
      s.problem = name == "paper2-st" ? ProblemKind::model_st : ProblemKind::model_ob;
      s.dims = d;
      s.seed = seed;
      s.tol_kkt = 1e-6;
      s.t_max_seconds = 600.0;
      suite.push_back(s);
    }
  } else {
    throw ContractViolation("unknown suite '" + name + "'");
  }
  return suite;
}

std::vector<InstanceSpec> parse_suite_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ContractViolation(std::string("suite JSON: ") + e.what());
  }
  require(doc.is_array(), "suite JSON: expected an array of instance objects");
  std::vector<InstanceSpec> suite;
  for (const auto& item : doc) {
    require(item.is_object(), "suite JSON: each entry must be an object");
    try {
      InstanceSpec s;
      s.problem = problem_kind_from_string(item.at("problem").get<std::string>());
      s.dims = item.at("dims").get<std::vector<Index>>();
      s.noise = item.value("noise", 0.0);
      s.seed = item.value("seed", std::uint64_t{0});
      s.tol_kkt = item.value("tol_kkt", s.tol_kkt);
      if (item.contains("t_max_seconds")) s.t_max_seconds = item.at("t_max_seconds").get<double>();
      s.max_outer = item.value("max_outer", s.max_outer);
      s.validate();
      suite.push_back(s);
    } catch (const nlohmann::json::exception& e) {
      throw ContractViolation(std::string("suite JSON: ") + e.what());
    }
  }
  return suite;
}

std::vector<InstanceSpec> load_suite_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open suite file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_suite_json(buf.str());
}

}  // namespace ripm
