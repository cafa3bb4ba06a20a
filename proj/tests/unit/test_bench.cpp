#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "ripm/bench.hpp"
#include "ripm/csv.hpp"

using namespace ripm;
using namespace ripm::test;

namespace {

TrialResult fake_result(const InstanceSpec& spec, int trial, SolveStatus status, int iters,
                        double time, double error) {
  TrialResult r;
  r.spec = spec;
  r.trial_index = trial;
  r.status = status;
  r.outer_iters = iters;
  r.wall_time_seconds = time;
  r.final_error = error;
  return r;
}

}  // namespace

TEST_CASE("low-rank generator") {
  const auto inst = gen_nlrm(12, 9, 3, 0.0, 61);
  const Matrix& a = inst.data;
  CHECK(a.minCoeff() >= 0.0);
  const Vector sv = Eigen::JacobiSVD<Matrix>(a).singularValues();
  CHECK(sv(3) <= 1e-12 * sv(0));
  CHECK(inst.problem->objective().value(inst.problem->manifold().project_point(a)) <= 1e-20);
  CHECK(inst.problem->manifold().feasibility_error(inst.x0) <= 1e-10);
  CHECK(inst.solution == a);

  const auto noisy = gen_nlrm(12, 9, 3, 0.01, 61);
  CHECK(noisy.solution.size() == 0);
  CHECK((noisy.data - a).norm() > 0.0);
  CHECK_THROWS_AS(gen_nlrm(4, 4, 4, 0.0, 1), ContractViolation);
}

TEST_CASE("Stiefel and oblique generators") {
  const auto st = gen_model_st(30, 5, 62);
  CHECK((st.solution.transpose() * st.solution - Matrix::Identity(5, 5)).norm() <= 1e-12);
  CHECK(st.solution.minCoeff() >= 0.0);
  CHECK(st.problem->manifold().feasibility_error(st.x0) <= 1e-10);
  CHECK(st.problem->l() == 0);
  CHECK(st.problem->m() == 150);

  const auto ob = gen_model_ob(30, 5, 62);
  CHECK((ob.solution.colwise().norm().array() - 1.0).abs().maxCoeff() <= 1e-12);
  CHECK(ob.problem->manifold().feasibility_error(ob.x0) <= 1e-10);
  REQUIRE(ob.problem->l() == 1);
  CHECK(std::abs(ob.problem->equalities().values(Point{ob.solution, {}, {}, {}})(0)) <= 1e-10);
}

TEST_CASE("generators are deterministic in the seed") {
  CHECK(gen_model_st(20, 4, 7).data == gen_model_st(20, 4, 7).data);
  CHECK(gen_model_st(20, 4, 7).data != gen_model_st(20, 4, 8).data);
  CHECK(gen_nlrm(8, 6, 2, 0.01, 3).x0.X == gen_nlrm(8, 6, 2, 0.01, 3).x0.X);
}

TEST_CASE("trial seeds") {
  CHECK(trial_seed(5, 3) == trial_seed(5, 3));
  std::set<std::uint64_t> seen;
  for (int t = 0; t < 100; ++t) seen.insert(trial_seed(5, t));
  for (int t = 0; t < 100; ++t) seen.insert(trial_seed(6, t));
  CHECK(seen.size() == 200);
}

TEST_CASE("initial iterate") {
  const auto inst = gen_model_ob(10, 3, 63);
  const Iterate w = initial_iterate(*inst.problem, inst.x0, 11);
  CHECK(w.y == Vector::Zero(1));
  CHECK(w.z.minCoeff() > 0.0);
  CHECK(w.z.maxCoeff() <= 1.0);
  CHECK(w.s.minCoeff() > 0.0);
  CHECK(w.s.maxCoeff() <= 1.0);
  CHECK(initial_iterate(*inst.problem, inst.x0, 11).z == w.z);
}

TEST_CASE("perturbed iterate") {
  const auto inst = gen_model_st(10, 3, 64);
  const Problem& p = *inst.problem;
  const Iterate w = initial_iterate(p, inst.x0, 1);
  const Iterate v = perturb_iterate(p, w, 1e-3, 2);
  CHECK(p.manifold().feasibility_error(v.x) <= 1e-12);
  CHECK((v.z - w.z).minCoeff() >= 0.0);
  CHECK((v.s - w.s).minCoeff() >= 0.0);
  const double moved = std::sqrt((v.x.X - w.x.X).squaredNorm() + (v.z - w.z).squaredNorm() +
                                 (v.s - w.s).squaredNorm());
  CHECK(moved == doctest::Approx(1e-3).epsilon(1e-3));
}

TEST_CASE("format_double round trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0, 123456789.0}) {
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("suite JSON parsing") {
  const auto suite = parse_suite_json(R"([
    {"problem": "nlrm", "dims": [20, 16, 2], "noise": 0.01, "seed": 4, "tol_kkt": 1e-8},
    {"problem": "model_ob", "dims": [40, 8], "t_max_seconds": 30, "max_outer": 50}
  ])");
  REQUIRE(suite.size() == 2);
  CHECK(suite[0].problem == ProblemKind::nlrm);
  CHECK(suite[0].dims_string() == "20x16x2");
  CHECK(suite[0].noise == 0.01);
  CHECK(suite[0].seed == 4);
  CHECK(suite[0].tol_kkt == 1e-8);
  CHECK(suite[1].problem == ProblemKind::model_ob);
  CHECK(suite[1].noise == 0.0);
  CHECK(suite[1].tol_kkt == 1e-6);
  CHECK(suite[1].t_max_seconds == 30.0);
  CHECK(suite[1].max_outer == 50);

  CHECK_THROWS_AS(parse_suite_json("{"), ContractViolation);
  CHECK_THROWS_AS(parse_suite_json(R"({"problem": "nlrm"})"), ContractViolation);
  CHECK_THROWS_AS(parse_suite_json(R"([{"dims": [4, 4, 1]}])"), ContractViolation);
  CHECK_THROWS_AS(parse_suite_json(R"([{"problem": "lp", "dims": [4]}])"), ContractViolation);
  CHECK_THROWS_AS(parse_suite_json(R"([{"problem": "nlrm", "dims": [4, 4]}])"), ContractViolation);
  CHECK_THROWS_AS(parse_suite_json(R"([{"problem": "model_st", "dims": "40x8"}])"), ContractViolation);
  CHECK_THROWS_AS(load_suite_file("/nonexistent/suite.json"), Error);
}

TEST_CASE("named suites") {
  const auto s1 = named_suite("paper1", 9);
  CHECK(s1.size() == 9);
  for (const auto& s : s1) CHECK(s.seed == 9);
  const auto st = named_suite("paper2-st", 9);
  REQUIRE(st.size() == 4);
  CHECK(st.back().dims_string() == "70x14");
  CHECK(named_suite("paper2-ob", 9)[0].problem == ProblemKind::model_ob);
  CHECK(is_named_suite("paper1"));
  CHECK_FALSE(is_named_suite("suite.json"));
  CHECK_THROWS_AS(named_suite("paper3", 1), ContractViolation);
}

TEST_CASE("aggregate averages over successful trials") {
  InstanceSpec a;
  a.dims = {8, 6, 2};
  InstanceSpec b = a;
  b.noise = 0.01;
  const std::vector<TrialResult> results = {
      fake_result(a, 0, SolveStatus::success, 10, 1.0, 1e-8),
      fake_result(a, 1, SolveStatus::line_search_failure, 99, 5.0, 1.0),
      fake_result(a, 2, SolveStatus::success, 20, 3.0, 3e-8),
      fake_result(a, 3, SolveStatus::success, 40, 2.0, std::numeric_limits<double>::quiet_NaN()),
      fake_result(b, 0, SolveStatus::max_time, 7, 4.0, 1.0),
  };
  const auto rows = aggregate(results);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].trials == 4);
  CHECK(rows[0].successes == 3);
  CHECK(rows[0].success_rate == 0.75);
  CHECK(rows[0].mean_time == doctest::Approx(2.0));
  CHECK(rows[0].mean_iters == doctest::Approx(70.0 / 3.0));
  CHECK(rows[0].median_iters == 20.0);
  CHECK(rows[0].mean_error == doctest::Approx(2e-8));
  CHECK(rows[0].total_time == doctest::Approx(11.0));
  CHECK(rows[1].successes == 0);
  CHECK(std::isnan(rows[1].mean_iters));
  CHECK(std::isnan(rows[1].mean_error));
}

TEST_CASE("CSV output") {
  InstanceSpec a;
  a.problem = ProblemKind::model_st;
  a.dims = {40, 8};
  a.seed = 3;
  std::ostringstream os;
  write_csv(os, {fake_result(a, 2, SolveStatus::success, 31, 0.5, 3.72e-8)});
  std::istringstream lines(os.str());
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header == "problem,dims,noise,seed,trial,status,iters,time_s,kkt_residual,error");
  CHECK(row == "model_st,40x8,0,3,2,success,31,0.5,0,3.72e-08");
}

TEST_CASE("bench results do not depend on the number of jobs") {
  InstanceSpec s;
  s.problem = ProblemKind::model_st;
  s.dims = {12, 3};
  s.seed = 65;
  InstanceSpec t = s;
  t.problem = ProblemKind::nlrm;
  t.dims = {8, 6, 2};
  BenchOptions serial;
  serial.trials = 3;
  BenchOptions parallel = serial;
  parallel.jobs = 3;
  const auto a = run_bench({s, t}, serial);
  const auto b = run_bench({s, t}, parallel);
  REQUIRE(a.size() == 6);
  REQUIRE(b.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].trial_index == static_cast<int>(i % 3));
    CHECK(a[i].spec.problem == b[i].spec.problem);
    CHECK(a[i].status == b[i].status);
    CHECK(a[i].outer_iters == b[i].outer_iters);
    CHECK(a[i].final_kkt_residual == b[i].final_kkt_residual);
  }
}

TEST_CASE("failing trials are recorded, not thrown") {
  InstanceSpec s;
  s.problem = ProblemKind::model_st;
  s.dims = {12, 3};
  s.max_outer = 1;
  const TrialResult r = run_trial(s, 0);
  CHECK(r.status == SolveStatus::max_iterations);
  CHECK(r.outer_iters == 1);
}
