#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "ripm/dense_oracle.hpp"
#include "ripm/diagnostics.hpp"

namespace ripm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double rel_error(const Vector& a, const Vector& b) {
  return (a - b).norm() / std::max(b.norm(), std::numeric_limits<double>::min());
}

Vector random_vector(Index n, Rng& rng) { return randn(n, 1, rng).col(0); }

ConstraintSetPtr borrow(const ConstraintSet& c) {
  return ConstraintSetPtr(ConstraintSetPtr{}, &c);
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

TangentVector taylor_direction(const Manifold& manifold, const Point& x, Rng& rng, double scale) {
  double radius = 1.0;
  switch (manifold.kind()) {
    case ManifoldKind::fixed_rank: radius = x.S.minCoeff(); break;
    case ManifoldKind::euclidean: radius = std::max(1.0, x.X.norm()); break;
    default: break;
  }
  TangentVector xi = manifold.rand_tangent(x, rng);
  xi *= scale * radius;
  return xi;
}

std::vector<TaylorSummary> taylor_suite(const Problem& problem, const std::string& name, Rng& rng,
                                        int draws) {
  require(draws >= 1, "taylor_suite: need at least one draw");
  const Manifold& mf = problem.manifold();
  struct Family {
    std::string label;
    std::function<Objective(Rng&)> make;
  };
  std::vector<Family> families;
  families.push_back({name + " objective", [&](Rng&) { return problem.objective(); }});
  families.push_back({name + " inequalities", [&](Rng& r) {
                        return constraint_combination(borrow(problem.inequalities()),
                                                      random_vector(problem.m(), r));
                      }});
  if (problem.l() > 0) {
    families.push_back({name + " equalities", [&](Rng& r) {
                          return constraint_combination(borrow(problem.equalities()),
                                                        random_vector(problem.l(), r));
                        }});
  }
  std::vector<TaylorSummary> out;
  for (const auto& fam : families) {
    std::vector<double> g, h;
    for (int i = 0; i < draws; ++i) {
      const Point x = mf.rand_point(rng);
      const Objective f = fam.make(rng);
      const TangentVector xi = taylor_direction(mf, x, rng);
      const TaylorResult r = taylor_check(mf, x, f, xi);
      g.push_back(r.gradient_slope);
      h.push_back(r.hessian_slope);
    }
    out.push_back({fam.label, median(g), median(h)});
  }
  return out;
}

std::vector<BenchmarkProblem> benchmark_problems(std::uint64_t seed) {
  return {{"nlrm(20,16,2)", gen_nlrm(20, 16, 2, 0.0, splitmix64(seed + 1))},
          {"model_st(40,8)", gen_model_st(40, 8, splitmix64(seed + 2))},
          {"model_ob(40,8)", gen_model_ob(40, 8, splitmix64(seed + 3))}};
}

Iterate random_interior_iterate(const Problem& problem, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Iterate w;
  w.x = problem.manifold().rand_point(rng);
  w.y = random_vector(problem.l(), rng);
  w.z.resize(problem.m());
  w.s.resize(problem.m());
  for (Index i = 0; i < problem.m(); ++i) {
    w.z(i) = 1.0 - unit(rng);
    w.s(i) = 1.0 - unit(rng);
  }
  return w;
}

CheckLine check_oracle_equivalence(const CheckOptions& options) {
  const auto start = Clock::now();
  CheckLine line{"oracle equivalence", true, {}, 0.0};
  double worst_f = 0.0, worst_t = 0.0;
  Rng rng(splitmix64(options.seed ^ 0x01));
  for (const auto& bp : benchmark_problems(options.seed)) {
    const Problem& p = *bp.instance.problem;
    const Index l = p.l(), m = p.m();
    for (int k = 0; k < options.oracle_points; ++k) {
      const KktSystem sys(p, random_interior_iterate(p, rng));
      const auto basis = orthonormal_basis(p.manifold(), sys.iterate().x, rng);
      const Index d = static_cast<Index>(basis.size());
      const DenseBlocks blocks = dense_blocks(sys, basis, options.exec);

      const Vector c = random_vector(d + l + 2 * m, rng);
      const ProductTangent u = product_from_coordinates(basis, l, m, c);
      const Vector dense = dense_nablaF_matrix(blocks, sys.iterate()) * c;
      worst_f = std::max(worst_f, rel_error(product_coordinates(basis, sys.apply(u)), dense));

      const Vector ct = random_vector(d + l, rng);
      CondensedVector v;
      v.x = tangent_from_coordinates(basis, ct.head(d));
      v.y = ct.tail(l);
      const CondensedVector tv = CondensedOperator(sys).apply(v);
      Vector free(d + l);
      free << tangent_coordinates(basis, tv.x), tv.y;
      worst_t = std::max(worst_t,
                         rel_error(free, dense_condensed_matrix(blocks, sys.iterate()) * ct));
    }
  }
  line.pass = worst_f <= 1e-10 && worst_t <= 1e-10;
  line.detail = "max rel error nablaF " + sci(worst_f) + ", condensed " + sci(worst_t) + " over " +
                std::to_string(options.oracle_points) + " points x 3 manifolds";
  line.seconds = seconds_since(start);
  return line;
}

CheckLine check_adjointness(const CheckOptions& options) {
  const auto start = Clock::now();
  CheckLine line{"adjointness", true, {}, 0.0};
  double worst_f = 0.0, worst_t = 0.0;
  Rng rng(splitmix64(options.seed ^ 0x02));
  for (const auto& bp : benchmark_problems(options.seed)) {
    const Problem& p = *bp.instance.problem;
    const Manifold& mf = p.manifold();
    for (int k = 0; k < options.adjoint_pairs; ++k) {
      const KktSystem sys(p, random_interior_iterate(p, rng));
      const Point& x = sys.iterate().x;
      auto random_product = [&] {
        ProductTangent v;
        v.dx = mf.rand_tangent(x, rng);
        v.dy = random_vector(p.l(), rng);
        v.dz = random_vector(p.m(), rng);
        v.ds = random_vector(p.m(), rng);
        return v;
      };
      const ProductTangent u = random_product(), v = random_product();
      const ProductTangent au = sys.apply(u);
      const double lhs = inner(au, v);
      const double rhs = inner(u, sys.adjoint_apply(v));
      worst_f = std::max(worst_f, std::abs(lhs - rhs) / (au.norm() * v.norm()));

      const CondensedOperator op(sys);
      CondensedVector a{mf.rand_tangent(x, rng), random_vector(p.l(), rng)};
      CondensedVector b{mf.rand_tangent(x, rng), random_vector(p.l(), rng)};
      const CondensedVector ta = op.apply(a);
      const double tl = inner(ta, b);
      const double tr = inner(a, op.apply(b));
      worst_t = std::max(worst_t, std::abs(tl - tr) / std::sqrt(ta.squared_norm() * b.squared_norm()));
    }
  }
  line.pass = worst_f <= 1e-10 && worst_t <= 1e-10;
  line.detail = "max rel pairing gap nablaF " + sci(worst_f) + ", condensed " + sci(worst_t) +
                " over " + std::to_string(options.adjoint_pairs) + " pairs x 3 problems";
  line.seconds = seconds_since(start);
  return line;
}

CheckLine check_taylor(const CheckOptions& options) {
  const auto start = Clock::now();
  CheckLine line{"taylor slopes", true, {}, 0.0};
  Rng rng(splitmix64(options.seed ^ 0x03));
  std::ostringstream detail;
  int count = 0;
  for (const auto& bp : benchmark_problems(options.seed)) {
    for (const auto& t : taylor_suite(*bp.instance.problem, bp.name, rng, options.taylor_draws)) {
      ++count;
      if (!t.passes()) {
        line.pass = false;
        detail << t.label << ": gradient " << t.gradient_slope << ", hessian " << t.hessian_slope
               << "; ";
      }
    }
  }
  if (line.pass) detail << count << " function families, all slopes in range";
  line.detail = detail.str();
  line.seconds = seconds_since(start);
  return line;
}

CheckLine check_cr(const CheckOptions& options) {
  const auto start = Clock::now();
  CheckLine line{"conjugate residual", true, {}, 0.0};
  Rng rng(splitmix64(options.seed ^ 0x04));
  std::uniform_int_distribution<Index> dim(2, 50);
  std::uniform_real_distribution<double> mag(0.1, 10.0);
  std::bernoulli_distribution sign(0.5);
  double worst = 0.0;
  double worst_unbounded = 0.0;
  int within = 0;
  for (int k = 0; k < options.cr_systems; ++k) {
    const Index n = dim(rng);
    const Matrix q = qr_orthonormal_factor(randn(n, n, rng));
    Vector lambda(n);
    for (Index i = 0; i < n; ++i) lambda(i) = (sign(rng) ? 1.0 : -1.0) * mag(rng);
    const Matrix a = q * lambda.asDiagonal() * q.transpose();
    const Vector b = random_vector(n, rng);
    const auto op = [&a](const Vector& v) -> Vector { return a * v; };
    const Vector exact = a.partialPivLu().solve(b);
    const auto res = cr_solve(op, b, 1e-12, static_cast<int>(n));
    worst = std::max(worst, rel_error(res.solution, exact));
    if (res.report.status == CrStatus::converged) ++within;
    const auto free_run = cr_solve(op, b, 1e-12, static_cast<int>(10 * n));
    worst_unbounded = std::max(worst_unbounded, rel_error(free_run.solution, exact));
  }
  line.pass = worst <= 1e-8 && within == options.cr_systems;
  line.detail = std::to_string(within) + "/" + std::to_string(options.cr_systems) +
                " systems converged within dimension-many iterations, max rel error " +
                sci(worst) + " (" + sci(worst_unbounded) + " with up to 10n iterations)";
  line.seconds = seconds_since(start);
  return line;
}

CheckLine check_spectral_witness(const CheckOptions& options) {
  const auto start = Clock::now();
  CheckLine line{"nonsingularity at KKT point", true, {}, 0.0};
  // min |x - a|^2 / 2 on R^3 s.t. x1 + x3 = 1.5, x >= 0, a = (1.5, -2, 1):
  // x* = (1, 0, 0.5), y* = 0.5, z* = (0, 2, 0), s* = x*.
  const Vector a = (Vector(3) << 1.5, -2.0, 1.0).finished();
  Objective f;
  f.value = [a](const Point& x) { return 0.5 * (x.X.col(0) - a).squaredNorm(); };
  f.egrad = [a](const Point& x) -> Matrix { return x.X.col(0) - a; };
  f.ehess = [](const Point&, const Matrix& xi) -> Matrix { return xi; };
  ComponentConstraints::Component h;
  h.value = [](const Point& x) { return x.X(0, 0) + x.X(2, 0) - 1.5; };
  h.egrad = [](const Point&) -> Matrix { return (Matrix(3, 1) << 1.0, 0.0, 1.0).finished(); };
  h.ehess = [](const Point&, const Matrix&) -> Matrix { return Matrix::Zero(3, 1); };
  const Problem p(make_euclidean(3, 1), f, std::make_shared<NonnegativityConstraints>(3, 1),
                  std::make_shared<ComponentConstraints>(
                      std::vector<ComponentConstraints::Component>{h}));
  Iterate w;
  w.x.X = (Matrix(3, 1) << 1.0, 0.0, 0.5).finished();
  w.y = (Vector(1) << 0.5).finished();
  w.z = (Vector(3) << 0.0, 2.0, 0.0).finished();
  w.s = w.x.X.col(0);
  const KktSystem sys(p, w);
  Rng rng(splitmix64(options.seed ^ 0x05));
  const auto basis = orthonormal_basis(p.manifold(), w.x, rng);
  const Vector sv = singular_values(dense_nablaF_matrix(dense_blocks(sys, basis, options.exec), w));
  const double smin = sv(sv.size() - 1);
  line.pass = sys.field_norm() <= 1e-14 && smin > 1e-8;
  line.detail = "|F(w*)| = " + sci(sys.field_norm()) + ", sigma_min = " + sci(smin);
  line.seconds = seconds_since(start);
  return line;
}

void print_check_line(std::ostream& os, const CheckLine& line) {
  os << (line.pass ? "PASS " : "FAIL ") << line.name << ": " << line.detail << " ("
     << sci(line.seconds) << " s)\n";
}

std::vector<CheckLine> run_check_suite(const CheckOptions& options, std::ostream* log) {
  std::vector<CheckLine> lines;
  for (auto fn : {check_oracle_equivalence, check_adjointness, check_taylor, check_cr,
                  check_spectral_witness}) {
    lines.push_back(fn(options));
    if (log) print_check_line(*log, lines.back());
  }
  return lines;
}

}  // namespace ripm
