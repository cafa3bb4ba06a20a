#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ripm/bench.hpp"

namespace ripm {

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::nlrm: return "nlrm";
    case ProblemKind::model_st: return "model_st";
    case ProblemKind::model_ob: return "model_ob";
  }
  return "unknown";
}

ProblemKind problem_kind_from_string(const std::string& name) {
  if (name == "nlrm") return ProblemKind::nlrm;
  if (name == "model_st") return ProblemKind::model_st;
  if (name == "model_ob") return ProblemKind::model_ob;
  throw ContractViolation("unknown problem '" + name + "' (expected nlrm, model_st, model_ob)");
}

void InstanceSpec::validate() const {
  if (problem == ProblemKind::nlrm) {
    require(dims.size() == 3, "InstanceSpec: nlrm needs dims (m, n, r)");
    require(dims[0] > 0 && dims[1] > 0 && dims[2] > 0, "InstanceSpec: dims must be positive");
    require(dims[2] < std::min(dims[0], dims[1]), "InstanceSpec: need r < min(m, n)");
    require(noise >= 0.0, "InstanceSpec: noise must be nonnegative");
  } else {
    require(dims.size() == 2, "InstanceSpec: model_st/model_ob need dims (n, k)");
    require(dims[0] > 0 && dims[1] > 0, "InstanceSpec: dims must be positive");
    require(dims[1] <= dims[0], "InstanceSpec: need k <= n");
    require(noise == 0.0, "InstanceSpec: noise applies to nlrm only");
  }
  require(tol_kkt > 0.0, "InstanceSpec: tol_kkt must be positive");
  require(t_max_seconds > 0.0, "InstanceSpec: t_max_seconds must be positive");
  require(max_outer >= 0, "InstanceSpec: max_outer must be nonnegative");
}

std::string InstanceSpec::dims_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "x" : "") << dims[i];
  return os.str();
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(trial));
}

GeneratedInstance gen_nlrm(Index m, Index n, Index r, double noise, std::uint64_t seed) {
  require(m > 0 && n > 0 && r > 0 && r < std::min(m, n), "gen_nlrm: need 0 < r < min(m, n)");
  require(noise >= 0.0, "gen_nlrm: noise must be nonnegative");
  Rng rng(seed);
  const Matrix L = randu(m, r, rng);
  const Matrix R = randu(r, n, rng);
  Matrix A = L * R;
  if (noise > 0.0) A += noise * randn(m, n, rng);

  auto manifold = make_fixed_rank(m, n, r);
  Objective f;
  f.value = [A](const Point& x) { return (A - x.X).squaredNorm(); };
  f.egrad = [A](const Point& x) -> Matrix { return 2.0 * (x.X - A); };
  f.ehess = [](const Point&, const Matrix& xi) -> Matrix { return 2.0 * xi; };

  GeneratedInstance out;
  out.problem = std::make_shared<Problem>(manifold, std::move(f),
                                          std::make_shared<NonnegativityConstraints>(m, n));
  out.x0 = manifold->project_point(randn(m, n, rng).cwiseAbs());
  out.data = A;
  if (noise == 0.0) out.solution = A;
  return out;
}

namespace {

struct ModelData {
  Matrix C;
  Matrix Xstar;
};

ModelData model_data(Index n, Index k, Rng& rng) {
  require(n > 0 && k > 0 && k <= n, "model generator: need 0 < k <= n");
  std::uniform_int_distribution<Index> group(0, k - 1);
  std::vector<Index> owner(static_cast<std::size_t>(n));
  while (true) {
    std::vector<int> count(static_cast<std::size_t>(k), 0);
    for (auto& o : owner) {
      o = group(rng);
      ++count[static_cast<std::size_t>(o)];
    }
    if (std::find(count.begin(), count.end(), 0) == count.end()) break;
  }
  const Matrix vals = randu(n, k, rng, 0.5, 1.5);
  Matrix B = Matrix::Zero(n, k);
  for (Index i = 0; i < n; ++i) {
    const Index j = owner[static_cast<std::size_t>(i)];
    B(i, j) = vals(i, j);
  }
  B = B.colwise().normalized();

  const Matrix X1 = (B.array() > 0.0).cast<double>() * (1.0 + randu(n, k, rng).array());
  ModelData d;
  d.Xstar = X1.colwise().normalized();
  const Matrix Lmat = randu(k, k, rng) + static_cast<double>(k) * Matrix::Identity(k, k);
  d.C = d.Xstar * Lmat.transpose();
  return d;
}

Objective trace_objective(const Matrix& C) {
  Objective f;
  f.value = [C](const Point& x) { return -2.0 * (x.X.transpose() * C).trace(); };
  f.egrad = [C](const Point&) -> Matrix { return -2.0 * C; };
  f.ehess = [](const Point&, const Matrix& xi) -> Matrix { return Matrix::Zero(xi.rows(), xi.cols()); };
  return f;
}

}  // namespace

GeneratedInstance gen_model_st(Index n, Index k, std::uint64_t seed) {
  Rng rng(seed);
  const ModelData d = model_data(n, k, rng);
  auto manifold = make_stiefel(n, k);
  GeneratedInstance out;
  out.problem = std::make_shared<Problem>(manifold, trace_objective(d.C),
                                          std::make_shared<NonnegativityConstraints>(n, k));
  out.x0 = manifold->project_point(d.C);
  out.data = d.C;
  out.solution = d.Xstar;
  return out;
}

GeneratedInstance gen_model_ob(Index n, Index k, std::uint64_t seed) {
  Rng rng(seed);
  ModelData d = model_data(n, k, rng);
  const Matrix V = Matrix::Constant(k, 1, 1.0 / std::sqrt(static_cast<double>(k)));
  const Matrix VVt = V * V.transpose();

  ComponentConstraints::Component h;
  h.value = [V](const Point& x) { return (x.X * V).squaredNorm() - 1.0; };
  h.egrad = [VVt](const Point& x) -> Matrix { return 2.0 * x.X * VVt; };
  h.ehess = [VVt](const Point&, const Matrix& xi) -> Matrix { return 2.0 * xi * VVt; };
  Point xs;
  xs.X = d.Xstar;
  if (std::abs(h.value(xs)) > 1e-10)
    throw NumericalFailure("gen_model_ob: known solution violates the equality constraint");

  auto manifold = make_oblique(n, k);
  GeneratedInstance out;
  out.problem = std::make_shared<Problem>(
      manifold, trace_objective(d.C), std::make_shared<NonnegativityConstraints>(n, k),
      std::make_shared<ComponentConstraints>(std::vector<ComponentConstraints::Component>{h}));
  out.x0 = manifold->project_point(make_stiefel(n, k)->project_point(d.C).X);
  out.data = d.C;
  out.solution = d.Xstar;
  return out;
}

GeneratedInstance generate(const InstanceSpec& spec, std::uint64_t seed) {
  spec.validate();
  switch (spec.problem) {
    case ProblemKind::nlrm:
      return gen_nlrm(spec.dims[0], spec.dims[1], spec.dims[2], spec.noise, seed);
    case ProblemKind::model_st: return gen_model_st(spec.dims[0], spec.dims[1], seed);
    case ProblemKind::model_ob: return gen_model_ob(spec.dims[0], spec.dims[1], seed);
  }
  throw ContractViolation("generate: unknown problem kind");
}

Iterate initial_iterate(const Problem& problem, const Point& x0, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](Index size) {
    Vector v(size);
    for (Index i = 0; i < size; ++i) v(i) = 1.0 - unit(rng);  // (0, 1]
    return v;
  };
  Iterate w;
  w.x = x0;
  w.y = Vector::Zero(problem.l());
  w.z = draw(problem.m());
  w.s = draw(problem.m());
  return w;
}

Iterate perturb_iterate(const Problem& problem, const Iterate& w, double norm,
                        std::uint64_t seed) {
  require(norm >= 0.0, "perturb_iterate: norm must be nonnegative");
  Rng rng(seed);
  ProductTangent dw;
  dw.dx = problem.manifold().rand_tangent(w.x, rng);
  dw.dy = randn(problem.l(), 1, rng).col(0);
  dw.dz = randn(problem.m(), 1, rng).col(0).cwiseAbs();
  dw.ds = randn(problem.m(), 1, rng).col(0).cwiseAbs();
  dw *= norm / dw.norm();
  return product_retract(problem.manifold(), w, dw, 1.0);
}

}  // namespace ripm
