#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "ripm/diagnostics.hpp"
#include "ripm/manifold.hpp"

using namespace ripm;
using namespace ripm::test;

namespace {

std::vector<ManifoldPtr> all_manifolds() {
  return {make_euclidean(5, 3), make_stiefel(6, 3), make_oblique(5, 4), make_fixed_rank(7, 5, 2)};
}

Matrix gram(const std::vector<TangentVector>& basis) {
  const Index d = static_cast<Index>(basis.size());
  Matrix g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(i, j) = inner(basis[i], basis[j]);
  return g;
}

}  // namespace

TEST_CASE("inner product on euclidean space") {
  const auto m = make_euclidean(2, 1);
  const Point x = column_point({0.0, 0.0});
  CHECK(m->inner(x, column_tangent({1.0, 2.0}), column_tangent({3.0, -1.0})) == doctest::Approx(1.0));
  CHECK(m->inner(x, m->zero_tangent(x), m->zero_tangent(x)) == 0.0);
}

TEST_CASE("inner of a tangent with itself is its squared norm") {
  Rng rng(1);
  for (const auto& m : all_manifolds()) {
    const Point x = m->rand_point(rng);
    const TangentVector xi = m->proj(x, randn(m->ambient_rows(), m->ambient_cols(), rng));
    CHECK(rel(m->inner(x, xi, xi), m->to_ambient(x, xi).squaredNorm()) < 1e-12);
  }
}

TEST_CASE("oblique projection and Riemannian gradient") {
  const auto m = make_oblique(2, 1);
  const Point x = column_point({1.0, 0.0});
  CHECK(rel(m->proj(x, vec({2.0, 3.0})).ambient(), vec({0.0, 3.0})) < 1e-15);
  CHECK(rel(m->egrad2rgrad(x, vec({5.0, 7.0})).ambient(), vec({0.0, 7.0})) < 1e-15);
}

TEST_CASE("euclidean projection and retraction are trivial") {
  Rng rng(2);
  const auto m = make_euclidean(3, 2);
  const Point x{Matrix::Zero(3, 2), {}, {}, {}};
  const Matrix u = randn(3, 2, rng);
  CHECK(m->proj(x, u).ambient() == u);
  CHECK(m->egrad2rgrad(x, u).ambient() == u);
  CHECK(m->retract(x, TangentVector(u)).X == u);
}

TEST_CASE("stiefel QR retraction of a quarter turn") {
  const auto m = make_stiefel(2, 1);
  const Point y = m->retract(column_point({1.0, 0.0}), column_tangent({0.0, 1.0}));
  CHECK(rel(y.X, vec({1.0, 1.0}) / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("retraction of the zero tangent is the identity") {
  Rng rng(3);
  for (const auto& m : all_manifolds()) {
    const Point x = m->rand_point(rng);
    CHECK(m->retract(x, m->zero_tangent(x)).X == x.X);
  }
}

TEST_CASE("projection is idempotent and self-adjoint") {
  Rng rng(4);
  for (const auto& m : all_manifolds()) {
    CAPTURE(m->name());
    double worst_idem = 0.0;
    double worst_adj = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Point x = m->rand_point(rng);
      const Matrix u = randn(m->ambient_rows(), m->ambient_cols(), rng);
      const Matrix v = randn(m->ambient_rows(), m->ambient_cols(), rng);
      const TangentVector pu = m->proj(x, u);
      worst_idem = std::max(worst_idem, rel(m->to_ambient(x, m->proj(x, pu)), m->to_ambient(x, pu)));
      const double a = (m->to_ambient(x, pu).array() * v.array()).sum();
      const double b = (u.array() * m->to_ambient(x, m->proj(x, v)).array()).sum();
      worst_adj = std::max(worst_adj, std::abs(a - b) / (u.norm() * v.norm()));
    }
    CHECK(worst_idem <= 1e-10);
    CHECK(worst_adj <= 1e-10);
  }
}

TEST_CASE("points stay on the manifold after retraction") {
  Rng rng(5);
  for (const auto& m : all_manifolds()) {
    CAPTURE(m->name());
    Point x = m->rand_point(rng);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      TangentVector xi = m->rand_tangent(x, rng);
      xi *= 0.3;
      x = m->retract(x, xi);
      worst = std::max(worst, m->feasibility_error(x));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("retractions agree with X + t xi to second order") {
  Rng rng(6);
  for (const auto& m : {make_stiefel(6, 3), make_oblique(5, 4), make_fixed_rank(7, 5, 2)}) {
    CAPTURE(m->name());
    const Point x = m->rand_point(rng);
    const TangentVector xi = m->rand_tangent(x, rng);
    std::vector<double> steps, errors;
    for (double t = 1e-2; t >= 1e-5 * 0.999; t /= std::sqrt(10.0)) {
      TangentVector txi = xi;
      txi *= t;
      steps.push_back(t);
      errors.push_back((m->retract(x, txi).X - (x.X + m->to_ambient(x, txi))).norm());
    }
    CHECK(loglog_slope(steps, errors) >= 1.9);
  }
}

TEST_CASE("orthonormal tangent bases") {
  Rng rng(7);
  SUBCASE("euclidean 2x1") {
    const auto m = make_euclidean(2, 1);
    const auto basis = orthonormal_basis(*m, column_point({0.3, -0.2}), rng);
    REQUIRE(basis.size() == 2);
    CHECK((gram(basis) - Matrix::Identity(2, 2)).norm() <= 1e-10);
  }
  SUBCASE("stiefel(3,1) is the sphere") {
    const auto m = make_stiefel(3, 1);
    const Point x = m->rand_point(rng);
    const auto basis = orthonormal_basis(*m, x, rng);
    REQUIRE(basis.size() == 2);
    CHECK((gram(basis) - Matrix::Identity(2, 2)).norm() <= 1e-10);
    for (const auto& u : basis) CHECK(std::abs(x.X.col(0).dot(u.ambient().col(0))) <= 1e-12);
  }
  SUBCASE("fixed_rank(4,4,2)") {
    const auto m = make_fixed_rank(4, 4, 2);
    const Point x = m->rand_point(rng);
    const auto basis = orthonormal_basis(*m, x, rng);
    REQUIRE(basis.size() == 12);
    CHECK((gram(basis) - Matrix::Identity(12, 12)).norm() <= 1e-10);
    for (const auto& u : basis) CHECK(m->tangency_error(x, u) <= 1e-12);
  }
}

TEST_CASE("fixed-rank retraction with a rank-deficient normal part stays orthonormal") {
  Rng rng(8);
  const auto m = make_fixed_rank(8, 6, 3);
  const Point x = m->rand_point(rng);
  // Up of rank one, Vp zero: the completion of the column basis is arbitrary.
  Matrix up = randn(8, 1, rng) * randn(1, 3, rng);
  up -= x.U * (x.U.transpose() * up);
  const TangentVector xi(randn(3, 3, rng), up, Matrix::Zero(6, 3));
  const Point y = m->retract(x, xi);
  CHECK(m->feasibility_error(y) <= 1e-12);
  const TangentVector eta = m->proj(y, randn(8, 6, rng));
  CHECK(m->tangency_error(y, m->proj(y, eta)) <= 1e-12 * eta.norm());
}

TEST_CASE("fixed-rank projection of a matrix with a singular-value tie is rejected") {
  const auto m = make_fixed_rank(3, 3, 2);
  CHECK_THROWS_AS(m->project_point(Matrix::Identity(3, 3)), RankDropError);
}

TEST_CASE("shape mismatches are contract violations") {
  const auto m = make_stiefel(4, 2);
  Rng rng(9);
  const Point x = m->rand_point(rng);
  CHECK_THROWS_AS(m->proj(x, Matrix::Zero(3, 2)), ContractViolation);
  CHECK_THROWS_AS(make_fixed_rank(3, 3, 3), ContractViolation);
}

TEST_CASE("stiefel Hessian of a linear function is self-adjoint") {
  Rng rng(10);
  const auto m = make_stiefel(5, 2);
  const Point x = m->rand_point(rng);
  const Matrix c = randn(5, 2, rng);
  const TangentVector xi = m->rand_tangent(x, rng);
  const TangentVector eta = m->rand_tangent(x, rng);
  const Matrix zero = Matrix::Zero(5, 2);
  const TangentVector hxi = m->ehess2rhess(x, c, zero, xi);
  const TangentVector heta = m->ehess2rhess(x, c, zero, eta);
  const Matrix s = 0.5 * (x.X.transpose() * c + c.transpose() * x.X);
  CHECK(rel(hxi.ambient(), m->proj(x, Matrix(-xi.ambient() * s)).ambient()) < 1e-12);
  const double a = inner(hxi, eta);
  const double b = inner(xi, heta);
  CHECK(std::abs(a - b) <= 1e-10 * std::max(std::abs(a), 1e-12));
}
