#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ripm/diagnostics.hpp"
#include "ripm/kkt.hpp"

using namespace ripm;
using namespace ripm::test;

namespace {

Iterate single_constraint_iterate(double z, double s) {
  return Iterate{column_point({0.3, -0.4, 1.0}), Vector(0), vec({z}), vec({s})};
}

}  // namespace

TEST_CASE("kkt_residual examples") {
  // grad L = z c vanishes with c = 0, leaving g = -b.
  const Problem zero_g = linear_constraint_problem(Vector::Zero(3), 0.0);
  CHECK(kkt_residual(zero_g, single_constraint_iterate(-0.1, 1.0)) == doctest::Approx(0.1));

  const Problem positive_g = linear_constraint_problem(Vector::Zero(3), -0.2);
  CHECK(kkt_residual(positive_g, single_constraint_iterate(0.5, 1.0)) ==
        doctest::Approx(std::sqrt(0.05)));
}

TEST_CASE("field, merit and residual vanish at a KKT point") {
  // min 1/2 |x - a|^2 s.t. x >= 0 with a = (1, -1, 2): x = (1, 0, 2), z = (0, 1, 0).
  const Problem p = box_problem(vec({1.0, -1.0, 2.0}));
  const Iterate w{column_point({1.0, 0.0, 2.0}), Vector(0), vec({0.0, 1.0, 0.0}), vec({1.0, 0.0, 2.0})};
  const KktSystem sys(p, w);
  CHECK(sys.field_norm() == 0.0);
  CHECK(sys.merit() == 0.0);
  CHECK(sys.merit_gradient().norm() == 0.0);
  CHECK(sys.kkt_residual() == 0.0);
}

TEST_CASE("z = 0 zeroes Fs whatever s is") {
  const Problem p = box_problem(vec({1.0, 2.0}));
  const Iterate w{column_point({0.5, 0.5}), Vector(0), Vector::Zero(2), vec({3.0, 7.0})};
  CHECK(kkt_field(p, w).ds.norm() == 0.0);
}

TEST_CASE("noiseless low-rank approximation is a KKT point at the data") {
  const auto inst = gen_nlrm(8, 6, 2, 0.0, 21);
  const Problem& p = *inst.problem;
  Iterate w;
  w.x = p.manifold().project_point(inst.solution);
  w.z = Vector::Zero(p.m());
  w.s = Eigen::Map<const Vector>(inst.solution.data(), p.m());
  CHECK(kkt_field(p, w).norm() <= 1e-12 * inst.solution.norm());
}

TEST_CASE("nabla F block examples") {
  const Problem p = box_problem(vec({1.0, 2.0, 3.0}));
  const Iterate w{column_point({0.5, 0.2, 0.1}), Vector(0), Vector::Ones(3), vec({0.3, 4.0, 2.0})};
  const ProductTangent zero = zero_product_tangent(p.manifold(), w);
  CHECK(nablaF_apply(p, w, zero).norm() == 0.0);
  CHECK(nablaF_adjoint_apply(p, w, zero).norm() == 0.0);

  ProductTangent ds = zero;
  ds.ds = Vector::Ones(3);
  const ProductTangent out = nablaF_apply(p, w, ds);
  CHECK(out.dx.norm() == 0.0);
  CHECK(out.dz == Vector::Ones(3));
  CHECK(out.ds == Vector::Ones(3));
}

TEST_CASE("nabla F adjoint example with one inequality") {
  const Vector c = vec({1.0, -2.0, 0.5});
  const Problem p = linear_constraint_problem(c, 0.3);
  const Iterate w = single_constraint_iterate(2.0, 3.0);
  ProductTangent v = zero_product_tangent(p.manifold(), w);
  v.dz = vec({1.0});
  const ProductTangent out = nablaF_adjoint_apply(p, w, v);
  CHECK(rel(out.dx.ambient(), c) < 1e-15);
  CHECK(out.dz(0) == 0.0);
  CHECK(out.ds(0) == 1.0);
}

TEST_CASE("norm chain on interior iterates") {
  Rng rng(22);
  for (const auto& bp : benchmark_problems(3)) {
    const Problem& p = *bp.instance.problem;
    const double rm = std::sqrt(static_cast<double>(p.m()));
    for (int k = 0; k < 20; ++k) {
      const KktSystem sys(p, random_interior_iterate(p, rng));
      const Vector zs = sys.iterate().z.cwiseProduct(sys.iterate().s);
      CHECK(zs.norm() / rm <= zs.sum() / rm * (1 + 1e-12));
      CHECK(zs.sum() / rm <= zs.norm() * (1 + 1e-12));
      CHECK(zs.norm() <= sys.field_norm() * (1 + 1e-12));
    }
  }
}

TEST_CASE("nabla F is linear and its adjoint pairs with it") {
  Rng rng(23);
  for (const auto& bp : benchmark_problems(4)) {
    CAPTURE(bp.name);
    const Problem& p = *bp.instance.problem;
    const Manifold& m = p.manifold();
    double worst_lin = 0.0, worst_adj = 0.0;
    for (int k = 0; k < 100; ++k) {
      const KktSystem sys(p, random_interior_iterate(p, rng));
      const ProductTangent a = random_product_tangent(m, sys.iterate(), rng);
      const ProductTangent b = random_product_tangent(m, sys.iterate(), rng);
      const ProductTangent fa = sys.apply(a);
      const ProductTangent combo = sys.apply(0.7 * a + (-1.3) * b);
      const ProductTangent expect = 0.7 * fa + (-1.3) * sys.apply(b);
      worst_lin = std::max(worst_lin, (combo - expect).norm() / expect.norm());
      const double lhs = inner(fa, b);
      const double rhs = inner(a, sys.adjoint_apply(b));
      worst_adj = std::max(worst_adj, std::abs(lhs - rhs) / (fa.norm() * b.norm()));
    }
    CHECK(worst_lin <= 1e-12);
    CHECK(worst_adj <= 1e-12);
  }
}

TEST_CASE("merit gradient matches a central difference along the retraction") {
  Rng rng(24);
  for (const auto& bp : benchmark_problems(5)) {
    CAPTURE(bp.name);
    const Problem& p = *bp.instance.problem;
    const KktSystem sys(p, random_interior_iterate(p, rng));
    const ProductTangent dw = random_product_tangent(p.manifold(), sys.iterate(), rng);
    const double h = 1e-5;
    const double fd = (merit(p, product_retract(p.manifold(), sys.iterate(), dw, h)) -
                       merit(p, product_retract(p.manifold(), sys.iterate(), dw, -h))) /
                      (2 * h);
    const double exact = inner(sys.merit_gradient(), dw);
    CHECK(rel(fd, exact) <= 1e-6);
    CHECK(rel(sys.merit_gradient().norm(), grad_merit(p, sys.iterate()).norm()) < 1e-14);
  }
}

TEST_CASE("strict interiority") {
  CHECK(strictly_interior(single_constraint_iterate(1.0, 1e-300)));
  CHECK_FALSE(strictly_interior(single_constraint_iterate(0.0, 1.0)));
  CHECK_FALSE(strictly_interior(single_constraint_iterate(1.0, std::nan(""))));
  CHECK_THROWS_AS(require_interior(single_constraint_iterate(1.0, -1.0), "test"), InteriorViolation);
}
