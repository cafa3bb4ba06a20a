#include "ripm/dense_oracle.hpp"

#include <sstream>

namespace ripm {

Vector tangent_coordinates(const std::vector<TangentVector>& basis, const TangentVector& v) {
  Vector c(static_cast<Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) c(static_cast<Index>(i)) = inner(basis[i], v);
  return c;
}

TangentVector tangent_from_coordinates(const std::vector<TangentVector>& basis,
                                       const Eigen::Ref<const Vector>& c) {
  require(!basis.empty() && c.size() == static_cast<Index>(basis.size()),
          "tangent_from_coordinates: size mismatch");
  TangentVector v = basis[0];
  v.set_zero();
  for (std::size_t i = 0; i < basis.size(); ++i) axpy(c(static_cast<Index>(i)), basis[i], v);
  return v;
}

Vector product_coordinates(const std::vector<TangentVector>& basis, const ProductTangent& v) {
  const Index d = static_cast<Index>(basis.size());
  Vector c(d + v.dy.size() + v.dz.size() + v.ds.size());
  c << tangent_coordinates(basis, v.dx), v.dy, v.dz, v.ds;
  return c;
}

ProductTangent product_from_coordinates(const std::vector<TangentVector>& basis, Index l,
                                        Index m, const Vector& c) {
  const Index d = static_cast<Index>(basis.size());
  require(c.size() == d + l + 2 * m, "product_from_coordinates: size mismatch");
  ProductTangent v;
  v.dx = tangent_from_coordinates(basis, c.head(d));
  v.dy = c.segment(d, l);
  v.dz = c.segment(d + l, m);
  v.ds = c.segment(d + l + m, m);
  return v;
}

DenseBlocks dense_blocks(const KktSystem& system, const std::vector<TangentVector>& basis,
                         Execution exec) {
  const Index d = static_cast<Index>(basis.size());
  const ConstraintOps ops = system.constraints();
  DenseBlocks out;
  out.Q = kernels::assemble_columns(exec, d, d, [&](Index j) {
    return tangent_coordinates(basis, system.hess_lagrangian(basis[static_cast<std::size_t>(j)]));
  });
  out.B = kernels::assemble_columns(exec, d, system.problem().l(), [&](Index i) {
    return tangent_coordinates(basis, ops.equality_gradient(i));
  });
  out.C = kernels::assemble_columns(exec, d, system.problem().m(), [&](Index i) {
    return tangent_coordinates(basis, ops.inequality_gradient(i));
  });
  return out;
}

Matrix dense_condensed_matrix(const DenseBlocks& blocks, const Iterate& w) {
  const Index d = blocks.Q.rows();
  const Index l = blocks.B.cols();
  const Vector theta = w.z.cwiseQuotient(w.s);
  Matrix t = Matrix::Zero(d + l, d + l);
  t.topLeftCorner(d, d) = blocks.Q + blocks.C * theta.asDiagonal() * blocks.C.transpose();
  t.topRightCorner(d, l) = blocks.B;
  t.bottomLeftCorner(l, d) = blocks.B.transpose();
  return t;
}

Matrix dense_nablaF_matrix(const DenseBlocks& blocks, const Iterate& w) {
  const Index d = blocks.Q.rows();
  const Index l = blocks.B.cols();
  const Index m = blocks.C.cols();
  Matrix a = Matrix::Zero(d + l + 2 * m, d + l + 2 * m);
  a.block(0, 0, d, d) = blocks.Q;
  a.block(0, d, d, l) = blocks.B;
  a.block(0, d + l, d, m) = blocks.C;
  a.block(d, 0, l, d) = blocks.B.transpose();
  a.block(d + l, 0, m, d) = blocks.C.transpose();
  a.block(d + l, d + l + m, m, m) = Matrix::Identity(m, m);
  a.block(d + l + m, d + l, m, m) = w.s.asDiagonal();
  a.block(d + l + m, d + l + m, m, m) = w.z.asDiagonal();
  return a;
}

Matrix dense_condensed_matrix(const KktSystem& system, const std::vector<TangentVector>& basis,
                              Execution exec) {
  require_interior(system.iterate(), "dense_condensed_matrix");
  return dense_condensed_matrix(dense_blocks(system, basis, exec), system.iterate());
}

Matrix dense_nablaF_matrix(const KktSystem& system, const std::vector<TangentVector>& basis,
                           Execution exec) {
  return dense_nablaF_matrix(dense_blocks(system, basis, exec), system.iterate());
}

Vector singular_values(const Matrix& a) {
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues();
}

DenseNewtonSolution dense_oracle(const KktSystem& system, double mu, Rng& rng, Execution exec) {
  const Iterate& w = system.iterate();
  require_interior(w, "dense_oracle");
  const Index l = system.problem().l();
  const Index m = system.problem().m();

  DenseNewtonSolution out;
  out.basis = orthonormal_basis(system.manifold(), w.x, rng);
  const Index d = static_cast<Index>(out.basis.size());

  const DenseBlocks blocks = dense_blocks(system, out.basis, exec);
  out.condensed_matrix = dense_condensed_matrix(blocks, w);
  const CondensedVector rhs = condensed_rhs(system, mu);
  out.condensed_rhs.resize(d + l);
  out.condensed_rhs << tangent_coordinates(out.basis, rhs.x), rhs.y;

  const Vector sv = singular_values(out.condensed_matrix);
  out.condition_estimate = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                  : std::numeric_limits<double>::infinity();
  if (!(out.condition_estimate < 1e14)) {
    std::ostringstream msg;
    msg << "dense_oracle: condensed matrix is singular (condition estimate "
        << out.condition_estimate << ")";
    throw NumericalFailure(msg.str());
  }

  const Vector sol = out.condensed_matrix.partialPivLu().solve(out.condensed_rhs);
  out.dw.dx = tangent_from_coordinates(out.basis, sol.head(d));
  out.dw.dy = sol.tail(l);
  DzDs zs = recover_dz_ds(system, mu, out.dw.dx);
  out.dw.dz = std::move(zs.dz);
  out.dw.ds = std::move(zs.ds);

  const Matrix full = dense_nablaF_matrix(blocks, w);
  Vector full_rhs = -product_coordinates(out.basis, system.field());
  full_rhs.tail(m).array() += mu;
  out.dw_full = product_from_coordinates(out.basis, l, m, full.partialPivLu().solve(full_rhs));
  return out;
}

}  // namespace ripm
