#pragma once

// Dense basis representation of the Newton operators. Expensive (d operator
// applications plus Gram-Schmidt per point) and intended for testing and
// diagnostics; the solvers never call it.

#include <vector>

#include "ripm/linsolve.hpp"
#include "ripm/parallel.hpp"

namespace ripm {

/// Coordinates of a tangent vector in an orthonormal basis.
Vector tangent_coordinates(const std::vector<TangentVector>& basis, const TangentVector& v);
TangentVector tangent_from_coordinates(const std::vector<TangentVector>& basis,
                                       const Eigen::Ref<const Vector>& c);

/// Coordinates [dx; dy; dz; ds] of a product tangent.
Vector product_coordinates(const std::vector<TangentVector>& basis, const ProductTangent& v);
ProductTangent product_from_coordinates(const std::vector<TangentVector>& basis, Index l,
                                        Index m, const Vector& c);

/// Block data of nabla F(w) in an orthonormal basis {u_i} of T_x M:
/// Q_kj = <Hess_x L[u_j], u_k>, B = [grad h_i]^, C = [grad g_i]^.
struct DenseBlocks {
  Matrix Q;
  Matrix B;
  Matrix C;
};

DenseBlocks dense_blocks(const KktSystem& system, const std::vector<TangentVector>& basis,
                         Execution exec = Execution::parallel);

/// [[Q + C Z S^-1 C', B], [B', 0]]
Matrix dense_condensed_matrix(const DenseBlocks& blocks, const Iterate& w);

/// [[Q, B, C, 0], [B', 0, 0, 0], [C', 0, 0, I], [0, 0, S, Z]]
Matrix dense_nablaF_matrix(const DenseBlocks& blocks, const Iterate& w);

/// Matrix of the condensed operator on
/// T_x M x R^l, in the basis {u_i} followed by the standard basis of R^l.
Matrix dense_condensed_matrix(const KktSystem& system, const std::vector<TangentVector>& basis,
                              Execution exec = Execution::parallel);

/// Matrix of nabla F(w) on T_w N in the basis ({u_i}, e_y, e_z, e_s).
Matrix dense_nablaF_matrix(const KktSystem& system, const std::vector<TangentVector>& basis,
                           Execution exec = Execution::parallel);

struct DenseNewtonSolution {
  std::vector<TangentVector> basis;
  Matrix condensed_matrix;
  Vector condensed_rhs;
  /// Direction from the dense condensed solve plus dz/ds recovery.
  ProductTangent dw;
  /// Direction from a dense solve of the full, unsymmetric Newton system.
  ProductTangent dw_full;
  double condition_estimate = 0.0;
};

/// Dense counterpart of solve_newton. Throws NumericalFailure when the
/// condensed matrix is numerically singular; the message carries the
/// condition estimate.
DenseNewtonSolution dense_oracle(const KktSystem& system, double mu, Rng& rng,
                                 Execution exec = Execution::parallel);

/// Singular values of a square matrix, descending.
Vector singular_values(const Matrix& a);

}  // namespace ripm
