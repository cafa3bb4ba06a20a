#pragma once

// Embedded matrix manifolds: Euclidean matrix space, Stiefel, oblique and
// fixed-rank, all with the metric inherited from the ambient trace inner
// product.

#include <memory>
#include <string>
#include <vector>

#include "ripm/types.hpp"

namespace ripm {

enum class ManifoldKind { euclidean, stiefel, oblique, fixed_rank };

/// A point on a manifold in ambient coordinates. Fixed-rank points also
/// carry the thin SVD factors X = U diag(S) V^T; for the other manifolds the
/// factor fields stay empty.
struct Point {
  Matrix X;
  Matrix U;
  Vector S;
  Matrix V;
};

/// Tangent vector stored as one or three matrix blocks.
///
/// Ambient manifolds use a single block holding the ambient matrix. Fixed-rank
/// tangents use the structured triple (M, Up, Vp) whose ambient form is
/// U M V^T + Up V^T + U Vp^T with U^T Up = 0 and V^T Vp = 0. Because U and V
/// have orthonormal columns and the three terms are mutually orthogonal, the
/// embedded inner product of two structured tangents is the sum of the
/// blockwise Frobenius products, so linear algebra here never needs the base
/// point.
class TangentVector {
 public:
  TangentVector() = default;
  explicit TangentVector(Matrix ambient);
  TangentVector(Matrix M, Matrix Up, Matrix Vp);

  std::size_t block_count() const { return blocks_.size(); }
  bool structured() const { return blocks_.size() == 3; }
  const Matrix& block(std::size_t i) const { return blocks_[i]; }
  Matrix& block(std::size_t i) { return blocks_[i]; }

  /// Valid only for unstructured (single-block) tangents.
  const Matrix& ambient() const;

  TangentVector& operator+=(const TangentVector& other);
  TangentVector& operator-=(const TangentVector& other);
  TangentVector& operator*=(double a);

  void set_zero();
  double squared_norm() const;
  double norm() const;
  bool same_layout(const TangentVector& other) const;

 private:
  std::vector<Matrix> blocks_;
};

TangentVector operator+(TangentVector a, const TangentVector& b);
TangentVector operator-(TangentVector a, const TangentVector& b);
TangentVector operator*(double a, TangentVector v);
TangentVector operator-(TangentVector v);

double inner(const TangentVector& a, const TangentVector& b);
/// y += a * x
void axpy(double a, const TangentVector& x, TangentVector& y);

class Manifold {
 public:
  virtual ~Manifold() = default;

  virtual ManifoldKind kind() const = 0;
  virtual std::string name() const = 0;
  virtual Index ambient_rows() const = 0;
  virtual Index ambient_cols() const = 0;
  /// Intrinsic dimension d.
  virtual Index dim() const = 0;

  /// Embedded metric: trace(xi^T eta).
  double inner(const Point& x, const TangentVector& xi,
               const TangentVector& eta) const;
  double norm(const Point& x, const TangentVector& xi) const;

  /// Orthogonal projection of an ambient matrix onto T_x M.
  virtual TangentVector proj(const Point& x, const Matrix& u) const = 0;
  TangentVector proj(const Point& x, const TangentVector& xi) const;

  /// Ambient matrix of a tangent vector.
  virtual Matrix to_ambient(const Point& x, const TangentVector& xi) const;

  virtual Point retract(const Point& x, const TangentVector& xi) const = 0;

  TangentVector egrad2rgrad(const Point& x, const Matrix& egrad) const;

  /// Riemannian Hessian-vector product from ambient data: egrad is the
  /// Euclidean gradient at x, ehess_xi the Euclidean Hessian applied to the
  /// ambient form of xi.
  virtual TangentVector ehess2rhess(const Point& x, const Matrix& egrad,
                                    const Matrix& ehess_xi,
                                    const TangentVector& xi) const = 0;

  virtual Point rand_point(Rng& rng) const = 0;
  /// Unit-norm projection of a Gaussian ambient matrix.
  TangentVector rand_tangent(const Point& x, Rng& rng) const;
  virtual TangentVector zero_tangent(const Point& x) const;

  /// Nearest point on the manifold (polar factor, column normalisation,
  /// truncated SVD, or identity).
  virtual Point project_point(const Matrix& X) const = 0;

  /// Size of the defining-equation residual; zero on the manifold.
  virtual double feasibility_error(const Point& x) const = 0;

  /// Size of the normal component of xi; zero for tangent vectors.
  virtual double tangency_error(const Point& x, const TangentVector& xi) const;

  void check_point(const Point& x, const char* where) const;
  /// Shape check only.
  void check_tangent(const Point& x, const TangentVector& xi,
                     const char* where) const;
  /// Shape check plus tangency_error <= 1e-8 * max(1, |xi|).
  void require_tangent(const Point& x, const TangentVector& xi,
                       const char* where) const;
};

using ManifoldPtr = std::shared_ptr<const Manifold>;

ManifoldPtr make_euclidean(Index rows, Index cols);
ManifoldPtr make_stiefel(Index n, Index k);
ManifoldPtr make_oblique(Index n, Index k);
ManifoldPtr make_fixed_rank(Index m, Index n, Index r);

/// d tangent vectors at x, orthonormal under the embedded metric, obtained by
/// modified Gram-Schmidt with one re-orthogonalisation pass on random
/// tangents. Resamples on degeneracy; throws NumericalFailure after 5 tries.
std::vector<TangentVector> orthonormal_basis(const Manifold& manifold,
                                             const Point& x, Rng& rng);

/// Thin QR factor with the diagonal of R made nonnegative.
Matrix qr_orthonormal_factor(const Matrix& a);

}  // namespace ripm
