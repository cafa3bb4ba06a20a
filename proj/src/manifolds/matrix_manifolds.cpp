// Euclidean, Stiefel and oblique manifolds. All three store tangents as a
// single ambient block.

#include <cmath>

#include "ripm/manifold.hpp"

namespace ripm {
namespace {

Matrix sym(const Matrix& a) { return 0.5 * (a + a.transpose()); }

class EuclideanManifold final : public Manifold {
 public:
  EuclideanManifold(Index rows, Index cols) : rows_(rows), cols_(cols) {
    require(rows > 0 && cols > 0, "euclidean: dimensions must be positive");
  }

  ManifoldKind kind() const override { return ManifoldKind::euclidean; }
  std::string name() const override {
    return "euclidean(" + std::to_string(rows_) + "," + std::to_string(cols_) + ")";
  }
  Index ambient_rows() const override { return rows_; }
  Index ambient_cols() const override { return cols_; }
  Index dim() const override { return rows_ * cols_; }

  TangentVector proj(const Point& x, const Matrix& u) const override {
    check_point(x, "euclidean::proj");
    require_shape(u, rows_, cols_, "euclidean::proj");
    return TangentVector(u);
  }

  Point retract(const Point& x, const TangentVector& xi) const override {
    check_tangent(x, xi, "euclidean::retract");
    if (xi.squared_norm() == 0.0) return x;
    return Point{x.X + xi.ambient(), {}, {}, {}};
  }

  TangentVector ehess2rhess(const Point& x, const Matrix&, const Matrix& ehess_xi,
                            const TangentVector& xi) const override {
    require_tangent(x, xi, "euclidean::ehess2rhess");
    require_shape(ehess_xi, rows_, cols_, "euclidean::ehess2rhess");
    return TangentVector(ehess_xi);
  }

  Point rand_point(Rng& rng) const override { return Point{randn(rows_, cols_, rng), {}, {}, {}}; }
  Point project_point(const Matrix& X) const override {
    require_shape(X, rows_, cols_, "euclidean::project_point");
    return Point{X, {}, {}, {}};
  }
  double feasibility_error(const Point&) const override { return 0.0; }
  double tangency_error(const Point&, const TangentVector&) const override { return 0.0; }

 private:
  Index rows_, cols_;
};

class StiefelManifold final : public Manifold {
 public:
  StiefelManifold(Index n, Index k) : n_(n), k_(k) {
    require(n > 0 && k > 0 && k <= n, "stiefel: need 0 < k <= n");
  }

  ManifoldKind kind() const override { return ManifoldKind::stiefel; }
  std::string name() const override {
    return "stiefel(" + std::to_string(n_) + "," + std::to_string(k_) + ")";
  }
  Index ambient_rows() const override { return n_; }
  Index ambient_cols() const override { return k_; }
  Index dim() const override { return n_ * k_ - k_ * (k_ + 1) / 2; }

  TangentVector proj(const Point& x, const Matrix& u) const override {
    check_point(x, "stiefel::proj");
    require_shape(u, n_, k_, "stiefel::proj");
    return TangentVector(u - x.X * sym(x.X.transpose() * u));
  }

  // Q factor of the thin QR decomposition, R with positive diagonal.
  Point retract(const Point& x, const TangentVector& xi) const override {
    check_tangent(x, xi, "stiefel::retract");
    if (xi.squared_norm() == 0.0) return x;
    return Point{qr_orthonormal_factor(x.X + xi.ambient()), {}, {}, {}};
  }

  TangentVector ehess2rhess(const Point& x, const Matrix& egrad, const Matrix& ehess_xi,
                            const TangentVector& xi) const override {
    require_tangent(x, xi, "stiefel::ehess2rhess");
    require_shape(egrad, n_, k_, "stiefel::ehess2rhess");
    require_shape(ehess_xi, n_, k_, "stiefel::ehess2rhess");
    return proj(x, Matrix(ehess_xi - xi.ambient() * sym(x.X.transpose() * egrad)));
  }

  Point rand_point(Rng& rng) const override {
    return Point{qr_orthonormal_factor(randn(n_, k_, rng)), {}, {}, {}};
  }

  // Polar factor.
  Point project_point(const Matrix& X) const override {
    require_shape(X, n_, k_, "stiefel::project_point");
    Eigen::JacobiSVD<Matrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return Point{svd.matrixU() * svd.matrixV().transpose(), {}, {}, {}};
  }

  double feasibility_error(const Point& x) const override {
    return (x.X.transpose() * x.X - Matrix::Identity(k_, k_)).norm();
  }

  double tangency_error(const Point& x, const TangentVector& xi) const override {
    return sym(x.X.transpose() * xi.ambient()).norm();
  }

 private:
  Index n_, k_;
};

class ObliqueManifold final : public Manifold {
 public:
  ObliqueManifold(Index n, Index k) : n_(n), k_(k) {
    require(n > 0 && k > 0, "oblique: dimensions must be positive");
  }

  ManifoldKind kind() const override { return ManifoldKind::oblique; }
  std::string name() const override {
    return "oblique(" + std::to_string(n_) + "," + std::to_string(k_) + ")";
  }
  Index ambient_rows() const override { return n_; }
  Index ambient_cols() const override { return k_; }
  Index dim() const override { return k_ * (n_ - 1); }

  TangentVector proj(const Point& x, const Matrix& u) const override {
    check_point(x, "oblique::proj");
    require_shape(u, n_, k_, "oblique::proj");
    const Eigen::RowVectorXd inners = x.X.cwiseProduct(u).colwise().sum();
    return TangentVector(u - x.X * inners.asDiagonal());
  }

  Point retract(const Point& x, const TangentVector& xi) const override {
    check_tangent(x, xi, "oblique::retract");
    if (xi.squared_norm() == 0.0) return x;
    return Point{normalize_columns(x.X + xi.ambient()), {}, {}, {}};
  }

  TangentVector ehess2rhess(const Point& x, const Matrix& egrad, const Matrix& ehess_xi,
                            const TangentVector& xi) const override {
    require_tangent(x, xi, "oblique::ehess2rhess");
    require_shape(egrad, n_, k_, "oblique::ehess2rhess");
    require_shape(ehess_xi, n_, k_, "oblique::ehess2rhess");
    const Eigen::RowVectorXd inners = x.X.cwiseProduct(egrad).colwise().sum();
    TangentVector out = proj(x, ehess_xi);
    out.block(0) -= xi.ambient() * inners.asDiagonal();
    return out;
  }

  Point rand_point(Rng& rng) const override {
    return Point{normalize_columns(randn(n_, k_, rng)), {}, {}, {}};
  }

  Point project_point(const Matrix& X) const override {
    require_shape(X, n_, k_, "oblique::project_point");
    return Point{normalize_columns(X), {}, {}, {}};
  }

  double feasibility_error(const Point& x) const override {
    return (x.X.colwise().squaredNorm().array() - 1.0).abs().maxCoeff();
  }

  double tangency_error(const Point& x, const TangentVector& xi) const override {
    return x.X.cwiseProduct(xi.ambient()).colwise().sum().norm();
  }

 private:
  static Matrix normalize_columns(Matrix a) {
    for (Index j = 0; j < a.cols(); ++j) {
      const double n = a.col(j).norm();
      if (n == 0.0) throw NumericalFailure("oblique: zero column cannot be normalised");
      a.col(j) /= n;
    }
    return a;
  }

  Index n_, k_;
};

}  // namespace

ManifoldPtr make_euclidean(Index rows, Index cols) {
  return std::make_shared<EuclideanManifold>(rows, cols);
}
ManifoldPtr make_stiefel(Index n, Index k) { return std::make_shared<StiefelManifold>(n, k); }
ManifoldPtr make_oblique(Index n, Index k) { return std::make_shared<ObliqueManifold>(n, k); }

}  // namespace ripm
