// Manifold of m x n matrices of rank r, embedded in R^{m x n}.
//
// Points are kept in thin-SVD form X = U diag(S) V^T, tangents as the triple
// (M, Up, Vp) with ambient form U M V^T + Up V^T + U Vp^T.

#include <algorithm>
#include <cmath>
#include <limits>

#include "ripm/manifold.hpp"

namespace ripm {
namespace {

class FixedRankManifold final : public Manifold {
 public:
  FixedRankManifold(Index m, Index n, Index r) : m_(m), n_(n), r_(r) {
    require(m > 0 && n > 0 && r > 0 && r < std::min(m, n),
            "fixed_rank: need 0 < r < min(m, n)");
  }

  ManifoldKind kind() const override { return ManifoldKind::fixed_rank; }
  std::string name() const override {
    return "fixed_rank(" + std::to_string(m_) + "," + std::to_string(n_) + "," +
           std::to_string(r_) + ")";
  }
  Index ambient_rows() const override { return m_; }
  Index ambient_cols() const override { return n_; }
  Index dim() const override { return (m_ + n_ - r_) * r_; }

  TangentVector proj(const Point& x, const Matrix& z) const override {
    check_point(x, "fixed_rank::proj");
    require_shape(z, m_, n_, "fixed_rank::proj");
    const Matrix zv = z * x.V;
    Matrix M = x.U.transpose() * zv;
    Matrix up = zv - x.U * M;
    Matrix vp = z.transpose() * x.U - x.V * M.transpose();
    return TangentVector(std::move(M), std::move(up), std::move(vp));
  }

  Matrix to_ambient(const Point& x, const TangentVector& xi) const override {
    check_tangent(x, xi, "fixed_rank::to_ambient");
    return (x.U * xi.block(0) + xi.block(1)) * x.V.transpose() +
           x.U * xi.block(2).transpose();
  }

  TangentVector zero_tangent(const Point&) const override {
    return TangentVector(Matrix::Zero(r_, r_), Matrix::Zero(m_, r_), Matrix::Zero(n_, r_));
  }

  // Metric projection: best rank-r approximation of X + xi. X + xi lies in
  // the column space of [U Qu] and row space of [V Qv], so only a small
  // (at most 2r x 2r) SVD is needed.
  Point retract(const Point& x, const TangentVector& xi) const override {
    check_tangent(x, xi, "fixed_rank::retract");
    if (xi.squared_norm() == 0.0) return x;
    const Matrix Qu = complement_basis(x.U, xi.block(1));
    const Matrix Qv = complement_basis(x.V, xi.block(2));
    const Index ku = Qu.cols();
    const Index kv = Qv.cols();

    Matrix core = Matrix::Zero(r_ + ku, r_ + kv);
    core.topLeftCorner(r_, r_) = Matrix(x.S.asDiagonal()) + xi.block(0);
    core.topRightCorner(r_, kv) = xi.block(2).transpose() * Qv;
    core.bottomLeftCorner(ku, r_) = Qu.transpose() * xi.block(1);

    Eigen::JacobiSVD<Matrix> svd(core, Eigen::ComputeFullU | Eigen::ComputeFullV);
    check_gap(svd.singularValues());

    Matrix left(m_, r_ + ku), right(n_, r_ + kv);
    left << x.U, Qu;
    right << x.V, Qv;
    Point y;
    y.U = left * svd.matrixU().leftCols(r_);
    y.V = right * svd.matrixV().leftCols(r_);
    y.S = svd.singularValues().head(r_);
    y.X = y.U * y.S.asDiagonal() * y.V.transpose();
    return y;
  }

  TangentVector ehess2rhess(const Point& x, const Matrix& egrad, const Matrix& ehess_xi,
                            const TangentVector& xi) const override {
    require_tangent(x, xi, "fixed_rank::ehess2rhess");
    require_shape(egrad, m_, n_, "fixed_rank::ehess2rhess");
    require_shape(ehess_xi, m_, n_, "fixed_rank::ehess2rhess");
    TangentVector out = proj(x, ehess_xi);
    const Vector s_inv = x.S.cwiseInverse();
    // Curvature terms from the normal part of egrad.
    const Matrix tu = egrad * xi.block(2) * s_inv.asDiagonal();
    out.block(1) += tu - x.U * (x.U.transpose() * tu);
    const Matrix tv = egrad.transpose() * xi.block(1) * s_inv.asDiagonal();
    out.block(2) += tv - x.V * (x.V.transpose() * tv);
    return out;
  }

  Point rand_point(Rng& rng) const override { return project_point(randn(m_, n_, rng)); }

  Point project_point(const Matrix& X) const override {
    require_shape(X, m_, n_, "fixed_rank::project_point");
    Eigen::JacobiSVD<Matrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    check_gap(svd.singularValues());
    Point y;
    y.U = svd.matrixU().leftCols(r_);
    y.V = svd.matrixV().leftCols(r_);
    y.S = svd.singularValues().head(r_);
    y.X = y.U * y.S.asDiagonal() * y.V.transpose();
    return y;
  }

  double feasibility_error(const Point& x) const override {
    if (x.U.rows() != m_ || x.U.cols() != r_ || x.V.rows() != n_ || x.V.cols() != r_ ||
        x.S.size() != r_)
      return std::numeric_limits<double>::infinity();
    if (x.S.minCoeff() <= 0.0) return std::numeric_limits<double>::infinity();
    const Matrix I = Matrix::Identity(r_, r_);
    return std::max({(x.U.transpose() * x.U - I).norm(), (x.V.transpose() * x.V - I).norm(),
                     (x.X - x.U * x.S.asDiagonal() * x.V.transpose()).norm()});
  }

  double tangency_error(const Point& x, const TangentVector& xi) const override {
    return std::hypot((x.U.transpose() * xi.block(1)).norm(),
                      (x.V.transpose() * xi.block(2)).norm());
  }

 private:
  // Orthonormal columns completing the orthonormal B to a basis of
  // range([B A]), taken from a QR of [B A]; orthogonal to B also for rank
  // deficient A.
  static Matrix complement_basis(const Matrix& B, const Matrix& A) {
    const Index k = std::min(A.cols(), B.rows() - B.cols());
    Matrix BA(B.rows(), B.cols() + A.cols());
    BA << B, A;
    Eigen::HouseholderQR<Matrix> qr(BA);
    const Matrix Q = qr.householderQ() * Matrix::Identity(B.rows(), B.cols() + k);
    return Q.rightCols(k);
  }

  // Singular values are sorted descending; a tie at the truncation index
  // makes the rank-r projection ill-defined, and sigma_r = 0 leaves the
  // manifold.
  void check_gap(const Vector& sv) const {
    const double sr = sv(r_ - 1);
    const double next = sv.size() > r_ ? sv(r_) : 0.0;
    if (sr <= 0.0 || sr - next <= 1e-12 * std::max(1.0, sv(0))) {
      throw RankDropError("fixed_rank: singular values " + std::to_string(sr) + " and " +
                          std::to_string(next) + " tie at rank " + std::to_string(r_));
    }
  }

  Index m_, n_, r_;
};

}  // namespace

ManifoldPtr make_fixed_rank(Index m, Index n, Index r) {
  return std::make_shared<FixedRankManifold>(m, n, r);
}

}  // namespace ripm
