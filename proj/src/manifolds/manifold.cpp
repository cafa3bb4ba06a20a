#include <algorithm>
#include <cmath>
#include <sstream>

#include "ripm/manifold.hpp"

namespace ripm {

double Manifold::inner(const Point& x, const TangentVector& xi,
                       const TangentVector& eta) const {
  check_tangent(x, xi, "Manifold::inner");
  check_tangent(x, eta, "Manifold::inner");
  return ripm::inner(xi, eta);
}

double Manifold::norm(const Point& x, const TangentVector& xi) const {
  return std::sqrt(inner(x, xi, xi));
}

TangentVector Manifold::proj(const Point& x, const TangentVector& xi) const {
  return proj(x, to_ambient(x, xi));
}

Matrix Manifold::to_ambient(const Point&, const TangentVector& xi) const {
  return xi.ambient();
}

TangentVector Manifold::egrad2rgrad(const Point& x, const Matrix& egrad) const {
  return proj(x, egrad);
}

TangentVector Manifold::rand_tangent(const Point& x, Rng& rng) const {
  for (;;) {
    TangentVector xi = proj(x, randn(ambient_rows(), ambient_cols(), rng));
    const double n = xi.norm();
    if (n > 1e-12) return (1.0 / n) * std::move(xi);
  }
}

TangentVector Manifold::zero_tangent(const Point&) const {
  return TangentVector(Matrix::Zero(ambient_rows(), ambient_cols()));
}

void Manifold::check_point(const Point& x, const char* where) const {
  require_shape(x.X, ambient_rows(), ambient_cols(), where);
}

void Manifold::check_tangent(const Point& x, const TangentVector& xi,
                             const char* where) const {
  const TangentVector zero = zero_tangent(x);
  if (!xi.same_layout(zero))
    throw ContractViolation(std::string(where) + ": tangent has wrong shape for " + name());
}

double Manifold::tangency_error(const Point& x, const TangentVector& xi) const {
  const Matrix a = to_ambient(x, xi);
  return (a - to_ambient(x, proj(x, a))).norm();
}

void Manifold::require_tangent(const Point& x, const TangentVector& xi,
                               const char* where) const {
  check_tangent(x, xi, where);
  const double err = tangency_error(x, xi);
  if (err > 1e-8 * std::max(1.0, xi.norm()))
  {
    std::ostringstream msg;
    msg << where << ": vector is not tangent (normal part " << err << ", norm " << xi.norm()
        << ")";
    throw ContractViolation(msg.str());
  }
}

Matrix qr_orthonormal_factor(const Matrix& a) {
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
  const auto& r = qr.matrixQR();
  for (Index j = 0; j < a.cols(); ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

std::vector<TangentVector> orthonormal_basis(const Manifold& manifold,
                                             const Point& x, Rng& rng) {
  const Index d = manifold.dim();
  constexpr int kMaxAttempts = 5;
  constexpr double kDependencyThreshold = 1e-12;

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<TangentVector> basis;
    basis.reserve(static_cast<std::size_t>(d));
    bool degenerate = false;
    for (Index i = 0; i < d && !degenerate; ++i) {
      TangentVector v = manifold.rand_tangent(x, rng);
      // Modified Gram-Schmidt, two sweeps.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& u : basis) axpy(-inner(u, v), u, v);
      }
      const double n = v.norm();
      if (n < kDependencyThreshold) {
        degenerate = true;
        break;
      }
      v *= 1.0 / n;
      basis.push_back(std::move(v));
    }
    if (!degenerate) return basis;
  }
  throw NumericalFailure("orthonormal_basis: Gram-Schmidt degenerated after 5 attempts on " +
                         manifold.name());
}

}  // namespace ripm
