#include <cmath>

#include "ripm/manifold.hpp"

namespace ripm {

Matrix randn(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) a(i, j) = normal(rng);
  return a;
}

Matrix randu(Index rows, Index cols, Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> uniform(lo, hi);
  Matrix a(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) a(i, j) = uniform(rng);
  return a;
}

TangentVector::TangentVector(Matrix ambient) { blocks_.push_back(std::move(ambient)); }

TangentVector::TangentVector(Matrix M, Matrix Up, Matrix Vp) {
  blocks_.reserve(3);
  blocks_.push_back(std::move(M));
  blocks_.push_back(std::move(Up));
  blocks_.push_back(std::move(Vp));
}

const Matrix& TangentVector::ambient() const {
  require(blocks_.size() == 1, "TangentVector::ambient: structured tangent");
  return blocks_[0];
}

bool TangentVector::same_layout(const TangentVector& other) const {
  if (blocks_.size() != other.blocks_.size()) return false;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].rows() != other.blocks_[i].rows() ||
        blocks_[i].cols() != other.blocks_[i].cols())
      return false;
  }
  return true;
}

TangentVector& TangentVector::operator+=(const TangentVector& other) {
  require(same_layout(other), "TangentVector: layout mismatch in +=");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += other.blocks_[i];
  return *this;
}

TangentVector& TangentVector::operator-=(const TangentVector& other) {
  require(same_layout(other), "TangentVector: layout mismatch in -=");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= other.blocks_[i];
  return *this;
}

TangentVector& TangentVector::operator*=(double a) {
  for (auto& b : blocks_) b *= a;
  return *this;
}

void TangentVector::set_zero() {
  for (auto& b : blocks_) b.setZero();
}

double TangentVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& b : blocks_) sum += b.squaredNorm();
  return sum;
}

double TangentVector::norm() const { return std::sqrt(squared_norm()); }

TangentVector operator+(TangentVector a, const TangentVector& b) { return a += b; }
TangentVector operator-(TangentVector a, const TangentVector& b) { return a -= b; }
TangentVector operator*(double a, TangentVector v) { return v *= a; }
TangentVector operator-(TangentVector v) { return v *= -1.0; }

double inner(const TangentVector& a, const TangentVector& b) {
  require(a.same_layout(b), "inner: tangent layout mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.block_count(); ++i)
    sum += a.block(i).cwiseProduct(b.block(i)).sum();
  return sum;
}

void axpy(double a, const TangentVector& x, TangentVector& y) {
  require(x.same_layout(y), "axpy: tangent layout mismatch");
  for (std::size_t i = 0; i < x.block_count(); ++i) y.block(i) += a * x.block(i);
}

}  // namespace ripm
