#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace ripm {

using Scalar = double;
using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Random source used throughout; every stochastic routine takes one by
/// reference so that runs are reproducible from a single seed.
using Rng = std::mt19937_64;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke a precondition (shape mismatch, wrong dimension, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A multiplier or slack left the open positive orthant.
class InteriorViolation : public Error {
 public:
  using Error::Error;
};

/// Fixed-rank retraction hit a singular-value tie at the truncation rank.
class RankDropError : public Error {
 public:
  using Error::Error;
};

/// A dense solve or basis construction degenerated.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

inline void require_shape(const Matrix& a, Index rows, Index cols,
                          const char* where) {
  if (a.rows() != rows || a.cols() != cols) {
    throw ContractViolation(std::string(where) + ": expected " +
                            std::to_string(rows) + "x" + std::to_string(cols) +
                            ", got " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()));
  }
}

/// Deterministic 64-bit mixer used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Matrix of i.i.d. standard normal entries.
Matrix randn(Index rows, Index cols, Rng& rng);

/// Matrix of i.i.d. uniform entries on [lo, hi).
Matrix randu(Index rows, Index cols, Rng& rng, double lo = 0.0, double hi = 1.0);

}  // namespace ripm
