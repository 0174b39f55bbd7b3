#pragma once

#include <cstddef>
#include <vector>

#include "sieig/errors.hpp"

namespace sieig {

/// Dense real vector. Constructors reject NaN/Inf entries; instances are
/// immutable after construction.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::vector<double> values);
  static Vec zeros(std::size_t n);
  static Vec unit(std::size_t n, std::size_t j);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);

/// Dense symmetric matrix in full row-major storage. Symmetry is enforced
/// bitwise at construction; entries must be finite; n >= 1. Immutable.
class DenseSymMatrix {
 public:
  DenseSymMatrix(std::size_t n, std::vector<double> entries);
  static DenseSymMatrix identity(std::size_t n);
  static DenseSymMatrix diagonal(const std::vector<double>& d);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  const std::vector<double>& entries() const { return entries_; }
  double frobenius_norm() const { return fro_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
  double fro_ = 0.0;
};

/// Eigenvalues ascending; eigenvectors[j] is the unit eigenvector paired
/// with eigenvalues[j], pairwise orthonormal.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  std::vector<Vec> eigenvectors;
};

/// y = A x.
Vec matvec(const DenseSymMatrix& A, const Vec& x);

/// sqrt(x^T A x) for positive semi-definite A. Values of x^T A x below
/// -1e-12*|x|^2 raise IndefiniteError; smaller negative values clamp to 0.
double a_norm(const DenseSymMatrix& A, const Vec& x);

/// Modified Gram-Schmidt with one re-orthogonalization pass. Returns an
/// orthonormal set spanning the input. A column whose post-projection norm
/// falls below 1e-12 of its original norm raises RankDeficiencyError.
std::vector<Vec> gram_schmidt(const std::vector<Vec>& columns);

/// Solves (A - tau*I) x = b by LU with partial pivoting. A pivot below
/// 1e-14 * |A|_F raises NearSingularShiftError: expected whenever tau sits
/// on an eigenvalue.
Vec shifted_lu_solve(const DenseSymMatrix& A, double tau, const Vec& b);

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops to
/// 1e-14 * |A|_F, capped at 100 sweeps. Eigenvalues sorted ascending, ties
/// keeping diagonal order; each eigenvector's largest-magnitude component
/// is made non-negative so results are deterministic.
EigenDecomposition jacobi_eigensolve(const DenseSymMatrix& A);

}  // namespace sieig
