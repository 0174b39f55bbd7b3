#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sieig {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not match; the message names both dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument violates a documented precondition (non-finite value,
/// out-of-range parameter, empty input).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// Orthonormalization met a column that is numerically dependent on the
/// previous ones.
class RankDeficiencyError : public Error {
 public:
  RankDeficiencyError(std::size_t column, const std::string& message)
      : Error(message), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// The shifted matrix A - tau*I is singular to working precision.
class NearSingularShiftError : public Error {
 public:
  NearSingularShiftError(double tau, const std::string& message)
      : Error(message), tau_(tau) {}
  double tau() const { return tau_; }

 private:
  double tau_;
};

/// x^T A x is negative beyond rounding tolerance.
class IndefiniteError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure failed to converge within its budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(double residual, const std::string& message)
      : Error(message), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// A Richardson application drove a column's norm below representable range.
class AnnihilationError : public Error {
 public:
  using Error::Error;
};

/// The shift annihilates a desired spectral component, so the rate quotient
/// is undefined.
class DegenerateShiftError : public Error {
 public:
  using Error::Error;
};

/// Spectrum values violate the ordering the rate formulas require.
class InvalidSpectrumError : public Error {
 public:
  using Error::Error;
};

/// A rate was requested over a window whose starting component ratio is
/// already zero. Not a numerical failure; the iterate has fully converged.
class AlreadyConvergedError : public Error {
 public:
  using Error::Error;
};

/// File read/write failure; carries the offending path.
class IoError : public Error {
 public:
  IoError(std::string path, const std::string& message)
      : Error(message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace sieig
