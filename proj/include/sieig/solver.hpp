#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sieig/linalg.hpp"
#include "sieig/rate_analysis.hpp"

namespace sieig {

enum class InnerSolver { kDirect, kRichardson };

/// How the shift tau_k is chosen each outer step.
struct ShiftStrategy {
  enum class Kind { kRayleigh, kFixed, kOptimalRate };
  Kind kind = Kind::kRayleigh;
  double fixed_tau = 0.0;
  double lambda_ell_plus_1 = 0.0;  // OptimalRate only
  double lambda_n = 0.0;           // OptimalRate only

  static ShiftStrategy rayleigh() { return {}; }
  static ShiftStrategy fixed(double tau) {
    ShiftStrategy s;
    s.kind = Kind::kFixed;
    s.fixed_tau = tau;
    return s;
  }
  static ShiftStrategy optimal_rate(double lambda_ell_plus_1, double lambda_n);
  std::string describe() const;
};

struct SolverConfig {
  std::size_t ell = 1;
  InnerSolver inner = InnerSolver::kDirect;
  double theta = 0.5;   // Richardson relaxation, required in (0,1)
  int inner_steps = 1;  // Richardson applications per outer iteration
  ShiftStrategy shift = ShiftStrategy::rayleigh();
  int max_outer = 100;
  double tol = 1e-10;  // stop when max_i |A x_i - lambda_i x_i| <= tol
  std::uint64_t seed = 0;

  void validate(std::size_t n) const;  // throws InvalidInputError
};

/// The ell approximate eigenpairs carried across outer iterations. Columns
/// are unit-norm and mutually orthogonal; ritz_values ascending. tau is the
/// shift that produced this block (NaN for an initial block).
struct IterateBlock {
  std::vector<Vec> columns;
  std::vector<double> ritz_values;
  int outer_index = 0;
  double tau = std::numeric_limits<double>::quiet_NaN();
};

struct SolveReport {
  IterateBlock final_block;
  int outer_iterations_used = 0;
  bool converged = false;
  std::vector<std::vector<double>> residual_history;  // [iteration][column]
  std::vector<std::vector<double>> ritz_history;      // [iteration][column]
  std::vector<double> tau_history;                    // [iteration]
  std::optional<ComponentTrace> trace;  // present when truth was supplied
};

/// Seeded orthonormal start block: components uniform in (-1,1) from a
/// minstd_rand0 stream (fully specified by the standard, so runs reproduce
/// bit-for-bit everywhere), filled column by column, then orthonormalized.
/// Ritz values are zeros; the overload taking A fills them with the
/// Rayleigh quotients instead.
IterateBlock init_random_block(std::size_t n, std::size_t ell,
                               std::uint64_t seed);
IterateBlock init_random_block(const DenseSymMatrix& A, std::size_t ell,
                               std::uint64_t seed);

/// One shifted solve per column: (A - tau I) x~_i = x_i. Columns come back
/// unnormalized; Rayleigh-Ritz assembly handles scaling.
std::vector<Vec> inner_solve_direct(const DenseSymMatrix& A, double tau,
                                    const IterateBlock& block);

/// steps Richardson applications x <- x - theta*((A - tau I)x - x) per
/// column, renormalizing to unit length after every application.
std::vector<Vec> inner_solve_richardson(const DenseSymMatrix& A, double tau,
                                        double theta, int steps,
                                        const IterateBlock& block);

/// Orthonormalizes the columns, projects A onto their span, solves the small
/// eigenproblem, and returns the Ritz pairs as a fresh block (values
/// ascending, columns unit-norm with the largest-magnitude component made
/// non-negative).
IterateBlock rayleigh_ritz(const DenseSymMatrix& A,
                           const std::vector<Vec>& columns);

/// One full outer step: resolve the shift, run the configured inner solve,
/// project. A near-singular direct solve under the Rayleigh strategy is
/// retried once with the shift perturbed by 1e-8*|A|_F; other strategies
/// propagate the error. The returned block records the shift used.
IterateBlock outer_iterate(const DenseSymMatrix& A, const SolverConfig& config,
                           const IterateBlock& block);

/// |A x_i - lambda_i x_i| per column.
std::vector<double> block_residuals(const DenseSymMatrix& A,
                                    const IterateBlock& block);

/// Runs outer_iterate until the residual tolerance or max_outer is reached.
/// Non-convergence is reported, not thrown. When truth is given, eigenbasis
/// expansions are recorded per outer iteration (entry 0 = initial block).
/// When initial is null the block comes from init_random_block with the
/// configured seed.
SolveReport solve(const DenseSymMatrix& A, const SolverConfig& config,
                  const EigenDecomposition* truth = nullptr,
                  const IterateBlock* initial = nullptr);

}  // namespace sieig
