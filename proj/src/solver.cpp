#include "sieig/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "sieig/errors.hpp"

namespace sieig {

namespace {

// Uniform (-1,1) stream. minstd_rand0 is pinned because the standard defines
// its output exactly; the mapping stays away from the endpoints.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed)
      : engine_(static_cast<std::uint32_t>(seed)) {}
  double next() {
    return 2.0 * (static_cast<double>(engine_()) / 2147483647.0) - 1.0;
  }

 private:
  std::minstd_rand0 engine_;
};

void require_block_size(std::size_t n, std::size_t ell) {
  // ell == n is allowed only in the degenerate n == 1 case, where the
  // projection spans the whole space and the problem is trivially solved.
  const bool ok = ell >= 1 && (ell < n || (n == 1 && ell == 1));
  if (!ok) {
    std::ostringstream os;
    os << "block size ell = " << ell << " must satisfy 1 <= ell < n = " << n;
    throw InvalidInputError(os.str());
  }
}

double resolve_shift(const SolverConfig& config, const IterateBlock& block) {
  switch (config.shift.kind) {
    case ShiftStrategy::Kind::kRayleigh:
      if (block.ritz_values.empty())
        throw InvalidInputError(
            "Rayleigh shift needs ritz_values populated on the block");
      return block.ritz_values.front();
    case ShiftStrategy::Kind::kFixed:
      return config.shift.fixed_tau;
    case ShiftStrategy::Kind::kOptimalRate:
      return optimal_shift(
          SpectrumSummary{config.shift.lambda_ell_plus_1,
                          config.shift.lambda_ell_plus_1,
                          config.shift.lambda_n},
          config.theta);
  }
  throw InvalidInputError("unknown shift strategy");
}

}  // namespace

ShiftStrategy ShiftStrategy::optimal_rate(double lambda_ell_plus_1,
                                          double lambda_n) {
  if (!(lambda_ell_plus_1 <= lambda_n)) {
    std::ostringstream os;
    os << "optimal-rate shift needs lambda_ell_plus_1 <= lambda_n, got "
       << lambda_ell_plus_1 << " > " << lambda_n;
    throw InvalidInputError(os.str());
  }
  ShiftStrategy s;
  s.kind = Kind::kOptimalRate;
  s.lambda_ell_plus_1 = lambda_ell_plus_1;
  s.lambda_n = lambda_n;
  return s;
}

std::string ShiftStrategy::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kRayleigh:
      os << "rayleigh";
      break;
    case Kind::kFixed:
      os << "fixed:" << fixed_tau;
      break;
    case Kind::kOptimalRate:
      os << "optimal:" << lambda_ell_plus_1 << "," << lambda_n;
      break;
  }
  return os.str();
}

void SolverConfig::validate(std::size_t n) const {
  require_block_size(n, ell);
  if (inner == InnerSolver::kRichardson && !(theta > 0.0 && theta < 1.0)) {
    std::ostringstream os;
    os << "theta = " << theta << " outside required range (0,1)";
    throw InvalidInputError(os.str());
  }
  if (inner_steps < 1)
    throw InvalidInputError("inner_steps must be >= 1");
  if (!(tol > 0.0)) throw InvalidInputError("tol must be positive");
  if (max_outer < 1) throw InvalidInputError("max_outer must be >= 1");
}

IterateBlock init_random_block(std::size_t n, std::size_t ell,
                               std::uint64_t seed) {
  require_block_size(n, ell);
  // Rank deficiency of a random block is astronomically unlikely, but the
  // retry ladder keeps the operation total.
  for (std::uint64_t attempt = 0; attempt <= 5; ++attempt) {
    UniformStream stream(seed + attempt);
    std::vector<Vec> raw;
    raw.reserve(ell);
    for (std::size_t c = 0; c < ell; ++c) {
      std::vector<double> col(n);
      for (std::size_t r = 0; r < n; ++r) col[r] = stream.next();
      raw.emplace_back(std::move(col));
    }
    try {
      IterateBlock block;
      block.columns = gram_schmidt(raw);
      block.ritz_values.assign(ell, 0.0);
      return block;
    } catch (const RankDeficiencyError&) {
      if (attempt == 5) throw;
    }
  }
  throw RankDeficiencyError(0, "init_random_block: retries exhausted");
}

IterateBlock init_random_block(const DenseSymMatrix& A, std::size_t ell,
                               std::uint64_t seed) {
  IterateBlock block = init_random_block(A.size(), ell, seed);
  std::vector<std::size_t> order(ell);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> quotients(ell);
  for (std::size_t i = 0; i < ell; ++i)
    quotients[i] = dot(block.columns[i], matvec(A, block.columns[i]));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return quotients[a] < quotients[b];
  });
  std::vector<Vec> cols;
  cols.reserve(ell);
  for (std::size_t i = 0; i < ell; ++i) {
    cols.push_back(std::move(block.columns[order[i]]));
    block.ritz_values[i] = quotients[order[i]];
  }
  block.columns = std::move(cols);
  return block;
}

std::vector<Vec> inner_solve_direct(const DenseSymMatrix& A, double tau,
                                    const IterateBlock& block) {
  std::vector<Vec> out;
  out.reserve(block.columns.size());
  for (const Vec& x : block.columns)
    out.push_back(shifted_lu_solve(A, tau, x));
  return out;
}

std::vector<Vec> inner_solve_richardson(const DenseSymMatrix& A, double tau,
                                        double theta, int steps,
                                        const IterateBlock& block) {
  if (!(theta > 0.0 && theta < 1.0)) {
    std::ostringstream os;
    os << "theta = " << theta << " outside required range (0,1)";
    throw InvalidInputError(os.str());
  }
  if (steps < 1) throw InvalidInputError("Richardson needs steps >= 1");
  const std::size_t n = A.size();
  std::vector<Vec> out;
  out.reserve(block.columns.size());
  for (const Vec& x0 : block.columns) {
    if (x0.size() != n) {
      std::ostringstream os;
      os << "inner_solve_richardson: column dimension " << x0.size()
         << " does not match matrix dimension " << n;
      throw DimensionError(os.str());
    }
    std::vector<double> x = x0.values();
    for (int s = 0; s < steps; ++s) {
      // x <- x - theta*((A - tau I)x - x), then back to the unit sphere.
      const Vec ax = matvec(A, Vec(x));
      double nrm2 = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        x[r] = x[r] - theta * (ax[r] - tau * x[r] - x[r]);
        nrm2 += x[r] * x[r];
      }
      const double nrm = std::sqrt(nrm2);
      if (nrm < 1e-300) {
        std::ostringstream os;
        os << "Richardson application with tau = " << tau
           << ", theta = " << theta << " annihilated a column";
        throw AnnihilationError(os.str());
      }
      for (auto& v : x) v /= nrm;
    }
    out.emplace_back(std::move(x));
  }
  return out;
}

IterateBlock rayleigh_ritz(const DenseSymMatrix& A,
                           const std::vector<Vec>& columns) {
  if (columns.empty())
    throw InvalidInputError("rayleigh_ritz: no columns supplied");
  const std::size_t n = A.size();
  const std::size_t ell = columns.size();
  const std::vector<Vec> q = gram_schmidt(columns);

  std::vector<Vec> aq;
  aq.reserve(ell);
  for (const Vec& qi : q) aq.push_back(matvec(A, qi));

  // Orthonormal basis reduces the projected problem to a standard symmetric
  // one; symmetrize to absorb rounding before the bitwise-checked ctor.
  std::vector<double> h(ell * ell, 0.0);
  for (std::size_t i = 0; i < ell; ++i)
    for (std::size_t j = i; j < ell; ++j) {
      const double hij = 0.5 * (dot(q[i], aq[j]) + dot(q[j], aq[i]));
      h[i * ell + j] = h[j * ell + i] = hij;
    }
  const EigenDecomposition small =
      jacobi_eigensolve(DenseSymMatrix(ell, std::move(h)));

  IterateBlock out;
  out.ritz_values = small.eigenvalues;
  out.columns.reserve(ell);
  for (std::size_t i = 0; i < ell; ++i) {
    std::vector<double> col(n, 0.0);
    const Vec& z = small.eigenvectors[i];
    for (std::size_t t = 0; t < ell; ++t) {
      const double w = z[t];
      for (std::size_t r = 0; r < n; ++r) col[r] += w * q[t][r];
    }
    double nrm = 0.0;
    for (double v : col) nrm += v * v;
    nrm = std::sqrt(nrm);
    std::size_t lead = 0;
    for (std::size_t r = 1; r < n; ++r)
      if (std::fabs(col[r]) > std::fabs(col[lead])) lead = r;
    const double sign = col[lead] < 0.0 ? -1.0 : 1.0;
    for (auto& v : col) v *= sign / nrm;
    out.columns.emplace_back(std::move(col));
  }
  return out;
}

IterateBlock outer_iterate(const DenseSymMatrix& A, const SolverConfig& config,
                           const IterateBlock& block) {
  double tau = resolve_shift(config, block);
  std::vector<Vec> inner_columns;
  if (config.inner == InnerSolver::kDirect) {
    try {
      inner_columns = inner_solve_direct(A, tau, block);
    } catch (const NearSingularShiftError&) {
      if (config.shift.kind != ShiftStrategy::Kind::kRayleigh) throw;
      // Standard inverse-iteration fallback: the Rayleigh shift lands on an
      // eigenvalue near convergence; nudge it off and retry once, since the
      // solution direction is what matters.
      tau += 1e-8 * A.frobenius_norm();
      inner_columns = inner_solve_direct(A, tau, block);
    }
  } else {
    inner_columns = inner_solve_richardson(A, tau, config.theta,
                                           config.inner_steps, block);
  }
  IterateBlock next = rayleigh_ritz(A, inner_columns);
  next.outer_index = block.outer_index + 1;
  next.tau = tau;
  return next;
}

std::vector<double> block_residuals(const DenseSymMatrix& A,
                                    const IterateBlock& block) {
  std::vector<double> out;
  out.reserve(block.columns.size());
  for (std::size_t i = 0; i < block.columns.size(); ++i) {
    const Vec ax = matvec(A, block.columns[i]);
    const double lambda = block.ritz_values[i];
    double s = 0.0;
    for (std::size_t r = 0; r < ax.size(); ++r) {
      const double d = ax[r] - lambda * block.columns[i][r];
      s += d * d;
    }
    out.push_back(std::sqrt(s));
  }
  return out;
}

SolveReport solve(const DenseSymMatrix& A, const SolverConfig& config,
                  const EigenDecomposition* truth,
                  const IterateBlock* initial) {
  config.validate(A.size());
  IterateBlock block =
      initial ? *initial : init_random_block(A, config.ell, config.seed);

  SolveReport report;
  if (truth) {
    ComponentTrace trace;
    trace.inner_steps_per_outer =
        config.inner == InnerSolver::kRichardson ? config.inner_steps : 1;
    report.trace = std::move(trace);
  }
  auto record_trace = [&](const IterateBlock& b) {
    if (!report.trace) return;
    ComponentTrace::Entry entry;
    entry.outer_index = b.outer_index;
    entry.alpha = expand_components(*truth, b.columns);
    entry.ratios.reserve(entry.alpha.size());
    for (const auto& row : entry.alpha)
      entry.ratios.push_back(component_ratio(row, config.ell));
    report.trace->entries.push_back(std::move(entry));
  };
  record_trace(block);

  for (int k = 1; k <= config.max_outer; ++k) {
    block = outer_iterate(A, config, block);
    record_trace(block);
    report.tau_history.push_back(block.tau);
    report.ritz_history.push_back(block.ritz_values);
    report.residual_history.push_back(block_residuals(A, block));
    report.outer_iterations_used = k;
    const auto& res = report.residual_history.back();
    const double worst = *std::max_element(res.begin(), res.end());
    if (worst <= config.tol) {
      report.converged = true;
      break;
    }
  }
  report.final_block = std::move(block);
  return report;
}

}  // namespace sieig
