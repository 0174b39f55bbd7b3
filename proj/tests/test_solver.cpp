#include "sieig/solver.hpp"

#include <cmath>

#include "doctest.h"
#include "sieig/errors.hpp"
#include "test_util.hpp"

using namespace sieig;

namespace {

const std::vector<double> kRefDiag = {1.0, 2.0, 2.01, 4.0};

SolverConfig richardson_ref_config() {
  SolverConfig c;
  c.ell = 2;
  c.inner = InnerSolver::kRichardson;
  c.theta = 0.5;
  c.inner_steps = 1;
  c.shift = ShiftStrategy::optimal_rate(2.01, 4.0);
  c.max_outer = 500;
  c.tol = 1e-12;
  c.seed = 0;
  return c;
}

IterateBlock block_from_columns(std::vector<Vec> cols, std::vector<double> ritz) {
  IterateBlock b;
  b.columns = std::move(cols);
  b.ritz_values = std::move(ritz);
  return b;
}

}  // namespace

TEST_CASE("init_random_block determinism and orthonormality") {
  const IterateBlock a = init_random_block(7, 3, 42);
  const IterateBlock b = init_random_block(7, 3, 42);
  REQUIRE(a.columns.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(a.columns[i].values() == b.columns[i].values());
  CHECK(test_util::orthonormality_defect(a.columns) <= 1e-12);
  CHECK(a.ritz_values == std::vector<double>{0.0, 0.0, 0.0});

  const IterateBlock c = init_random_block(7, 3, 43);
  CHECK(a.columns[0].values() != c.columns[0].values());
}

TEST_CASE("init_random_block bounds") {
  CHECK_THROWS_AS(init_random_block(4, 4, 0), InvalidInputError);
  CHECK_THROWS_AS(init_random_block(4, 0, 0), InvalidInputError);
  CHECK(init_random_block(1, 1, 0).columns.size() == 1);  // 1x1 special case
}

TEST_CASE("init_random_block with matrix fills ascending Rayleigh quotients") {
  const DenseSymMatrix a = test_util::random_sym(8);
  const IterateBlock block = init_random_block(a, 3, 7);
  for (std::size_t i = 0; i < 3; ++i) {
    const double rq = dot(block.columns[i], matvec(a, block.columns[i]));
    CHECK(block.ritz_values[i] == doctest::Approx(rq).epsilon(1e-14));
    if (i) CHECK(block.ritz_values[i - 1] <= block.ritz_values[i]);
  }
}

TEST_CASE("inner_solve_direct examples") {
  const DenseSymMatrix d = DenseSymMatrix::diagonal(kRefDiag);
  const auto cols = inner_solve_direct(
      d, 0.005, block_from_columns({Vec::unit(4, 1)}, {0.0}));
  CHECK(cols[0][1] == doctest::Approx(1.0 / 1.995).epsilon(1e-14));
  CHECK(cols[0][0] == 0.0);

  const DenseSymMatrix two = DenseSymMatrix::diagonal({2.0, 2.0});
  const Vec x({0.6, 0.8});
  const auto half = inner_solve_direct(two, 0.0, block_from_columns({x}, {0.0}));
  CHECK(test_util::max_abs_diff(half[0], Vec({0.3, 0.4})) <= 1e-15);

  CHECK_THROWS_AS(inner_solve_direct(DenseSymMatrix::diagonal({1.0, 2.0}), 2.0,
                                     block_from_columns({Vec::unit(2, 0)}, {0.0})),
                  NearSingularShiftError);
}

TEST_CASE("inner_solve_richardson examples") {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const DenseSymMatrix d12 = DenseSymMatrix::diagonal({1.0, 2.0});
  auto cols = inner_solve_richardson(
      d12, 0.0, 0.5, 1,
      block_from_columns({Vec({inv_sqrt2, inv_sqrt2})}, {0.0}));
  // multipliers (1, 0.5): direction (1, 0.5) normalized
  CHECK(cols[0][0] == doctest::Approx(1.0 / std::sqrt(1.25)).epsilon(1e-14));
  CHECK(cols[0][1] == doctest::Approx(0.5 / std::sqrt(1.25)).epsilon(1e-14));

  // scalar spectrum: every component scales equally, renormalization undoes it
  const Vec x({0.6, -0.8});
  cols = inner_solve_richardson(DenseSymMatrix::identity(2), 0.0, 0.5, 7,
                                block_from_columns({x}, {0.0}));
  CHECK(test_util::max_abs_diff(cols[0], x) == 0.0);

  // reference multipliers (1.0025, 0.5025, 0.4975, -0.4975)
  const DenseSymMatrix d = DenseSymMatrix::diagonal(kRefDiag);
  cols = inner_solve_richardson(
      d, 0.005, 0.5, 1, block_from_columns({Vec({0.5, 0.5, 0.5, 0.5})}, {0.0}));
  const double nrm = std::sqrt(0.5 * 0.5 * (1.0025 * 1.0025 + 0.5025 * 0.5025 +
                                            0.4975 * 0.4975 + 0.4975 * 0.4975));
  CHECK(cols[0][0] == doctest::Approx(0.5 * 1.0025 / nrm).epsilon(1e-13));
  CHECK(cols[0][1] == doctest::Approx(0.5 * 0.5025 / nrm).epsilon(1e-13));
  CHECK(cols[0][2] == doctest::Approx(0.5 * 0.4975 / nrm).epsilon(1e-13));
  CHECK(cols[0][3] == doctest::Approx(-0.5 * 0.4975 / nrm).epsilon(1e-13));

  // g = 0 for every component annihilates the column
  CHECK_THROWS_AS(
      inner_solve_richardson(DenseSymMatrix::diagonal({2.0, 2.0}), -1.0, 0.5, 1,
                             block_from_columns({Vec({inv_sqrt2, inv_sqrt2})}, {0.0})),
      AnnihilationError);

  CHECK_THROWS_AS(inner_solve_richardson(d12, 0.0, 1.5, 1,
                                         block_from_columns({x}, {0.0})),
                  InvalidInputError);
  CHECK_THROWS_AS(inner_solve_richardson(d12, 0.0, 0.5, 0,
                                         block_from_columns({x}, {0.0})),
                  InvalidInputError);
}

TEST_CASE("diagonal-matrix exactness of one Richardson application") {
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = test_util::uniform_int(2, 20);
    std::vector<double> diag(n);
    for (auto& v : diag) v = test_util::uniform(-3.0, 3.0);
    const DenseSymMatrix a = DenseSymMatrix::diagonal(diag);
    const double theta = test_util::uniform(0.1, 0.9);
    const double tau = test_util::uniform(-2.0, 2.0);
    const IterateBlock block = init_random_block(n, 1, trial);
    const auto cols = inner_solve_richardson(a, tau, theta, 1, block);
    // componentwise evaluation of the multipliers
    std::vector<double> w(n);
    double nrm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      w[j] = (1.0 + theta * (1.0 + tau) - theta * diag[j]) * block.columns[0][j];
      nrm += w[j] * w[j];
    }
    nrm = std::sqrt(nrm);
    for (std::size_t j = 0; j < n; ++j)
      CHECK(std::fabs(cols[0][j] - w[j] / nrm) <= 1e-14);
  }
}

TEST_CASE("rayleigh_ritz examples") {
  const DenseSymMatrix a = test_util::random_sym(6);
  const EigenDecomposition truth = jacobi_eigensolve(a);

  // exact invariant subspace reproduces exact eigenvalues
  const IterateBlock rr =
      rayleigh_ritz(a, {truth.eigenvectors[0], truth.eigenvectors[1]});
  CHECK(rr.ritz_values[0] == doctest::Approx(truth.eigenvalues[0]).epsilon(1e-10));
  CHECK(rr.ritz_values[1] == doctest::Approx(truth.eigenvalues[1]).epsilon(1e-10));
  CHECK(std::fabs(dot(rr.columns[0], truth.eigenvectors[0])) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(test_util::orthonormality_defect(rr.columns) <= 1e-12);

  // span{e1, e2} of the reference diagonal matrix projects to (1, 2)
  const DenseSymMatrix d = DenseSymMatrix::diagonal(kRefDiag);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const IterateBlock rr2 = rayleigh_ritz(
      d, {Vec({inv_sqrt2, inv_sqrt2, 0.0, 0.0}),
          Vec({inv_sqrt2, -inv_sqrt2, 0.0, 0.0})});
  CHECK(rr2.ritz_values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rr2.ritz_values[1] == doctest::Approx(2.0).epsilon(1e-12));

  // single column: plain Rayleigh quotient
  const Vec x = test_util::random_vec(6);
  const IterateBlock rr3 = rayleigh_ritz(a, {x});
  const double q = dot(x, matvec(a, x)) / dot(x, x);
  CHECK(rr3.ritz_values[0] == doctest::Approx(q).epsilon(1e-12));

  CHECK_THROWS_AS(rayleigh_ritz(a, {x, x}), RankDeficiencyError);
}

TEST_CASE("rayleigh_ritz is invariant to positive column rescaling") {
  const DenseSymMatrix a = test_util::random_sym(8);
  const IterateBlock block = init_random_block(a, 3, 3);
  const auto cols = inner_solve_direct(a, -7.5, block);
  const IterateBlock r1 = rayleigh_ritz(a, cols);
  std::vector<Vec> scaled;
  const double scales[] = {3.0, 0.004, 170.0};
  for (std::size_t i = 0; i < cols.size(); ++i) {
    std::vector<double> v = cols[i].values();
    for (auto& c : v) c *= scales[i];
    scaled.emplace_back(std::move(v));
  }
  const IterateBlock r2 = rayleigh_ritz(a, scaled);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(std::fabs(r1.ritz_values[i] - r2.ritz_values[i]) <=
          1e-12 * std::max(1.0, std::fabs(r1.ritz_values[i])));
}

TEST_CASE("outer_iterate fixed point on exact eigenvectors") {
  const DenseSymMatrix d = DenseSymMatrix::diagonal(kRefDiag);
  SolverConfig config;
  config.ell = 2;
  config.inner = InnerSolver::kDirect;
  config.shift = ShiftStrategy::fixed(0.9);
  const IterateBlock start =
      block_from_columns({Vec::unit(4, 0), Vec::unit(4, 1)}, {1.0, 2.0});
  const IterateBlock next = outer_iterate(d, config, start);
  CHECK(next.outer_index == 1);
  CHECK(next.tau == 0.9);
  CHECK(next.ritz_values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(next.ritz_values[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(test_util::max_abs_diff(next.columns[0], Vec::unit(4, 0)) <= 1e-12);
  CHECK(test_util::max_abs_diff(next.columns[1], Vec::unit(4, 1)) <= 1e-12);
}

TEST_CASE("outer_iterate records the reference optimal shift") {
  const DenseSymMatrix d = DenseSymMatrix::diagonal(kRefDiag);
  const SolverConfig config = richardson_ref_config();
  const IterateBlock block = init_random_block(d, 2, 0);
  const IterateBlock next = outer_iterate(d, config, block);
  CHECK(next.tau == doctest::Approx(0.005).epsilon(1e-12));
  CHECK(next.outer_index == 1);
}

TEST_CASE("outer_iterate Rayleigh-shift steps converge to the near eigenvalue") {
  const DenseSymMatrix a(2, {2.0, 1.0, 1.0, 2.0});
  SolverConfig config;
  config.ell = 1;
  config.inner = InnerSolver::kDirect;
  config.shift = ShiftStrategy::rayleigh();
  const Vec x0({1.0 / std::sqrt(1.81), 0.9 / std::sqrt(1.81)});
  IterateBlock block = block_from_columns({x0}, {dot(x0, matvec(a, x0))});
  for (int k = 0; k < 3; ++k) block = outer_iterate(a, config, block);
  CHECK(std::fabs(block.ritz_values[0] - 3.0) <= 1e-10);
}

TEST_CASE("solve from exact eigenvectors converges at iteration 1") {
  const DenseSymMatrix d = DenseSymMatrix::diagonal(kRefDiag);
  const IterateBlock exact =
      block_from_columns({Vec::unit(4, 0), Vec::unit(4, 1)}, {1.0, 2.0});

  SolverConfig direct;
  direct.ell = 2;
  direct.inner = InnerSolver::kDirect;
  direct.shift = ShiftStrategy::fixed(0.5);
  direct.tol = 1e-10;
  SolveReport r1 = solve(d, direct, nullptr, &exact);
  CHECK(r1.converged);
  CHECK(r1.outer_iterations_used == 1);

  SolverConfig rich = richardson_ref_config();
  rich.tol = 1e-10;
  SolveReport r2 = solve(d, rich, nullptr, &exact);
  CHECK(r2.converged);
  CHECK(r2.outer_iterations_used == 1);

  // Rayleigh shift lands exactly on the eigenvalue; the perturb-once
  // fallback keeps the direct solve going.
  SolverConfig rayleigh;
  rayleigh.ell = 2;
  rayleigh.inner = InnerSolver::kDirect;
  rayleigh.shift = ShiftStrategy::rayleigh();
  rayleigh.tol = 1e-10;
  SolveReport r3 = solve(d, rayleigh, nullptr, &exact);
  CHECK(r3.converged);
  CHECK(r3.outer_iterations_used == 1);
}

TEST_CASE("solve: Rayleigh-shift direct path is superlinear at block size 1") {
  const DenseSymMatrix d = DenseSymMatrix::diagonal(kRefDiag);
  SolverConfig config;
  config.ell = 1;
  config.inner = InnerSolver::kDirect;
  config.shift = ShiftStrategy::rayleigh();
  config.max_outer = 10;
  config.tol = 1e-10;
  config.seed = 0;
  const SolveReport report = solve(d, config);
  CHECK(report.converged);

  bool reached = false;
  for (int k = 0; k < report.outer_iterations_used && k < 6; ++k)
    if (std::fabs(report.ritz_history[k][0] - 1.0) < 1e-10) reached = true;
  CHECK(reached);

  for (int k = 0; k + 1 < report.outer_iterations_used; ++k) {
    const double e0 = std::fabs(report.ritz_history[k][0] - 1.0);
    const double e1 = std::fabs(report.ritz_history[k + 1][0] - 1.0);
    if (e0 < 1e-2) CHECK(e1 <= std::pow(e0, 1.5));
  }
}

TEST_CASE("solve: reference Richardson run contracts at the predicted rate") {
  const DenseSymMatrix d = DenseSymMatrix::diagonal(kRefDiag);
  const EigenDecomposition truth = jacobi_eigensolve(d);
  const SolveReport report = solve(d, richardson_ref_config(), &truth);
  CHECK_FALSE(report.converged);
  CHECK(report.outer_iterations_used == 500);
  REQUIRE(report.trace.has_value());
  CHECK(report.trace->entries.size() == 501);  // initial block + 500 iterations

  const double rate = measured_rate(*report.trace, 1, 20, 500);
  CHECK(std::fabs(rate - 1.99 / 2.01) <= 0.005);

  // every recorded expansion row keeps unit norm
  for (const auto& entry : report.trace->entries) {
    for (const auto& row : entry.alpha) {
      double sum = 0.0;
      for (double c : row) sum += c * c;
      CHECK(std::fabs(sum - 1.0) <= 1e-12);
    }
  }

  // residual trend: iteration 200 below iteration 10
  const auto worst = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
  };
  CHECK(worst(report.residual_history[199]) < worst(report.residual_history[9]));
}

TEST_CASE("solve reports non-convergence without throwing") {
  const DenseSymMatrix d = DenseSymMatrix::diagonal(kRefDiag);
  SolverConfig config = richardson_ref_config();
  config.max_outer = 3;
  config.tol = 1e-30;
  const SolveReport report = solve(d, config);
  CHECK_FALSE(report.converged);
  CHECK(report.outer_iterations_used == 3);
  CHECK(report.residual_history.size() == 3);
  CHECK(report.ritz_history.size() == 3);
  CHECK(report.tau_history.size() == 3);
}

TEST_CASE("outer iterates stay orthonormal with ascending ritz values") {
  const DenseSymMatrix a = test_util::random_sym(12);
  SolverConfig config;
  config.ell = 4;
  config.inner = InnerSolver::kRichardson;
  config.theta = 0.5;
  config.shift = ShiftStrategy::fixed(-1.0);
  IterateBlock block = init_random_block(a, 4, 11);
  for (int k = 0; k < 50; ++k) {
    block = outer_iterate(a, config, block);
    CHECK(test_util::orthonormality_defect(block.columns) <= 1e-12);
    for (std::size_t i = 1; i < 4; ++i)
      CHECK(block.ritz_values[i - 1] <= block.ritz_values[i]);
  }
}

TEST_CASE("solver config validation") {
  SolverConfig config;
  config.ell = 3;
  CHECK_THROWS_AS(config.validate(3), InvalidInputError);
  config.ell = 2;
  config.inner = InnerSolver::kRichardson;
  config.theta = 1.5;
  CHECK_THROWS_AS(config.validate(4), InvalidInputError);
  config.theta = 0.5;
  config.inner_steps = 0;
  CHECK_THROWS_AS(config.validate(4), InvalidInputError);
  config.inner_steps = 1;
  config.tol = 0.0;
  CHECK_THROWS_AS(config.validate(4), InvalidInputError);
  config.tol = 1e-8;
  config.max_outer = 0;
  CHECK_THROWS_AS(config.validate(4), InvalidInputError);
  config.max_outer = 10;
  config.validate(4);

  CHECK_THROWS_AS(ShiftStrategy::optimal_rate(4.0, 2.0), InvalidInputError);
}
