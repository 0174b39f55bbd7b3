#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sieig/linalg.hpp"

namespace sieig {

/// The three spectrum values the closed-form rate depends on:
/// lambda_ell (largest desired), lambda_ell_plus_1 (smallest undesired),
/// lambda_n (largest overall). Requires lambda_ell <= lambda_ell_plus_1
/// <= lambda_n.
struct SpectrumSummary {
  double lambda_ell = 0.0;
  double lambda_ell_plus_1 = 0.0;
  double lambda_n = 0.0;
};

/// Predicted per-application contraction factor together with the shift and
/// relaxation parameter that produced it.
struct RatePrediction {
  double rate = 0.0;
  double tau = 0.0;
  double theta = 0.0;
};

/// Eigenbasis expansion coefficients of the iterate block, recorded once per
/// outer iteration. Entry k holds, for each block column i, the coefficients
/// alpha[i][j] = phi_j . x_i and the derived undesired/desired component
/// ratio. Entry 0 is the initial block.
struct ComponentTrace {
  struct Entry {
    int outer_index = 0;
    std::vector<std::vector<double>> alpha;  // [block column][eigen index]
    std::vector<double> ratios;              // [block column]
  };
  std::vector<Entry> entries;
  int inner_steps_per_outer = 1;

  bool has(int outer_index) const;
  const Entry& at(int outer_index) const;
};

/// alpha[i][j] = phi_j . x_i for each column x_i. Rows have unit 2-norm when
/// the columns are unit vectors and the basis is orthonormal.
std::vector<std::vector<double>> expand_components(
    const EigenDecomposition& truth, const std::vector<Vec>& columns);

/// sqrt(sum of squares of the undesired coefficients) over sqrt(sum of
/// squares of the desired ones); desired means the first ell entries.
double component_ratio(const std::vector<double>& alpha_row, std::size_t ell);

/// Per-eigenvalue multipliers g_j = 1 + theta*(1 + tau) - theta*lambda_j of
/// one Richardson application, in the order of the input spectrum.
std::vector<double> iteration_multipliers(const std::vector<double>& spectrum,
                                          double theta, double tau);

/// Rate estimate max_{j > ell} |g_j| / min_{j <= ell} |g_j| over the exact
/// multipliers of the supplied (ascending) spectrum.
RatePrediction predicted_rate(const std::vector<double>& spectrum,
                              std::size_t ell, double theta, double tau);

/// Shift that balances |g_{ell+1}| and |g_n|:
/// tau = (lambda_{ell+1} + lambda_n)/2 - 1/theta - 1.
double optimal_shift(const SpectrumSummary& summary, double theta);

/// Gap-governed contraction under the balancing shift:
/// (lambda_n - lambda_{ell+1}) / (lambda_n + lambda_{ell+1} - 2*lambda_ell).
/// Lies in [0, 1) for a strict gap; equal lambda_ell and lambda_{ell+1}
/// give exactly 1.
double closed_form_rate(const SpectrumSummary& summary);

/// Evaluates the rate both ways -- exact multipliers under the optimal shift,
/// and the closed form -- and returns the pair. The two agree to rounding;
/// tests pin the tolerance.
std::pair<double, double> rate_consistency_check(const std::vector<double>& spectrum,
                                                 std::size_t ell, double theta);

/// Geometric-mean contraction of the component ratio of block column i
/// between outer iterations k_start and k_end, normalized per inner step.
double measured_rate(const ComponentTrace& trace, std::size_t i, int k_start,
                     int k_end);

}  // namespace sieig
