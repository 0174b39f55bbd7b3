#include "sieig/rate_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sieig/errors.hpp"

namespace sieig {

namespace {

void require_sorted(const std::vector<double>& spectrum) {
  for (std::size_t j = 1; j < spectrum.size(); ++j) {
    if (spectrum[j - 1] > spectrum[j])
      throw InvalidInputError("spectrum must be sorted ascending");
  }
}

void require_summary_order(const SpectrumSummary& s) {
  if (!(s.lambda_ell <= s.lambda_ell_plus_1 &&
        s.lambda_ell_plus_1 <= s.lambda_n)) {
    std::ostringstream os;
    os << "spectrum summary out of order: lambda_ell = " << s.lambda_ell
       << ", lambda_ell_plus_1 = " << s.lambda_ell_plus_1
       << ", lambda_n = " << s.lambda_n;
    throw InvalidSpectrumError(os.str());
  }
}

void require_theta(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    std::ostringstream os;
    os << "theta = " << theta << " outside required range (0,1)";
    throw InvalidInputError(os.str());
  }
}

}  // namespace

bool ComponentTrace::has(int outer_index) const {
  for (const auto& e : entries)
    if (e.outer_index == outer_index) return true;
  return false;
}

const ComponentTrace::Entry& ComponentTrace::at(int outer_index) const {
  for (const auto& e : entries)
    if (e.outer_index == outer_index) return e;
  std::ostringstream os;
  os << "component trace has no entry for outer iteration " << outer_index;
  throw InvalidInputError(os.str());
}

std::vector<std::vector<double>> expand_components(
    const EigenDecomposition& truth, const std::vector<Vec>& columns) {
  const std::size_t n = truth.eigenvectors.size();
  std::vector<std::vector<double>> alpha;
  alpha.reserve(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].size() != n) {
      std::ostringstream os;
      os << "expand_components: column " << i << " has dimension "
         << columns[i].size() << ", basis has " << n;
      throw DimensionError(os.str());
    }
    std::vector<double> row(n);
    for (std::size_t j = 0; j < n; ++j)
      row[j] = dot(truth.eigenvectors[j], columns[i]);
    alpha.push_back(std::move(row));
  }
  return alpha;
}

double component_ratio(const std::vector<double>& alpha_row, std::size_t ell) {
  if (ell == 0 || ell > alpha_row.size())
    throw InvalidInputError("component_ratio: ell out of range");
  double desired = 0.0, undesired = 0.0;
  for (std::size_t j = 0; j < alpha_row.size(); ++j) {
    const double a2 = alpha_row[j] * alpha_row[j];
    if (j < ell)
      desired += a2;
    else
      undesired += a2;
  }
  return std::sqrt(undesired) / std::sqrt(desired);
}

std::vector<double> iteration_multipliers(const std::vector<double>& spectrum,
                                          double theta, double tau) {
  std::vector<double> g;
  g.reserve(spectrum.size());
  for (double lambda : spectrum)
    g.push_back(1.0 + theta * (1.0 + tau) - theta * lambda);
  return g;
}

RatePrediction predicted_rate(const std::vector<double>& spectrum,
                              std::size_t ell, double theta, double tau) {
  if (ell < 1 || ell >= spectrum.size())
    throw InvalidInputError("predicted_rate: need 1 <= ell < spectrum size");
  require_sorted(spectrum);
  const std::vector<double> g = iteration_multipliers(spectrum, theta, tau);
  double desired_min = std::fabs(g[0]);
  for (std::size_t j = 1; j < ell; ++j)
    desired_min = std::min(desired_min, std::fabs(g[j]));
  double undesired_max = 0.0;
  for (std::size_t j = ell; j < g.size(); ++j)
    undesired_max = std::max(undesired_max, std::fabs(g[j]));
  if (desired_min < 1e-300) {
    std::ostringstream os;
    os << "shift tau = " << tau << " with theta = " << theta
       << " annihilates a desired component";
    throw DegenerateShiftError(os.str());
  }
  return RatePrediction{undesired_max / desired_min, tau, theta};
}

double optimal_shift(const SpectrumSummary& summary, double theta) {
  require_theta(theta);
  require_summary_order(summary);
  return (summary.lambda_ell_plus_1 + summary.lambda_n) / 2.0 - 1.0 / theta -
         1.0;
}

double closed_form_rate(const SpectrumSummary& summary) {
  require_summary_order(summary);
  const double denom =
      summary.lambda_n + summary.lambda_ell_plus_1 - 2.0 * summary.lambda_ell;
  if (!(denom > 0.0)) {
    std::ostringstream os;
    os << "closed_form_rate: nonpositive denominator lambda_n + "
          "lambda_ell_plus_1 - 2*lambda_ell = "
       << denom;
    throw InvalidSpectrumError(os.str());
  }
  return (summary.lambda_n - summary.lambda_ell_plus_1) / denom;
}

std::pair<double, double> rate_consistency_check(const std::vector<double>& spectrum,
                                                 std::size_t ell, double theta) {
  if (ell < 1 || ell >= spectrum.size())
    throw InvalidInputError("rate_consistency_check: need 1 <= ell < spectrum size");
  require_sorted(spectrum);
  const SpectrumSummary summary{spectrum[ell - 1], spectrum[ell],
                                spectrum[spectrum.size() - 1]};
  const double tau = optimal_shift(summary, theta);
  const RatePrediction p = predicted_rate(spectrum, ell, theta, tau);
  return {p.rate, closed_form_rate(summary)};
}

double measured_rate(const ComponentTrace& trace, std::size_t i, int k_start,
                     int k_end) {
  if (k_start >= k_end)
    throw InvalidInputError("measured_rate: need k_start < k_end");
  const auto& first = trace.at(k_start);
  const auto& last = trace.at(k_end);
  if (i >= first.ratios.size() || i >= last.ratios.size())
    throw InvalidInputError("measured_rate: block index out of range");
  const double r0 = first.ratios[i];
  const double r1 = last.ratios[i];
  if (r0 == 0.0) {
    std::ostringstream os;
    os << "component ratio already zero at outer iteration " << k_start;
    throw AlreadyConvergedError(os.str());
  }
  const double steps =
      static_cast<double>(k_end - k_start) *
      static_cast<double>(std::max(trace.inner_steps_per_outer, 1));
  return std::pow(r1 / r0, 1.0 / steps);
}

}  // namespace sieig
