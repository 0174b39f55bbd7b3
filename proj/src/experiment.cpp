#include "sieig/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "sieig/errors.hpp"
#include "sieig/matrix_market.hpp"
#include "sieig/svg.hpp"
#include "sieig/text_io.hpp"

namespace sieig {

namespace {

// Below this the expansion coefficients are dominated by rounding noise, so
// a window end sitting under it would drag the measured rate toward 1.
constexpr double kRatioFloor = 1e-12;

std::string compact(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::optional<double> windowed_measured_rate(const ComponentTrace& trace,
                                             std::size_t i, int start,
                                             int end) {
  if (trace.entries.empty()) return std::nullopt;
  const int last = trace.entries.back().outer_index;
  int end0 = (end <= 0) ? last : std::min(end, last);
  const auto ratio_at = [&](int k) { return trace.at(k).ratios.at(i); };
  while (end0 > 1 && ratio_at(end0) < kRatioFloor) --end0;
  int start0 = start;
  if (start0 >= end0) start0 = std::max(1, end0 / 2);
  if (start0 >= end0) return std::nullopt;
  try {
    return measured_rate(trace, i, start0, end0);
  } catch (const AlreadyConvergedError&) {
    return std::nullopt;
  }
}

}  // namespace

MatrixSource MatrixSource::from_file(std::filesystem::path path) {
  MatrixSource s;
  s.kind = Kind::kFile;
  s.file = std::move(path);
  return s;
}

MatrixSource MatrixSource::diag(std::vector<double> entries) {
  MatrixSource s;
  s.kind = Kind::kDiagonal;
  s.diagonal = std::move(entries);
  return s;
}

MatrixSource MatrixSource::laplacian(std::size_t n) {
  MatrixSource s;
  s.kind = Kind::kLaplacian1d;
  s.laplacian_n = n;
  return s;
}

std::string MatrixSource::describe() const {
  switch (kind) {
    case Kind::kFile:
      return "file:" + file.string();
    case Kind::kDiagonal: {
      std::string out = "diag(";
      for (std::size_t i = 0; i < diagonal.size(); ++i) {
        if (i) out.push_back(',');
        out += format_shortest(diagonal[i]);
      }
      out.push_back(')');
      return out;
    }
    case Kind::kLaplacian1d:
      return "laplacian(" + std::to_string(laplacian_n) + ")";
  }
  return "?";
}

DenseSymMatrix gen_diag(const std::vector<double>& entries) {
  if (entries.empty())
    throw InvalidInputError("gen_diag: spectrum list is empty");
  return DenseSymMatrix::diagonal(entries);
}

DenseSymMatrix gen_laplacian_1d(std::size_t n) {
  if (n < 1) throw InvalidInputError("gen_laplacian_1d: n must be >= 1");
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    e[i * n + i] = 2.0;
    if (i + 1 < n) e[i * n + i + 1] = e[(i + 1) * n + i] = -1.0;
  }
  return DenseSymMatrix(n, std::move(e));
}

DenseSymMatrix build_matrix(const MatrixSource& source) {
  switch (source.kind) {
    case MatrixSource::Kind::kFile:
      return read_matrix_market(source.file);
    case MatrixSource::Kind::kDiagonal:
      return gen_diag(source.diagonal);
    case MatrixSource::Kind::kLaplacian1d:
      return gen_laplacian_1d(source.laplacian_n);
  }
  throw InvalidInputError("unknown matrix source");
}

ExperimentResult run_experiment(const ExperimentSpec& spec, std::ostream& out) {
  const DenseSymMatrix A = build_matrix(spec.source);
  spec.config.validate(A.size());

  std::optional<EigenDecomposition> truth;
  if (spec.compute_truth) truth = jacobi_eigensolve(A);

  ExperimentResult result;
  result.report = solve(A, spec.config, truth ? &*truth : nullptr);
  const SolveReport& report = result.report;
  const std::size_t ell = spec.config.ell;
  const long long steps_per_outer =
      spec.config.inner == InnerSolver::kRichardson ? spec.config.inner_steps
                                                    : 1;

  for (int k = 1; k <= report.outer_iterations_used; ++k) {
    for (std::size_t i = 0; i < ell; ++i) {
      TraceRecord r;
      r.outer_iter = k;
      r.inner_step = steps_per_outer * k;
      r.block_index = i;
      r.ritz_value = report.ritz_history[k - 1][i];
      if (truth)
        r.abs_err = std::fabs(r.ritz_value - truth->eigenvalues[i]);
      if (report.trace) r.component_ratio = report.trace->at(k).ratios[i];
      r.tau = report.tau_history[k - 1];
      r.residual = report.residual_history[k - 1][i];
      result.records.push_back(r);
    }
  }

  if (!spec.trace_csv.empty()) write_trace_csv(spec.trace_csv, result.records);

  if (!spec.plot_svg.empty()) {
    std::vector<SvgSeries> series(ell);
    for (std::size_t i = 0; i < ell; ++i)
      series[i].label = (truth ? "abs err i=" : "residual i=") + std::to_string(i);
    for (const auto& r : result.records) {
      const double y = truth ? *r.abs_err : r.residual;
      series[r.block_index].points.emplace_back(
          static_cast<double>(r.outer_iter), y);
    }
    SvgChartOptions opts;
    opts.title = spec.source.describe();
    opts.x_label = "outer iteration";
    opts.y_label = truth ? "eigenvalue error" : "residual";
    write_line_chart(spec.plot_svg, series, opts);
  }

  if (truth && ell < A.size()) {
    const SpectrumSummary summary{truth->eigenvalues[ell - 1],
                                  truth->eigenvalues[ell],
                                  truth->eigenvalues.back()};
    try {
      if (spec.config.inner == InnerSolver::kRichardson &&
          !report.tau_history.empty()) {
        result.predicted_rate =
            predicted_rate(truth->eigenvalues, ell, spec.config.theta,
                           report.tau_history.back())
                .rate;
      } else {
        result.predicted_rate = closed_form_rate(summary);
      }
    } catch (const Error&) {
      result.predicted_rate = std::nullopt;
    }
  }
  if (report.trace)
    result.measured_rate = windowed_measured_rate(
        *report.trace, ell - 1, spec.window_start, spec.window_end);
  if (!report.tau_history.empty()) result.first_tau = report.tau_history[0];

  out << "matrix: " << spec.source.describe() << " (n = " << A.size() << ")\n";
  out << "tau = " << compact(result.first_tau) << "\n";
  out << "outer iterations: " << report.outer_iterations_used
      << (report.converged ? " (converged)" : " (not converged)") << "\n";
  for (std::size_t i = 0; i < ell; ++i) {
    out << "ritz[" << i << "] = "
        << format_shortest(report.final_block.ritz_values[i])
        << "  residual = " << compact(report.residual_history.back()[i]);
    if (truth)
      out << "  abs err = "
          << compact(std::fabs(report.final_block.ritz_values[i] -
                               truth->eigenvalues[i]));
    out << "\n";
  }
  char rate_buf[48];
  if (result.predicted_rate) {
    std::snprintf(rate_buf, sizeof(rate_buf), "%.6f", *result.predicted_rate);
    out << "predicted rate = " << rate_buf << "\n";
  }
  if (result.measured_rate) {
    std::snprintf(rate_buf, sizeof(rate_buf), "%.6f", *result.measured_rate);
    out << "measured rate = " << rate_buf << "\n";
  }
  return result;
}

ExperimentResult run_paper_reproduction(const std::filesystem::path& out_dir,
                                        std::ostream& out) {
  ExperimentSpec spec;
  spec.source = MatrixSource::diag({1.0, 2.0, 2.01, 4.0});
  spec.config.ell = 2;
  spec.config.inner = InnerSolver::kRichardson;
  spec.config.theta = 0.5;
  spec.config.inner_steps = 1;
  spec.config.shift = ShiftStrategy::optimal_rate(2.01, 4.0);
  spec.config.max_outer = 500;
  spec.config.tol = 1e-12;
  spec.config.seed = 0;
  spec.compute_truth = true;
  spec.trace_csv = out_dir / "paper_trace.csv";
  spec.plot_svg = out_dir / "paper_fig1.svg";
  spec.window_start = 20;
  spec.window_end = 500;
  return run_experiment(spec, out);
}

std::vector<GapSweepRow> run_gap_sweep(const std::vector<double>& gaps,
                                       const SpectrumSummary& base,
                                       const SolverConfig& config,
                                       const std::filesystem::path& csv_path,
                                       const std::filesystem::path& svg_path,
                                       std::ostream& out) {
  if (gaps.empty()) throw InvalidInputError("run_gap_sweep: gap list is empty");
  for (double g : gaps) {
    if (!(g > 0.0) || !std::isfinite(g)) {
      std::ostringstream os;
      os << "run_gap_sweep: gaps must be positive, got " << g;
      throw InvalidInputError(os.str());
    }
    if (base.lambda_ell + g > base.lambda_n) {
      std::ostringstream os;
      os << "run_gap_sweep: gap " << g << " pushes lambda_ell_plus_1 past "
            "lambda_n = "
         << base.lambda_n;
      throw InvalidSpectrumError(os.str());
    }
  }
  std::vector<double> sorted = gaps;
  std::sort(sorted.begin(), sorted.end());

  std::vector<GapSweepRow> rows;
  for (double g : sorted) {
    const double l_ell = base.lambda_ell;
    const double l_next = base.lambda_ell + g;
    const DenseSymMatrix A = gen_diag({l_ell - 1.0, l_ell, l_next, base.lambda_n});
    const EigenDecomposition truth = jacobi_eigensolve(A);

    SolverConfig cfg = config;
    cfg.ell = 2;
    cfg.inner = InnerSolver::kRichardson;
    cfg.shift = ShiftStrategy::optimal_rate(l_next, base.lambda_n);

    const SolveReport report = solve(A, cfg, &truth);
    GapSweepRow row;
    row.gap = g;
    row.predicted = closed_form_rate({l_ell, l_next, base.lambda_n});
    const auto measured =
        windowed_measured_rate(*report.trace, 1, 10, cfg.max_outer);
    row.measured = measured ? *measured
                            : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
    out << "gap " << compact(g) << ": predicted " << compact(row.predicted)
        << ", measured " << compact(row.measured) << "\n";
  }

  if (!csv_path.empty()) {
    std::string csv = "gap,predicted_rate,measured_rate\n";
    for (const auto& r : rows) {
      csv += format_shortest(r.gap);
      csv.push_back(',');
      csv += format_shortest(r.predicted);
      csv.push_back(',');
      csv += format_shortest(r.measured);
      csv.push_back('\n');
    }
    write_text_atomic(csv_path, csv);
  }
  if (!svg_path.empty()) {
    SvgSeries pred{"predicted", {}};
    SvgSeries meas{"measured", {}};
    for (const auto& r : rows) {
      pred.points.emplace_back(r.gap, r.predicted);
      if (std::isfinite(r.measured)) meas.points.emplace_back(r.gap, r.measured);
    }
    SvgChartOptions opts;
    opts.title = "contraction rate vs eigenvalue gap";
    opts.x_label = "gap";
    opts.y_label = "rate";
    opts.log_x = true;
    write_line_chart(svg_path, {pred, meas}, opts);
  }
  return rows;
}

}  // namespace sieig
