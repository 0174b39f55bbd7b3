#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sieig/linalg.hpp"
#include "sieig/rate_analysis.hpp"
#include "sieig/solver.hpp"
#include "sieig/trace_io.hpp"

namespace sieig {

/// Where the operator comes from: a Matrix Market file, an explicit diagonal,
/// or the tridiagonal (-1, 2, -1) family.
struct MatrixSource {
  enum class Kind { kFile, kDiagonal, kLaplacian1d };
  Kind kind = Kind::kDiagonal;
  std::filesystem::path file;
  std::vector<double> diagonal;
  std::size_t laplacian_n = 0;

  static MatrixSource from_file(std::filesystem::path path);
  static MatrixSource diag(std::vector<double> entries);
  static MatrixSource laplacian(std::size_t n);
  std::string describe() const;
};

struct ExperimentSpec {
  MatrixSource source;
  SolverConfig config;
  bool compute_truth = true;
  std::filesystem::path trace_csv;  // empty: no CSV written
  std::filesystem::path plot_svg;   // empty: no SVG written
  // Outer-iteration window for the measured rate. window_end <= 0 means the
  // last recorded iteration; the end is additionally pulled in while the
  // component ratio sits below 1e-12, where rounding noise dominates.
  int window_start = 20;
  int window_end = 0;
};

struct ExperimentResult {
  SolveReport report;
  std::vector<TraceRecord> records;
  std::optional<double> predicted_rate;
  std::optional<double> measured_rate;
  double first_tau = 0.0;  // shift used by the first outer iteration
};

/// Diagonal matrix with the given spectrum in the given order.
DenseSymMatrix gen_diag(const std::vector<double>& entries);

/// Dense tridiagonal (-1, 2, -1) matrix; eigenvalues 2 - 2cos(j*pi/(n+1)).
DenseSymMatrix gen_laplacian_1d(std::size_t n);

DenseSymMatrix build_matrix(const MatrixSource& source);

/// Builds the matrix, runs the solver, writes trace CSV and error SVG, and
/// prints a summary (final Ritz values, measured vs predicted rate) to out.
ExperimentResult run_experiment(const ExperimentSpec& spec, std::ostream& out);

/// Fixed reference preset: A = diag(1,2,2.01,4), ell = 2, Richardson with
/// theta = 0.5 and the optimal shift 0.005, one inner step, seed 0, 500
/// outer iterations. Writes paper_trace.csv and paper_fig1.svg to out_dir.
ExperimentResult run_paper_reproduction(const std::filesystem::path& out_dir,
                                        std::ostream& out);

struct GapSweepRow {
  double gap = 0.0;
  double predicted = 0.0;
  double measured = 0.0;
};

/// For each gap g runs the Richardson solver on the 4-point spectrum
/// (lambda_ell - 1, lambda_ell, lambda_ell + g, lambda_n) with ell = 2 and
/// the per-gap optimal shift, and records predicted vs measured rates.
/// Rows come back sorted by gap ascending; CSV and SVG are written when the
/// paths are nonempty.
std::vector<GapSweepRow> run_gap_sweep(const std::vector<double>& gaps,
                                       const SpectrumSummary& base,
                                       const SolverConfig& config,
                                       const std::filesystem::path& csv_path,
                                       const std::filesystem::path& svg_path,
                                       std::ostream& out);

}  // namespace sieig
