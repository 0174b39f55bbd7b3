#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sieig/errors.hpp"
#include "sieig/experiment.hpp"
#include "sieig/text_io.hpp"

namespace {

// Exit code contract: 0 success, 1 usage error, 2 numerical/convergence
// failure, 3 I/O failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

std::string compact(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct UsageError {
  std::string message;
};

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& flag) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string field =
        text.substr(start, comma == std::string::npos ? comma : comma - start);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      throw UsageError{flag + ": cannot parse '" + field + "' as a real"};
    }
    if (used != field.size())
      throw UsageError{flag + ": cannot parse '" + field + "' as a real"};
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct SolveFlags {
  std::string matrix_file;
  std::string diag_list;
  std::size_t laplacian_n = 0;
  std::size_t ell = 1;
  std::string inner = "direct";
  double theta = 0.5;
  int inner_steps = 1;
  std::string shift = "rayleigh";
  int max_outer = 200;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::string trace_csv;
  std::string plot_svg;
  bool truth = false;
};

// theta is validated at parse time so a bad value is a usage error.
const CLI::Validator kThetaRange(
    [](std::string& s) {
      try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size() && v > 0.0 && v < 1.0) return std::string();
      } catch (const std::exception&) {
      }
      return std::string("theta must lie in the open range (0,1)");
    },
    "FLOAT in (0,1)");

void add_matrix_flags(CLI::App* cmd, SolveFlags& f) {
  auto* m = cmd->add_option("--matrix", f.matrix_file,
                            "Matrix Market file (array or coordinate, symmetric)");
  auto* d = cmd->add_option("--diag", f.diag_list,
                            "diagonal matrix entries, comma separated");
  auto* l = cmd->add_option("--laplacian", f.laplacian_n,
                            "dense tridiagonal (-1,2,-1) matrix of this size");
  m->excludes(d)->excludes(l);
  d->excludes(l);
}

void add_solver_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--l", f.ell, "block size (number of eigenpairs)")
      ->capture_default_str();
  cmd->add_option("--inner", f.inner, "inner solver: direct | richardson")
      ->check(CLI::IsMember({"direct", "richardson"}))
      ->capture_default_str();
  cmd->add_option("--theta", f.theta, "Richardson relaxation parameter")
      ->check(kThetaRange)
      ->capture_default_str();
  cmd->add_option("--inner-steps", f.inner_steps,
                  "Richardson applications per outer iteration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--shift", f.shift,
                  "shift strategy: rayleigh | fixed:VAL | optimal:LP1,LN")
      ->capture_default_str();
  cmd->add_option("--max-outer", f.max_outer, "outer iteration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--tol", f.tol, "residual stopping tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "seed for the random start block")
      ->capture_default_str();
}

sieig::MatrixSource matrix_source(const SolveFlags& f) {
  int given = 0;
  given += !f.matrix_file.empty();
  given += !f.diag_list.empty();
  given += f.laplacian_n > 0;
  if (given != 1)
    throw UsageError{
        "exactly one of --matrix, --diag, --laplacian must be given"};
  if (!f.matrix_file.empty())
    return sieig::MatrixSource::from_file(f.matrix_file);
  if (!f.diag_list.empty())
    return sieig::MatrixSource::diag(parse_double_list(f.diag_list, "--diag"));
  return sieig::MatrixSource::laplacian(f.laplacian_n);
}

sieig::ShiftStrategy parse_shift(const std::string& text) {
  if (text == "rayleigh") return sieig::ShiftStrategy::rayleigh();
  if (text.rfind("fixed:", 0) == 0) {
    const auto vals = parse_double_list(text.substr(6), "--shift fixed");
    if (vals.size() != 1) throw UsageError{"--shift fixed takes one value"};
    return sieig::ShiftStrategy::fixed(vals[0]);
  }
  if (text.rfind("optimal:", 0) == 0) {
    const auto vals = parse_double_list(text.substr(8), "--shift optimal");
    if (vals.size() != 2)
      throw UsageError{"--shift optimal takes lambda_ell_plus_1,lambda_n"};
    if (!(vals[0] <= vals[1]))
      throw UsageError{"--shift optimal needs lambda_ell_plus_1 <= lambda_n"};
    return sieig::ShiftStrategy::optimal_rate(vals[0], vals[1]);
  }
  throw UsageError{"--shift must be rayleigh, fixed:VAL or optimal:LP1,LN"};
}

sieig::SolverConfig solver_config(const SolveFlags& f) {
  sieig::SolverConfig c;
  c.ell = f.ell;
  c.inner = f.inner == "richardson" ? sieig::InnerSolver::kRichardson
                                    : sieig::InnerSolver::kDirect;
  c.theta = f.theta;
  c.inner_steps = f.inner_steps;
  c.shift = parse_shift(f.shift);
  c.max_outer = f.max_outer;
  c.tol = f.tol;
  c.seed = f.seed;
  return c;
}

void echo_solver_config(const std::string& sub, const sieig::MatrixSource& src,
                        const sieig::SolverConfig& c, const SolveFlags& f) {
  std::cout << "config: " << sub << " matrix=" << src.describe()
            << " l=" << c.ell << " inner="
            << (c.inner == sieig::InnerSolver::kRichardson ? "richardson"
                                                           : "direct")
            << " theta=" << sieig::format_shortest(c.theta)
            << " inner-steps=" << c.inner_steps
            << " shift=" << c.shift.describe() << " max-outer=" << c.max_outer
            << " tol=" << sieig::format_shortest(c.tol) << " seed=" << c.seed
            << " truth=" << (f.truth ? "on" : "off")
            << " trace=" << f.trace_csv << " plot=" << f.plot_svg << "\n";
}

int cmd_solve(const SolveFlags& f) {
  sieig::ExperimentSpec spec;
  spec.source = matrix_source(f);
  spec.config = solver_config(f);
  spec.compute_truth = f.truth;
  spec.trace_csv = f.trace_csv;
  spec.plot_svg = f.plot_svg;
  echo_solver_config("solve", spec.source, spec.config, f);

  const sieig::ExperimentResult result = sieig::run_experiment(spec, std::cout);
  const auto& block = result.report.final_block;
  if (block.columns[0].size() <= 16) {
    for (std::size_t i = 0; i < block.columns.size(); ++i) {
      std::cout << "x[" << i << "] = (";
      for (std::size_t r = 0; r < block.columns[i].size(); ++r) {
        if (r) std::cout << ", ";
        std::cout << compact(block.columns[i][r]);
      }
      std::cout << ")\n";
    }
  }
  if (!result.report.converged) {
    std::cout << "did not converge within " << spec.config.max_outer
              << " outer iterations (tol "
              << sieig::format_shortest(spec.config.tol) << ")\n";
    return kExitNumerical;
  }
  return kExitOk;
}

struct PredictFlags {
  double lambda_l = 0.0;
  double lambda_l1 = 0.0;
  double lambda_n = 0.0;
  double theta = 0.5;
};

int cmd_predict_rate(const PredictFlags& f) {
  std::cout << "config: predict-rate lambda-l=" << sieig::format_shortest(f.lambda_l)
            << " lambda-l1=" << sieig::format_shortest(f.lambda_l1)
            << " lambda-n=" << sieig::format_shortest(f.lambda_n)
            << " theta=" << sieig::format_shortest(f.theta) << "\n";
  if (!(f.lambda_l <= f.lambda_l1 && f.lambda_l1 <= f.lambda_n))
    throw UsageError{"eigenvalue flags must satisfy lambda-l <= lambda-l1 <= lambda-n"};
  const sieig::SpectrumSummary summary{f.lambda_l, f.lambda_l1, f.lambda_n};
  const double tau = sieig::optimal_shift(summary, f.theta);
  const double rate = sieig::closed_form_rate(summary);
  char rate_buf[48];
  std::snprintf(rate_buf, sizeof(rate_buf), "%.6f", rate);
  std::cout << "tau = " << compact(tau) << "\n";
  std::cout << "rate = " << rate_buf << "\n";
  return kExitOk;
}

int cmd_reproduce_paper(const std::string& out_dir) {
  std::cout << "config: reproduce-paper out-dir=" << out_dir << "\n";
  sieig::run_paper_reproduction(out_dir, std::cout);
  std::cout << "wrote " << (std::filesystem::path(out_dir) / "paper_trace.csv").string()
            << " and " << (std::filesystem::path(out_dir) / "paper_fig1.svg").string()
            << "\n";
  return kExitOk;
}

struct SweepFlags {
  std::string gaps;
  double lambda_l = 0.0;
  double lambda_n = 0.0;
  std::string out_dir = ".";
  SolveFlags solver;
};

int cmd_sweep(const SweepFlags& f) {
  const std::vector<double> gaps = parse_double_list(f.gaps, "--gaps");
  for (double g : gaps)
    if (!(g > 0.0)) throw UsageError{"--gaps values must be positive"};
  sieig::SolverConfig config = solver_config(f.solver);
  std::cout << "config: sweep gaps=" << f.gaps
            << " lambda-l=" << sieig::format_shortest(f.lambda_l)
            << " lambda-n=" << sieig::format_shortest(f.lambda_n)
            << " theta=" << sieig::format_shortest(config.theta)
            << " inner-steps=" << config.inner_steps
            << " max-outer=" << config.max_outer
            << " tol=" << sieig::format_shortest(config.tol)
            << " seed=" << config.seed << " out-dir=" << f.out_dir << "\n";
  const sieig::SpectrumSummary base{f.lambda_l, f.lambda_l, f.lambda_n};
  const std::filesystem::path dir(f.out_dir);
  sieig::run_gap_sweep(gaps, base, config, dir / "gap_sweep.csv",
                       dir / "gap_sweep.svg", std::cout);
  std::cout << "wrote " << (dir / "gap_sweep.csv").string() << " and "
            << (dir / "gap_sweep.svg").string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"block shift-inverse symmetric eigensolver with Richardson "
               "inner iteration and gap-based rate analysis"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "run the eigensolver on a matrix");
  add_matrix_flags(solve_cmd, solve_flags);
  add_solver_flags(solve_cmd, solve_flags);
  solve_cmd->add_option("--trace", solve_flags.trace_csv,
                        "write per-iteration trace CSV here");
  solve_cmd->add_option("--plot", solve_flags.plot_svg,
                        "write error/residual SVG chart here");
  solve_cmd->add_flag("--truth", solve_flags.truth,
                      "compute the exact decomposition for diagnostics");

  PredictFlags predict_flags;
  CLI::App* predict_cmd = app.add_subcommand(
      "predict-rate", "closed-form optimal shift and contraction rate");
  predict_cmd->add_option("--lambda-l", predict_flags.lambda_l,
                          "largest desired eigenvalue")->required();
  predict_cmd->add_option("--lambda-l1", predict_flags.lambda_l1,
                          "smallest undesired eigenvalue")->required();
  predict_cmd->add_option("--lambda-n", predict_flags.lambda_n,
                          "largest eigenvalue")->required();
  predict_cmd->add_option("--theta", predict_flags.theta,
                          "Richardson relaxation parameter")
      ->check(kThetaRange)
      ->required();

  std::string repro_out_dir = ".";
  CLI::App* repro_cmd = app.add_subcommand(
      "reproduce-paper",
      "run the built-in reference experiment (diag(1,2,2.01,4), theta 0.5)");
  repro_cmd->add_option("--out-dir", repro_out_dir, "output directory")
      ->capture_default_str();

  SweepFlags sweep_flags;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "predicted vs measured contraction rate over a list of gaps");
  sweep_cmd->add_option("--gaps", sweep_flags.gaps,
                        "comma-separated positive gaps")->required();
  sweep_cmd->add_option("--lambda-l", sweep_flags.lambda_l,
                        "largest desired eigenvalue")->required();
  sweep_cmd->add_option("--lambda-n", sweep_flags.lambda_n,
                        "largest eigenvalue")->required();
  sweep_cmd->add_option("--out-dir", sweep_flags.out_dir, "output directory")
      ->capture_default_str();
  sweep_flags.solver.max_outer = 500;
  add_solver_flags(sweep_cmd, sweep_flags.solver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve_flags);
    if (predict_cmd->parsed()) return cmd_predict_rate(predict_flags);
    if (repro_cmd->parsed()) return cmd_reproduce_paper(repro_out_dir);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_flags);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.message << "\n";
    return kExitUsage;
  } catch (const sieig::InvalidInputError& e) {
    // invalid argument combinations detected past flag parsing
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sieig::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const sieig::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
