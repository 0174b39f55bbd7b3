#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sieig {

/// One diagnostic row per (outer iteration, block column). inner_step is the
/// cumulative count of inner applications completed when the row was
/// recorded, so with one Richardson step per outer iteration it equals
/// outer_iter. abs_err and component_ratio stay empty without ground truth.
struct TraceRecord {
  int outer_iter = 0;
  long long inner_step = 0;
  std::size_t block_index = 0;
  double ritz_value = 0.0;
  std::optional<double> abs_err;
  std::optional<double> component_ratio;
  double tau = 0.0;
  double residual = 0.0;
};

std::string trace_csv_string(const std::vector<TraceRecord>& records);
void write_trace_csv(const std::filesystem::path& path,
                     const std::vector<TraceRecord>& records);
std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path);

}  // namespace sieig
