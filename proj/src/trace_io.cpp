#include "sieig/trace_io.hpp"

#include <charconv>
#include <sstream>

#include "sieig/errors.hpp"
#include "sieig/text_io.hpp"

namespace sieig {

namespace {

const char kHeader[] =
    "outer_iter,inner_step,i,ritz_value,abs_err,component_ratio,tau,residual";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_double(const std::string& field, const std::string& path) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw IoError(path, path + ": bad numeric field '" + field + "'");
  return v;
}

long long parse_int(const std::string& field, const std::string& path) {
  long long v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw IoError(path, path + ": bad integer field '" + field + "'");
  return v;
}

}  // namespace

std::string trace_csv_string(const std::vector<TraceRecord>& records) {
  std::string out(kHeader);
  out.push_back('\n');
  for (const auto& r : records) {
    out += std::to_string(r.outer_iter);
    out.push_back(',');
    out += std::to_string(r.inner_step);
    out.push_back(',');
    out += std::to_string(r.block_index);
    out.push_back(',');
    out += format_shortest(r.ritz_value);
    out.push_back(',');
    if (r.abs_err) out += format_shortest(*r.abs_err);
    out.push_back(',');
    if (r.component_ratio) out += format_shortest(*r.component_ratio);
    out.push_back(',');
    out += format_shortest(r.tau);
    out.push_back(',');
    out += format_shortest(r.residual);
    out.push_back('\n');
  }
  return out;
}

void write_trace_csv(const std::filesystem::path& path,
                     const std::vector<TraceRecord>& records) {
  write_text_atomic(path, trace_csv_string(records));
}

std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  std::istringstream in(text);
  const std::string p = path.string();
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw IoError(p, p + ": missing or unexpected trace CSV header");
  std::vector<TraceRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 8)
      throw IoError(p, p + ": expected 8 fields, got " +
                           std::to_string(fields.size()));
    TraceRecord r;
    r.outer_iter = static_cast<int>(parse_int(fields[0], p));
    r.inner_step = parse_int(fields[1], p);
    r.block_index = static_cast<std::size_t>(parse_int(fields[2], p));
    r.ritz_value = parse_double(fields[3], p);
    if (!fields[4].empty()) r.abs_err = parse_double(fields[4], p);
    if (!fields[5].empty()) r.component_ratio = parse_double(fields[5], p);
    r.tau = parse_double(fields[6], p);
    r.residual = parse_double(fields[7], p);
    out.push_back(r);
  }
  return out;
}

}  // namespace sieig
