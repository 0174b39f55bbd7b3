#include "sieig/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sieig/errors.hpp"
#include "sieig/text_io.hpp"

namespace sieig {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& why) {
  throw IoError(path.string(), path.string() + ": " + why);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Pulls the next non-comment, non-blank line.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t i = line.find_first_not_of(" \t");
    if (i == std::string::npos) continue;
    if (line[i] == '%') continue;
    return true;
  }
  return false;
}

}  // namespace

DenseSymMatrix read_matrix_market(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));

  std::string banner;
  if (!std::getline(in, banner)) fail(path, "empty file");
  if (!banner.empty() && banner.back() == '\r') banner.pop_back();
  std::istringstream bs(banner);
  std::string tag, object, format, field, symmetry;
  bs >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket") fail(path, "missing %%MatrixMarket banner");
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix" || field != "real" || symmetry != "symmetric" ||
      (format != "array" && format != "coordinate")) {
    fail(path, "unsupported header '" + banner +
                   "' (need matrix array|coordinate real symmetric)");
  }

  std::string line;
  if (!next_data_line(in, line)) fail(path, "missing size line");
  std::istringstream sz(line);

  if (format == "array") {
    std::size_t rows = 0, cols = 0;
    if (!(sz >> rows >> cols)) fail(path, "bad size line '" + line + "'");
    if (rows != cols) fail(path, "matrix must be square");
    if (rows == 0) fail(path, "dimension must be >= 1");
    const std::size_t n = rows;
    std::vector<double> entries(n * n, 0.0);
    // Column-major lower triangle, one value per line (whitespace tolerated).
    std::size_t count = 0;
    const std::size_t expected = n * (n + 1) / 2;
    std::size_t i = 0, j = 0;
    double v = 0.0;
    std::istringstream values;
    while (count < expected) {
      if (!(values >> v)) {
        if (!next_data_line(in, line)) fail(path, "too few values");
        values = std::istringstream(line);
        continue;
      }
      entries[i * n + j] = entries[j * n + i] = v;
      ++count;
      if (++i == n) {
        ++j;
        i = j;
      }
    }
    if (values >> v) fail(path, "trailing values after full lower triangle");
    if (next_data_line(in, line)) fail(path, "trailing data after full lower triangle");
    try {
      return DenseSymMatrix(n, std::move(entries));
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  // coordinate
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(sz >> rows >> cols >> nnz)) fail(path, "bad size line '" + line + "'");
  if (rows != cols) fail(path, "matrix must be square");
  if (rows == 0) fail(path, "dimension must be >= 1");
  const std::size_t n = rows;
  std::vector<double> entries(n * n, 0.0);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < nnz; ++k) {
    if (!next_data_line(in, line)) fail(path, "too few coordinate entries");
    std::istringstream es(line);
    std::size_t i = 0, j = 0;
    double v = 0.0;
    if (!(es >> i >> j >> v)) fail(path, "bad coordinate entry '" + line + "'");
    if (i < 1 || i > n || j < 1 || j > n)
      fail(path, "coordinate entry out of range: '" + line + "'");
    const std::pair<std::size_t, std::size_t> key{std::min(i, j), std::max(i, j)};
    if (!seen.insert(key).second)
      fail(path, "duplicate coordinate entry: '" + line + "'");
    entries[(i - 1) * n + (j - 1)] = entries[(j - 1) * n + (i - 1)] = v;
  }
  if (next_data_line(in, line)) fail(path, "trailing data after nnz entries");
  try {
    return DenseSymMatrix(n, std::move(entries));
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

void write_matrix_market(const std::filesystem::path& path,
                         const DenseSymMatrix& A) {
  const std::size_t n = A.size();
  std::ostringstream os;
  os << "%%MatrixMarket matrix array real symmetric\n";
  os << n << " " << n << "\n";
  char buf[64];
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) {
      std::snprintf(buf, sizeof(buf), "%.16e", A(i, j));
      os << buf << "\n";
    }
  }
  write_text_atomic(path, os.str());
}

}  // namespace sieig
