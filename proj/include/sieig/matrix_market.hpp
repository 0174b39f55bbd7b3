#pragma once

#include <filesystem>

#include "sieig/linalg.hpp"

namespace sieig {

/// Reads a symmetric Matrix Market file. Accepted headers:
///   %%MatrixMarket matrix array real symmetric      (column-major lower triangle)
///   %%MatrixMarket matrix coordinate real symmetric (1-based entries, either triangle)
DenseSymMatrix read_matrix_market(const std::filesystem::path& path);

/// Writes array/symmetric format with 17 significant digits.
void write_matrix_market(const std::filesystem::path& path,
                         const DenseSymMatrix& A);

}  // namespace sieig
