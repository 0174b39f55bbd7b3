#pragma once

#include <filesystem>
#include <string>

namespace sieig {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_shortest(double value);

/// Writes content to a sibling temp file and renames it onto path, so a
/// failure never leaves a partial file behind. Throws IoError.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

/// Reads a whole file. Throws IoError.
std::string read_text(const std::filesystem::path& path);

}  // namespace sieig
