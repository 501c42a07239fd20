#pragma once

#include <span>
#include <string>
#include <vector>

namespace tribody::cli {

/// %.17g, so every double round-trips and output is byte-stable.
std::string fmt(double v);

/// One CSV row of numbers, LF-terminated.
std::string csv_row(std::span<const double> values);

/// Writes content to dir/name through a temporary file in the same directory
/// and a rename. Creates dir if needed. Throws std::runtime_error on failure.
void write_atomic(const std::string& dir, const std::string& name, const std::string& content);

}  // namespace tribody::cli
