// Small file and formatting helpers shared by the report writers.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tailkit {

// Shortest decimal form that round-trips a 64-bit double ("%.17g" trimmed).
std::string fmt_double(double v);

void ensure_dir(const std::string& path);

// Write via a temp file in the same directory, then rename into place, so a
// crashed run never leaves a half-written report.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// Split a CSV line on commas; trailing '\r' is stripped. Our formats never
// quote fields.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace tailkit
