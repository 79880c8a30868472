#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace foveal::text {

/// Splits on commas; surrounding whitespace is trimmed from every field.
std::vector<std::string> split_csv(std::string_view line, char sep = ',');

std::string_view trim(std::string_view s);

/// Strict parsers: the whole field must be consumed. Throw ValidationError.
int parse_int(std::string_view s);
double parse_double(std::string_view s);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

/// Fixed-precision formatting for human-readable reports.
std::string format_fixed(double v, int digits);

/// Reads a whole file as lines. Throws IoError.
std::vector<std::string> read_lines(const std::filesystem::path& path);

/// Writes `contents` to `path`, replacing it. Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace foveal::text
