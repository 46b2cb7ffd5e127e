#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace slk {

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

/// Locale-independent strict parse (whole field must be consumed).
std::optional<double> parse_double(std::string_view text);

std::string trim(std::string_view s);

/// Splits one CSV line; double quotes group fields and "" escapes a quote.
std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_escape(std::string_view field);

std::string read_file(const std::string& path);
/// Writes through a temporary sibling then renames over `path`.
void write_file(const std::string& path, std::string_view content);

/// 64-bit FNV-1a, rendered as 16 lower-case hex digits by hex64.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

}  // namespace slk
