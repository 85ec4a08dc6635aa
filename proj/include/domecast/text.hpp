#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace domecast::text {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

// Whole-string parse; leading/trailing blanks are ignored.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_integer(std::string_view s);

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

// Splits one CSV line. Double-quoted fields may contain commas and "" escapes.
// Returns nullopt on an unterminated quote.
std::optional<std::vector<std::string>> split_csv_line(std::string_view line);

// Quotes a field only when it needs it.
std::string csv_field(std::string_view s);

// Writes `contents` to `path` through a temporary file and a rename.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace domecast::text
