/// Minimal CSV/text helpers shared by the parsers and writers. All output is
/// locale-independent and deterministic.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace starident::csv {

std::vector<std::string_view> split(std::string_view line, char sep = ',');

std::optional<double> parse_double(std::string_view s);
std::optional<std::int64_t> parse_int64(std::string_view s);

/// Fixed 6-decimal form used for epoch timestamps.
std::string format_timestamp(double seconds);
/// Shortest form with up to 9 significant digits (%.9g).
std::string format_value(double v);
/// Fixed-decimal form.
std::string format_fixed(double v, int decimals);

std::string_view strip(std::string_view s);

/// Reads a whole text file into lines (without trailing CR/LF). Throws
/// ParseError when the file cannot be opened.
std::vector<std::string> read_lines(const std::string& path);

}  // namespace starident::csv
