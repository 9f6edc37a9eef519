#pragma once

/// @file
/// Locale-independent number formatting and parsing shared by the CSV and
/// config readers and writers.

#include <string>
#include <string_view>
#include <vector>

namespace sweep {

/// Shortest decimal representation that round-trips to the same double.
std::string format_number(double value);

/// Strict decimal parse (exponent notation allowed, "inf"/"-inf" accepted).
/// Throws FormatError on trailing garbage or empty input.
double parse_number(std::string_view text);

std::string_view trim(std::string_view text);

/// Split on `sep`, trimming every field.
std::vector<std::string_view> split(std::string_view text, char sep);

/// Split on runs of whitespace and/or commas.
std::vector<double> parse_numbers(std::string_view text);

} // namespace sweep
