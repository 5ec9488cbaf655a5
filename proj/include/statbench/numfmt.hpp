#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace statbench {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

/// Human-oriented rendering with a fixed number of significant digits.
std::string format_display(double value, int digits = 7);

/// Parses a complete decimal literal (sign, fraction, exponent). No surrounding spaces.
std::optional<double> parse_number(std::string_view text);

}  // namespace statbench
