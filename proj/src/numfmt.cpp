#include "statbench/numfmt.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace statbench {

std::string format_number(double value) {
  if (std::isnan(value)) return "NaN";
  if (std::isinf(value)) return value > 0 ? "Inf" : "-Inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_display(double value, int digits) {
  if (std::isnan(value)) return "NaN";
  if (std::isinf(value)) return value > 0 ? "Inf" : "-Inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

std::optional<double> parse_number(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t start = 0;
  if (text[0] == '+') {
    start = 1;
    if (text.size() == 1 || text[1] == '-' || text[1] == '+') return std::nullopt;
  }
  // from_chars also accepts "inf"/"nan"; only plain decimals count here.
  for (std::size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    bool ok = (c >= '0' && c <= '9') || c == '.' || c == 'e' || c == 'E' || c == '-' || c == '+';
    if (!ok) return std::nullopt;
  }
  double value = 0;
  auto first = text.data() + start;
  auto last = text.data() + text.size();
  auto res = std::from_chars(first, last, value, std::chars_format::general);
  if (res.ptr != last) return std::nullopt;
  if (res.ec == std::errc::result_out_of_range) {
    // Overflow becomes +-inf and underflow a (sub)normal; both still "parse".
    std::string copy(first, last);
    return std::strtod(copy.c_str(), nullptr);
  }
  if (res.ec != std::errc()) return std::nullopt;
  return value;
}

}  // namespace statbench
