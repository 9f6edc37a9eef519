#include "sweep/text.hpp"

#include "sweep/errors.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace sweep {

std::string format_number(double value) {
  if (std::isinf(value))
    return value > 0 ? "inf" : "-inf";
  if (std::isnan(value))
    return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc())
    throw FormatError("cannot format number");
  return std::string(buf, end);
}

double parse_number(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "+inf")
    return std::numeric_limits<double>::infinity();
  if (text == "-inf")
    return -std::numeric_limits<double>::infinity();
  if (!text.empty() && text.front() == '+')
    text.remove_prefix(1);
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value, std::chars_format::general);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size() ||
      !std::isfinite(value))
    throw FormatError("invalid number '" + std::string(text) + "'");
  return value;
}

std::string_view trim(std::string_view text) {
  const char *ws = " \t\r\n";
  auto first = text.find_first_not_of(ws);
  if (first == std::string_view::npos)
    return {};
  auto last = text.find_last_not_of(ws);
  return text.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.push_back(trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  std::size_t i = 0;
  auto is_sep = [](char c) {
    return c == ' ' || c == '\t' || c == ',' || c == '\r' || c == '\n';
  };
  while (i < text.size()) {
    while (i < text.size() && is_sep(text[i]))
      ++i;
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j]))
      ++j;
    if (j > i)
      out.push_back(parse_number(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

} // namespace sweep
