#pragma once

// Small shared helpers for the key=value and CSV readers.

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "stmd/errors.hpp"

namespace stmd::detail {

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

template <typename Error = InvalidParameter>
double parse_double(std::string_view s, const char* what) {
  const std::string_view t = trim(s);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size()) {
    throw Error(std::string("cannot parse number for ") + what + ": '" +
                std::string(s) + "'");
  }
  return v;
}

template <typename Error = InvalidParameter>
long long parse_int(std::string_view s, const char* what) {
  const std::string_view t = trim(s);
  long long v = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size()) {
    throw Error(std::string("cannot parse integer for ") + what + ": '" +
                std::string(s) + "'");
  }
  return v;
}

}  // namespace stmd::detail
