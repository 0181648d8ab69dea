#pragma once

#include <charconv>
#include <string>
#include <string_view>

#include "fairenc/error.hpp"

namespace fairenc {

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw Error(ErrorKind::kInvalidArgument, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace fairenc
