#pragma once

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace gppopf {

// Hex-float encoding for lossless double round-trips through JSON text.
inline std::string double_to_hex(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", v);
  return std::string(buf);
}

inline double hex_to_double(const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw std::invalid_argument("bad hex-float: " + s);
  return v;
}

// Shortest-exact decimal for CSV / report output.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

}  // namespace gppopf
