#pragma once

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "entstruct/errors.hpp"

namespace entstruct {

// 17 significant digits: enough for a double to round-trip bit-exactly.
inline std::string format_double17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline double parse_double_strict(std::string_view s, const char* what) {
  if (s.empty()) throw ParseError(what, 0, "empty numeric field");
  std::string tmp(s);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  // ERANGE with a subnormal result is a legitimate underflow, not a parse
  // failure; only overflow to +-HUGE_VAL is rejected
  const bool overflow = errno == ERANGE && (v == HUGE_VAL || v == -HUGE_VAL);
  if (end != tmp.c_str() + tmp.size() || overflow)
    throw ParseError(what, 0, "bad numeric field '" + tmp + "'");
  return v;
}

inline long long parse_int_strict(std::string_view s, const char* what) {
  if (s.empty()) throw ParseError(what, 0, "empty integer field");
  std::string tmp(s);
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(tmp.c_str(), &end, 10);
  if (end != tmp.c_str() + tmp.size() || errno == ERANGE)
    throw ParseError(what, 0, "bad integer field '" + tmp + "'");
  return v;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace entstruct
