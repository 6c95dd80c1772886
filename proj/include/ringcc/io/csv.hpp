#pragma once

#include <cstdio>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ringcc::io {

/// Nine significant digits; integral values keep a trailing ".0" so every
/// float column reads as a float.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

/// Absent values become an empty field.
inline std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

inline void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << fields[i];
  }
  out << '\n';
}

inline void write_row(std::ostream& out, std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (const auto f : fields) {
    if (!first) out << ',';
    out << f;
    first = false;
  }
  out << '\n';
}

}  // namespace ringcc::io
