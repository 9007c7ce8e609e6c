#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace girthlab {

/// Shortest-round-trip-safe decimal text, identical on every platform with
/// IEEE doubles. Non-finite values print as `inf`, `-inf` or `nan`.
inline std::string format_number(double v, int digits = 17) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace girthlab
