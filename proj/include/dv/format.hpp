#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace dv {

/// Scientific notation with 17 significant digits and a bare exponent,
/// e.g. 3.6787944117144233e-1 or 0.0000000000000000e0. Parsing the text with
/// strtod recovers the same double, and reprinting yields the same bytes.
inline std::string format_sci17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  std::string s(buf);
  const auto e = s.find('e');
  const std::string mantissa = s.substr(0, e);
  const int exponent = std::atoi(s.c_str() + e + 1);
  return mantissa + "e" + std::to_string(exponent);
}

}  // namespace dv
