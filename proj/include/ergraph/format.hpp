#pragma once

#include <cstdio>
#include <string>

namespace ergraph {

/// All floating-point output uses 9 significant digits.
inline std::string fmt_g9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return std::string(buf);
}

}  // namespace ergraph
