#pragma once

#include <cstdio>
#include <string>

namespace lagsg {

// Round-trip decimal form used in every CSV and JSON record.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace lagsg
