#include "aoa/common.hpp"

#include <cstdio>
#include <cstdlib>

namespace aoa {

double round_significant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

double round_half_up(double value, int decimals) {
  if (!std::isfinite(value)) return value;
  const double scale = std::pow(10.0, decimals);
  // Nudge by a few ulps so values printed as x.xx5 round up.
  return std::floor(value * scale + 0.5 + 1e-9) / scale;
}

}  // namespace aoa
