#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace aoa {

enum class ErrorCode {
  InvalidArgument,
  Schema,
  Infeasible,
  NoResets,
  InsufficientActuations,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Ages are extended nonnegative reals: a finite double or +inf, never NaN.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline double reciprocal_or_inf(double rate) {
  return rate > 0.0 ? 1.0 / rate : kInfinity;
}

inline bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

inline void require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorCode::InvalidArgument, message);
}

// Rounds to the given number of significant digits through the decimal
// representation, so the result prints back identically.
double round_significant(double value, int digits);

// Half-up rounding to a fixed number of decimals (display only).
double round_half_up(double value, int decimals);

}  // namespace aoa
