#pragma once

#include <optional>
#include <string_view>

namespace aoa::units {

enum class PowerUnit { Watt, DBm };
enum class RatioUnit { Linear, DB };

struct Power {
  double value = 0.0;
  PowerUnit unit = PowerUnit::Watt;

  double watts() const;
};

struct Ratio {
  double value = 0.0;
  RatioUnit unit = RatioUnit::Linear;

  double linear() const;
};

// P[W] = 10^((dBm - 30) / 10)
double dbm_to_watts(double dbm);
// 10^(dB / 10)
double db_to_linear(double db);

std::optional<PowerUnit> parse_power_unit(std::string_view tag);
std::optional<RatioUnit> parse_ratio_unit(std::string_view tag);

}  // namespace aoa::units
