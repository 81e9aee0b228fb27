#include "aoa/units.hpp"

#include <cmath>

namespace aoa::units {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double Power::watts() const {
  return unit == PowerUnit::DBm ? dbm_to_watts(value) : value;
}

double Ratio::linear() const {
  return unit == RatioUnit::DB ? db_to_linear(value) : value;
}

std::optional<PowerUnit> parse_power_unit(std::string_view tag) {
  if (tag == "W") return PowerUnit::Watt;
  if (tag == "dBm") return PowerUnit::DBm;
  return std::nullopt;
}

std::optional<RatioUnit> parse_ratio_unit(std::string_view tag) {
  if (tag == "linear") return RatioUnit::Linear;
  if (tag == "dB") return RatioUnit::DB;
  return std::nullopt;
}

}  // namespace aoa::units
