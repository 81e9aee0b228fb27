#pragma once

// Steady-state closed forms: battery occupancy, energy regime, average AoI
// and average AoA, and the geometric age pmf.

#include <cstdint>
#include <optional>
#include <vector>

#include "aoa/channel.hpp"

namespace aoa {

class BatterySpec {
 public:
  static BatterySpec infinite() { return BatterySpec{}; }
  static BatterySpec finite(std::int64_t capacity);

  bool is_finite() const { return capacity_.has_value(); }
  // Number of storable energy packets; only meaningful when finite.
  std::int64_t capacity() const { return capacity_.value_or(0); }

  friend bool operator==(const BatterySpec&, const BatterySpec&) = default;

 private:
  std::optional<std::int64_t> capacity_;
};

enum class Regime { EnergyLimited, EnergyUnlimited };

struct BatterySteadyState {
  double p_empty = 1.0;
  double p_nonempty = 0.0;
  std::vector<double> pmf;  // over {0..m}; empty for an infinite battery
  Regime regime = Regime::EnergyLimited;
  // No arrivals and no departures: the battery stays at its empty start.
  bool frozen = false;
};

struct AgeMetrics {
  double avg_aoi = 1.0;  // slots, may be +inf
  double avg_aoa = 1.0;  // slots, may be +inf
};

// EnergyUnlimited iff P(notD, E) >= P(D, notE). Compared directly, never as
// a ratio.
Regime regime(const OutcomeDistribution& out);

BatterySteadyState battery_steady_state(const OutcomeDistribution& out,
                                        const BatterySpec& spec);

// Per-slot actuation probability P_D * P(B > 0) + P_DE * P(B = 0).
double actuation_rate(const OutcomeDistribution& out, const BatterySpec& spec);

double avg_aoi(const OutcomeDistribution& out);
double avg_aoa(const OutcomeDistribution& out, const BatterySpec& spec);
AgeMetrics age_metrics(const OutcomeDistribution& out, const BatterySpec& spec);

// P(age = k) = p (1 - p)^(k - 1) for an age that resets to 1 with constant
// probability p each slot. Throws NoResets for p = 0.
double age_pmf(double reset_prob, std::int64_t k);

}  // namespace aoa
