#include "aoa/analytics.hpp"

#include <cmath>

#include "aoa/common.hpp"

namespace aoa {

namespace {

// Occupancy pmfs are materialised up to this capacity.
constexpr std::int64_t kMaxPmfCapacity = std::int64_t{1} << 20;

// Mass at the bottom state of a truncated geometric birth-death chain on
// {0..m} with up/down ratio r = 1 + d: (1 - r) / (1 - r^(m+1)), written to
// stay accurate near r = 1 and for r = 0.
double bottom_mass(double d, std::int64_t m) {
  if (d == 0.0) return 1.0 / static_cast<double>(m + 1);
  const double denom =
      std::expm1(static_cast<double>(m + 1) * std::log1p(d));
  if (std::isinf(denom)) return 0.0;
  return d / denom;
}

bool is_frozen(const OutcomeDistribution& out) {
  return out.p_nde <= 0.0 && out.p_dne <= 0.0;
}

}  // namespace

BatterySpec BatterySpec::finite(std::int64_t capacity) {
  require(capacity >= 1, "finite battery capacity must be >= 1");
  BatterySpec spec;
  spec.capacity_ = capacity;
  return spec;
}

Regime regime(const OutcomeDistribution& out) {
  return out.p_nde >= out.p_dne ? Regime::EnergyUnlimited
                                : Regime::EnergyLimited;
}

BatterySteadyState battery_steady_state(const OutcomeDistribution& out,
                                        const BatterySpec& spec) {
  BatterySteadyState ss;
  ss.regime = regime(out);
  const double up = out.p_nde;
  const double down = out.p_dne;

  if (is_frozen(out)) {
    ss.frozen = true;
    ss.p_empty = 1.0;
    ss.p_nonempty = 0.0;
    if (spec.is_finite() && spec.capacity() <= kMaxPmfCapacity) {
      ss.pmf.assign(static_cast<std::size_t>(spec.capacity() + 1), 0.0);
      ss.pmf[0] = 1.0;
    }
    return ss;
  }

  if (!spec.is_finite()) {
    if (ss.regime == Regime::EnergyUnlimited) {
      ss.p_empty = 0.0;
    } else {
      ss.p_empty = (down - up) / down;
    }
    ss.p_nonempty = 1.0 - ss.p_empty;
    return ss;
  }

  const std::int64_t m = spec.capacity();
  ss.p_empty = down > 0.0 ? bottom_mass((up - down) / down, m) : 0.0;
  ss.p_nonempty = 1.0 - ss.p_empty;

  if (m <= kMaxPmfCapacity) {
    ss.pmf.assign(static_cast<std::size_t>(m + 1), 0.0);
    if (up <= down) {
      const double r = up / down;
      double mass = ss.p_empty;
      for (auto& p : ss.pmf) {
        p = mass;
        mass *= r;
      }
    } else {
      // Mirror image: geometric from the top with ratio down / up.
      const double s = down / up;
      double mass = bottom_mass((down - up) / up, m);
      for (std::int64_t k = m; k >= 0; --k) {
        ss.pmf[static_cast<std::size_t>(k)] = mass;
        mass *= s;
      }
    }
    ss.pmf[0] = ss.p_empty;
  }
  return ss;
}

double actuation_rate(const OutcomeDistribution& out, const BatterySpec& spec) {
  if (!spec.is_finite() && !is_frozen(out)) {
    if (regime(out) == Regime::EnergyUnlimited) return out.p_d;
    const double r = out.p_nde / out.p_dne;
    return out.p_d * r + out.p_de * (1.0 - r);
  }
  const BatterySteadyState ss = battery_steady_state(out, spec);
  return out.p_d * ss.p_nonempty + out.p_de * ss.p_empty;
}

double avg_aoi(const OutcomeDistribution& out) {
  return reciprocal_or_inf(out.p_d);
}

double avg_aoa(const OutcomeDistribution& out, const BatterySpec& spec) {
  // Without an energy bottleneck every data reception actuates.
  if (!spec.is_finite() && regime(out) == Regime::EnergyUnlimited) {
    return avg_aoi(out);
  }
  return reciprocal_or_inf(actuation_rate(out, spec));
}

AgeMetrics age_metrics(const OutcomeDistribution& out,
                       const BatterySpec& spec) {
  return AgeMetrics{.avg_aoi = avg_aoi(out), .avg_aoa = avg_aoa(out, spec)};
}

double age_pmf(double reset_prob, std::int64_t k) {
  require(is_probability(reset_prob), "reset probability must lie in [0, 1]");
  require(k >= 1, "age must be >= 1");
  if (reset_prob == 0.0) {
    throw Error(ErrorCode::NoResets, "age never resets (reset probability 0)");
  }
  if (k == 1) return reset_prob;
  if (reset_prob == 1.0) return 0.0;
  return reset_prob *
         std::exp(static_cast<double>(k - 1) * std::log1p(-reset_prob));
}

}  // namespace aoa
