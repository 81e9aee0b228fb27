#include "aoa/channel.hpp"

#include <algorithm>
#include <cmath>

#include "aoa/common.hpp"

namespace aoa {

namespace {

constexpr double kEqualMeanTolerance = 1e-9;

// a * exp(-c / a), extended by continuity to a = 0.
double weighted_tail(double a, double c) {
  return a > 0.0 ? a * std::exp(-c / a) : 0.0;
}

}  // namespace

void LinkParams::validate() const {
  require(tx_power > 0.0, "tx_power must be > 0");
  require(distance > 0.0, "distance must be > 0");
  require(pathloss_exp > 0.0, "pathloss_exp must be > 0");
  require(fading_mean > 0.0, "fading_mean must be > 0");
}

void ChannelConfig::validate() const {
  link1.validate();
  link2.validate();
  require(noise_power >= 0.0, "noise_power must be >= 0");
  require(sinr_threshold > 0.0, "sinr_threshold must be > 0");
  require(energy_threshold > 0.0, "energy_threshold must be > 0");
  require(power_split >= 0.0 && power_split <= 1.0,
          "power_split must lie in [0, 1]");
}

void SuccessProbs::validate() const {
  require(is_probability(p_d1) && is_probability(p_d12) &&
              is_probability(p_e2) && is_probability(p_e12),
          "success probabilities must lie in [0, 1]");
  require(p_d12 <= p_d1, "p_d12 must not exceed p_d1");
}

double link_gain(const LinkParams& link) {
  link.validate();
  return link.tx_power * std::pow(link.distance, -link.pathloss_exp);
}

ResolvedChannel resolve(const ChannelConfig& cfg) {
  cfg.validate();
  return ResolvedChannel{
      .mean_rx1 = link_gain(cfg.link1) * cfg.link1.fading_mean,
      .mean_rx2 = link_gain(cfg.link2) * cfg.link2.fading_mean,
      .noise_power = cfg.noise_power,
      .sinr_threshold = cfg.sinr_threshold,
      .energy_threshold = cfg.energy_threshold,
      .power_split = cfg.power_split,
  };
}

double p_data_solo(const ResolvedChannel& ch) {
  if (ch.mean_rx1 <= 0.0) return 0.0;
  return std::exp(-ch.sinr_threshold * ch.noise_power / ch.mean_rx1);
}

double p_data_joint(const ResolvedChannel& ch) {
  if (ch.mean_rx1 <= 0.0) return 0.0;
  const double decoder_share = 1.0 - ch.power_split * ch.power_split;
  const double noise_term = ch.sinr_threshold * ch.noise_power;
  double noise_factor = 1.0;
  if (noise_term > 0.0) {
    // All received power diverted to harvesting: the effective noise diverges.
    if (decoder_share <= 0.0) return 0.0;
    noise_factor = std::exp(-noise_term / (decoder_share * ch.mean_rx1));
  }
  return noise_factor /
         (1.0 + ch.sinr_threshold * ch.mean_rx2 / ch.mean_rx1);
}

double p_energy_solo(const ResolvedChannel& ch) {
  if (ch.mean_rx2 <= 0.0) return ch.energy_threshold > 0.0 ? 0.0 : 1.0;
  return std::exp(-ch.energy_threshold / ch.mean_rx2);
}

double exponential_sum_tail(double a, double b, double c) {
  if (c <= 0.0) return 1.0;
  if (std::isinf(c)) return 0.0;
  const double larger = std::max(a, b);
  if (larger <= 0.0) return 0.0;
  if (std::abs(a - b) / larger < kEqualMeanTolerance) {
    const double mean = 0.5 * (a + b);
    return std::exp(-c / mean) * (1.0 + c / mean);
  }
  const double p = (weighted_tail(a, c) - weighted_tail(b, c)) / (a - b);
  return std::clamp(p, 0.0, 1.0);
}

double p_energy_joint(const ResolvedChannel& ch) {
  const double harvest_share = ch.power_split * ch.power_split;
  if (harvest_share <= 0.0) return ch.energy_threshold > 0.0 ? 0.0 : 1.0;
  return exponential_sum_tail(ch.mean_rx1, ch.mean_rx2,
                              ch.energy_threshold / harvest_share);
}

double p_data_solo(const ChannelConfig& cfg) { return p_data_solo(resolve(cfg)); }
double p_data_joint(const ChannelConfig& cfg) { return p_data_joint(resolve(cfg)); }
double p_energy_solo(const ChannelConfig& cfg) { return p_energy_solo(resolve(cfg)); }
double p_energy_joint(const ChannelConfig& cfg) { return p_energy_joint(resolve(cfg)); }

SuccessProbs success_probs(const ResolvedChannel& ch) {
  return SuccessProbs{
      .p_d1 = p_data_solo(ch),
      .p_d12 = p_data_joint(ch),
      .p_e2 = p_energy_solo(ch),
      .p_e12 = p_energy_joint(ch),
  };
}

SuccessProbs success_probs(const ChannelConfig& cfg) {
  return success_probs(resolve(cfg));
}

OutcomeDistribution outcome_distribution(const SuccessProbs& sp, double q1,
                                         double q2) {
  sp.validate();
  require(is_probability(q1) && is_probability(q2),
          "transmission probabilities must lie in [0, 1]");
  const double both = q1 * q2;
  const double only1 = q1 * (1.0 - q2);
  const double only2 = (1.0 - q1) * q2;
  const double idle = (1.0 - q1) * (1.0 - q2);

  OutcomeDistribution out;
  out.p_de = both * sp.p_d12 * sp.p_e12;
  out.p_dne = both * sp.p_d12 * (1.0 - sp.p_e12) + only1 * sp.p_d1;
  out.p_nde = both * (1.0 - sp.p_d12) * sp.p_e12 + only2 * sp.p_e2;
  out.p_ndne = idle + only1 * (1.0 - sp.p_d1) + only2 * (1.0 - sp.p_e2) +
               both * (1.0 - sp.p_d12) * (1.0 - sp.p_e12);
  out.p_d = out.p_de + out.p_dne;
  out.p_e = out.p_de + out.p_nde;
  return out;
}

}  // namespace aoa
