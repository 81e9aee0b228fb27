#pragma once

// Shared scenarios and frozen reference values. The references were computed
// independently (double precision, straight from the model definitions) and
// are not produced by the library under test.

#include <cstdint>
#include <random>

#include "aoa/channel.hpp"

namespace fixtures {

inline aoa::ChannelConfig setup(double d2) {
  aoa::ChannelConfig cfg;
  cfg.link1 = {.tx_power = 0.01, .distance = 1.0, .pathloss_exp = 4.0, .fading_mean = 1.0};
  cfg.link2 = {.tx_power = 1.0, .distance = d2, .pathloss_exp = 4.0, .fading_mean = 1.0};
  cfg.noise_power = 1e-8;  // -50 dBm
  cfg.sinr_threshold = 0.1;
  cfg.energy_threshold = 0.1;
  cfg.power_split = 0.99;
  return cfg;
}

inline aoa::ChannelConfig setup1() { return setup(2.0); }
inline aoa::ChannelConfig setup2() { return setup(1.5); }

inline constexpr aoa::SuccessProbs kSetup1{
    .p_d1 = 0.9999999000000049,
    .p_d12 = 0.6153815230073832,
    .p_e2 = 0.20189651799465538,
    .p_e12 = 0.2326631844613264,
};
inline constexpr aoa::SuccessProbs kSetup2{
    .p_d1 = 0.9999999000000049,
    .p_d12 = 0.3360978961238457,
    .p_e2 = 0.6027516647500952,
    .p_e12 = 0.6283985597088773,
};

// Setup 1 at q1 = q2 = 1.
inline constexpr double kSetup1DE = 0.14317662480155877;
inline constexpr double kSetup1DNE = 0.47220489820582445;
inline constexpr double kSetup1NDE = 0.08948655965976761;
inline constexpr double kSetup1Pi0 = 0.8104920978164817;

// Random success-probability tuples with p_d12 <= p_d1.
inline aoa::SuccessProbs random_probs(std::mt19937_64& rng, double lo = 0.02) {
  std::uniform_real_distribution<double> u(lo, 1.0);
  aoa::SuccessProbs sp;
  sp.p_d1 = u(rng);
  sp.p_d12 = std::uniform_real_distribution<double>(0.0, sp.p_d1)(rng);
  sp.p_e2 = u(rng);
  sp.p_e12 = u(rng);
  return sp;
}

}  // namespace fixtures
