#pragma once

// Link budgets and Rayleigh-fading success probabilities for the two
// transmitters, and the per-slot joint data/energy outcome distribution.

namespace aoa {

struct LinkParams {
  double tx_power = 0.0;      // W
  double distance = 0.0;      // m
  double pathloss_exp = 0.0;  // alpha_j
  double fading_mean = 1.0;   // mean of the exponential power gain

  void validate() const;
};

struct ChannelConfig {
  LinkParams link1;  // data transmitter
  LinkParams link2;  // power transmitter
  double noise_power = 0.0;       // W
  double sinr_threshold = 0.0;    // linear
  double energy_threshold = 0.0;  // linear, same units as harvested energy
  double power_split = 0.0;       // rho; rho^2 of the received power goes to harvesting

  void validate() const;
};

// The channel reduced to mean received powers g_j * upsilon_j. Every closed
// form below depends on the links only through these two numbers. Unlike
// ChannelConfig this admits zero gains and zero thresholds, which the fading
// oracle uses for limit cases.
struct ResolvedChannel {
  double mean_rx1 = 0.0;
  double mean_rx2 = 0.0;
  double noise_power = 0.0;
  double sinr_threshold = 0.0;
  double energy_threshold = 0.0;
  double power_split = 0.0;
};

struct SuccessProbs {
  double p_d1 = 0.0;   // data, transmitter 1 alone
  double p_d12 = 0.0;  // data, both active
  double p_e2 = 0.0;   // energy, transmitter 2 alone
  double p_e12 = 0.0;  // energy, both active

  void validate() const;
};

// Joint per-slot outcome of the data event D and the energy event E.
struct OutcomeDistribution {
  double p_de = 0.0;    // (D, E)
  double p_dne = 0.0;   // (D, not E)
  double p_nde = 0.0;   // (not D, E)
  double p_ndne = 0.0;  // (not D, not E)
  double p_d = 0.0;     // marginal of D
  double p_e = 0.0;     // marginal of E
};

double link_gain(const LinkParams& link);
ResolvedChannel resolve(const ChannelConfig& cfg);

double p_data_solo(const ChannelConfig& cfg);
double p_data_joint(const ChannelConfig& cfg);
double p_energy_solo(const ChannelConfig& cfg);
double p_energy_joint(const ChannelConfig& cfg);

double p_data_solo(const ResolvedChannel& ch);
double p_data_joint(const ResolvedChannel& ch);
double p_energy_solo(const ResolvedChannel& ch);
double p_energy_joint(const ResolvedChannel& ch);

// P(X_a + X_b >= c) for independent exponentials with means a and b.
// Switches to the Erlang-2 limit when a and b agree to a relative 1e-9.
double exponential_sum_tail(double a, double b, double c);

SuccessProbs success_probs(const ChannelConfig& cfg);
SuccessProbs success_probs(const ResolvedChannel& ch);

OutcomeDistribution outcome_distribution(const SuccessProbs& sp, double q1,
                                         double q2);

}  // namespace aoa
