#pragma once

// Brute-force cross-checks for the closed forms: fading-level Monte Carlo of
// the channel, a direct linear solve of the battery chain, and synthetic
// reset traces. None of these call into the closed-form code they check.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aoa/channel.hpp"
#include "aoa/scenario.hpp"

namespace aoa {

inline constexpr double kOracleZ = 3.0;

struct OracleReport {
  std::string quantity;
  double closed_form = 0.0;
  double oracle = 0.0;
  std::optional<double> standard_error;
  double abs_tol = 0.0;
  bool pass = false;
  std::string note;
};

// pass = |closed - oracle| <= max(abs_tol, 3 * standard_error)
OracleReport make_oracle_report(std::string quantity, double closed_form,
                                double oracle,
                                std::optional<double> standard_error,
                                double abs_tol, std::string note = {});

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
};

struct ChannelEstimates {
  Estimate p_d1;
  Estimate p_d12;
  Estimate p_e2;
  Estimate p_e12;
  std::int64_t samples = 0;
};

inline constexpr std::int64_t kMinChannelSamples = 10'000;

// Draws exponential power gains and counts threshold exceedances for the
// SINR and harvested-energy conditions of every transmitter combination.
ChannelEstimates mc_channel(const ChannelConfig& cfg, std::int64_t n_samples,
                            std::uint64_t seed);
ChannelEstimates mc_channel(const ResolvedChannel& ch, std::int64_t n_samples,
                            std::uint64_t seed);

struct StationarySolution {
  std::vector<double> pmf;  // over {0..m}
  double residual = 0.0;    // max |pi P - pi|
  bool frozen = false;      // no transitions: point mass at the empty start
};

// Builds the (m+1)-state battery transition matrix from the per-slot
// transition rules and solves pi P = pi, sum(pi) = 1 by LU decomposition.
StationarySolution stationary_solve(const OutcomeDistribution& out,
                                    std::int64_t capacity);

// Detailed-balance product form pi_k proportional to (up/down)^k, normalised
// by summation. A second route next to the linear solve.
std::vector<double> product_form_pmf(const OutcomeDistribution& out,
                                     std::int64_t capacity);

// i.i.d. Bernoulli(p) reset indicators.
std::vector<std::uint8_t> synthetic_geometric_trace(double p, std::int64_t n,
                                                    std::uint64_t seed);

struct ValidateOptions {
  std::int64_t mc_samples = 10'000'000;
  std::int64_t horizon = 1'000'000;
  std::int64_t warmup = 10'000;
  std::uint64_t seed = 1;
  // Relative bound on |simulated AoA - formula AoA|; exceedances are findings.
  double aoa_gap_tolerance = 0.10;
  // Capacity used to approximate the infinite battery in the linear solve.
  std::int64_t truncation = 2000;
};

// Runs every oracle against one scenario.
std::vector<OracleReport> validate_scenario(const Scenario& scenario,
                                            const ValidateOptions& opts);

}  // namespace aoa
