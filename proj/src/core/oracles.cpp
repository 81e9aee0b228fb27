#include "aoa/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <Eigen/Dense>

#include "aoa/analytics.hpp"
#include "aoa/common.hpp"
#include "aoa/optimizer.hpp"
#include "aoa/random.hpp"
#include "aoa/simulator.hpp"

namespace aoa {

namespace {

Estimate binomial(std::int64_t hits, std::int64_t n) {
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

// Exceedance checks against the null hypothesis p = closed, so a p of
// exactly 0 or 1 still gets a usable spread.
OracleReport channel_report(const char* name, double closed,
                            const Estimate& est, std::int64_t n) {
  const double nd = static_cast<double>(n);
  const double se = std::sqrt(closed * (1.0 - closed) / nd);
  return make_oracle_report(name, closed, est.value, se, 1.0 / nd,
                            "fading-level Monte Carlo, " +
                                std::to_string(n) + " samples");
}

std::string percent(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f%%", 100.0 * x);
  return buf;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct GapRun {
  SimReport report;
  std::optional<CycleStats> cycles;
};

GapRun simulate_with_cycles(const Scenario& scn, const ValidateOptions& opts,
                            std::uint64_t stream) {
  SimConfig cfg;
  cfg.scenario = scn;
  cfg.horizon = opts.horizon;
  cfg.warmup = opts.warmup;
  cfg.seed = derive_seed(opts.seed, stream);
  cfg.trace = true;
  GapRun run;
  run.report = simulate(cfg);
  const std::span<const TraceRecord> counted(
      run.report.trace.begin() + opts.warmup, run.report.trace.end());
  try {
    run.cycles = estimate_cycle_stats(counted);
  } catch (const Error&) {
    run.cycles.reset();
  }
  run.report.trace.clear();
  run.report.trace.shrink_to_fit();
  return run;
}

OracleReport aoa_gap_report(const std::string& where, const Scenario& scn,
                            const GapRun& run, double tolerance) {
  const OutcomeDistribution out =
      outcome_distribution(success_probs(scn.channel), scn.q1, scn.q2);
  const double formula = avg_aoa(out, scn.battery);
  const double simulated = run.report.mean_aoa;
  std::string note = "at (q1, q2) = (" + num(scn.q1) + ", " + num(scn.q2) +
                     "): simulated time-average AoA " + num(simulated) +
                     ", constant-reset formula " + num(formula);
  if (std::isfinite(formula)) {
    const double gap = (simulated - formula) / formula;
    note += ", relative gap " + percent(gap);
    if (run.cycles) {
      note += ", renewal estimate from " + std::to_string(run.cycles->cycles) +
              " cycles " + num(run.cycles->implied_time_avg_age);
    }
    if (std::abs(gap) > tolerance) {
      note += "; exceeds the " + percent(tolerance) + " bound (finding)";
    }
  }
  return make_oracle_report("avg_aoa_gap " + where, formula, simulated,
                            std::nullopt,
                            std::isfinite(formula) ? tolerance * formula : 0.0,
                            std::move(note));
}

}  // namespace

OracleReport make_oracle_report(std::string quantity, double closed_form,
                                double oracle,
                                std::optional<double> standard_error,
                                double abs_tol, std::string note) {
  OracleReport rep;
  rep.quantity = std::move(quantity);
  rep.closed_form = closed_form;
  rep.oracle = oracle;
  rep.standard_error = standard_error;
  rep.abs_tol = abs_tol;
  rep.note = std::move(note);
  const double spread = std::max(abs_tol, kOracleZ * standard_error.value_or(0.0));
  if (std::isinf(closed_form) || std::isinf(oracle)) {
    rep.pass = closed_form == oracle;
  } else {
    rep.pass = std::abs(closed_form - oracle) <= spread;
  }
  return rep;
}

ChannelEstimates mc_channel(const ResolvedChannel& ch, std::int64_t n_samples,
                            std::uint64_t seed) {
  require(n_samples >= kMinChannelSamples, "mc_channel needs >= 1e4 samples");
  UniformStream rng(seed);
  const double decoder_share = 1.0 - ch.power_split * ch.power_split;
  const double harvest_share = ch.power_split * ch.power_split;
  const bool noise_blocks_decoder = decoder_share <= 0.0 && ch.noise_power > 0.0;
  const double effective_noise =
      ch.noise_power > 0.0 ? ch.noise_power / decoder_share : 0.0;

  std::int64_t d1 = 0, d12 = 0, e2 = 0, e12 = 0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const double rx1 = rng.exponential(ch.mean_rx1);
    const double rx2 = rng.exponential(ch.mean_rx2);
    // Transmitter 1 alone: the whole signal reaches the decoder.
    if (rx1 >= ch.sinr_threshold * ch.noise_power) ++d1;
    if (!noise_blocks_decoder &&
        rx1 >= ch.sinr_threshold * (rx2 + effective_noise)) {
      ++d12;
    }
    // Transmitter 2 alone: the whole signal reaches the harvester.
    if (rx2 >= ch.energy_threshold) ++e2;
    if (harvest_share * (rx1 + rx2) >= ch.energy_threshold) ++e12;
  }
  ChannelEstimates est;
  est.samples = n_samples;
  est.p_d1 = binomial(d1, n_samples);
  est.p_d12 = binomial(d12, n_samples);
  est.p_e2 = binomial(e2, n_samples);
  est.p_e12 = binomial(e12, n_samples);
  return est;
}

ChannelEstimates mc_channel(const ChannelConfig& cfg, std::int64_t n_samples,
                            std::uint64_t seed) {
  return mc_channel(resolve(cfg), n_samples, seed);
}

StationarySolution stationary_solve(const OutcomeDistribution& out,
                                    std::int64_t capacity) {
  require(capacity >= 1, "capacity must be >= 1");
  const auto n = static_cast<Eigen::Index>(capacity + 1);
  StationarySolution sol;
  if (out.p_nde <= 0.0 && out.p_dne <= 0.0) {
    sol.frozen = true;
    sol.pmf.assign(static_cast<std::size_t>(n), 0.0);
    sol.pmf[0] = 1.0;
    return sol;
  }

  const Eigen::Index m = n - 1;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  // Empty battery: only an energy packet without data is kept.
  P(0, 0) = out.p_de + out.p_dne + out.p_ndne;
  P(0, 1) = out.p_nde;
  for (Eigen::Index k = 1; k < m; ++k) {
    P(k, k - 1) = out.p_dne;
    P(k, k) = out.p_de + out.p_ndne;
    P(k, k + 1) = out.p_nde;
  }
  // Full battery: a harvested packet without actuation is lost.
  P(m, m - 1) = out.p_dne;
  P(m, m) = out.p_de + out.p_nde + out.p_ndne;

  Eigen::MatrixXd A = P.transpose() - Eigen::MatrixXd::Identity(n, n);
  A.row(0).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(0) = 1.0;
  const Eigen::VectorXd pi = A.fullPivLu().solve(rhs);

  const Eigen::RowVectorXd pit = pi.transpose();
  sol.residual = (pit * P - pit).cwiseAbs().maxCoeff();
  sol.pmf.assign(pi.data(), pi.data() + n);
  return sol;
}

std::vector<double> product_form_pmf(const OutcomeDistribution& out,
                                     std::int64_t capacity) {
  require(capacity >= 1, "capacity must be >= 1");
  const auto n = static_cast<std::size_t>(capacity + 1);
  std::vector<double> w(n, 0.0);
  if (out.p_nde <= 0.0 && out.p_dne <= 0.0) {
    w[0] = 1.0;
    return w;
  }
  if (out.p_nde <= out.p_dne) {
    const double r = out.p_nde / out.p_dne;
    double x = 1.0;
    for (auto& v : w) {
      v = x;
      x *= r;
    }
  } else {
    const double s = out.p_dne / out.p_nde;
    double x = 1.0;
    for (std::size_t k = n; k-- > 0;) {
      w[k] = x;
      x *= s;
    }
  }
  double total = 0.0;
  for (double v : w) total += v;
  for (auto& v : w) v /= total;
  return w;
}

std::vector<std::uint8_t> synthetic_geometric_trace(double p, std::int64_t n,
                                                    std::uint64_t seed) {
  require(p > 0.0 && p <= 1.0, "reset probability must lie in (0, 1]");
  require(n >= 0, "trace length must be >= 0");
  UniformStream rng(seed);
  std::vector<std::uint8_t> trace(static_cast<std::size_t>(n));
  for (auto& r : trace) r = rng.next() < p ? 1 : 0;
  return trace;
}

std::vector<OracleReport> validate_scenario(const Scenario& scenario,
                                            const ValidateOptions& opts) {
  scenario.validate();
  std::vector<OracleReport> reports;
  const SuccessProbs sp = success_probs(scenario.channel);

  // Channel closed forms against fading-level sampling.
  const ChannelEstimates mc =
      mc_channel(scenario.channel, opts.mc_samples, derive_seed(opts.seed, 0));
  reports.push_back(channel_report("p_d1", sp.p_d1, mc.p_d1, mc.samples));
  reports.push_back(channel_report("p_d12", sp.p_d12, mc.p_d12, mc.samples));
  reports.push_back(channel_report("p_e2", sp.p_e2, mc.p_e2, mc.samples));
  reports.push_back(channel_report("p_e12", sp.p_e12, mc.p_e12, mc.samples));

  // Battery occupancy closed forms against the linear solve.
  const OutcomeDistribution out =
      outcome_distribution(sp, scenario.q1, scenario.q2);
  const BatterySteadyState ss = battery_steady_state(out, scenario.battery);
  if (scenario.battery.is_finite()) {
    const StationarySolution sol =
        stationary_solve(out, scenario.battery.capacity());
    reports.push_back(make_oracle_report(
        "battery_p_empty", ss.p_empty, sol.pmf[0], std::nullopt, 1e-10,
        "linear solve residual " + num(sol.residual)));
  } else if (regime(out) == Regime::EnergyLimited && !ss.frozen) {
    const double r = out.p_nde / out.p_dne;
    if (std::pow(r, static_cast<double>(opts.truncation + 1)) < 1e-8) {
      const StationarySolution sol = stationary_solve(out, opts.truncation);
      reports.push_back(make_oracle_report(
          "battery_p_empty", ss.p_empty, sol.pmf[0], std::nullopt, 1e-6,
          "linear solve truncated at " + std::to_string(opts.truncation) +
              " packets"));
    }
  }

  // Simulation against the exact per-slot identities.
  GapRun run = simulate_with_cycles(scenario, opts, 1);
  const SimReport& sim = run.report;
  const double aoi = avg_aoi(out);
  if (std::isfinite(aoi)) {
    reports.push_back(make_oracle_report("mean_aoi", aoi, sim.mean_aoi,
                                         std::nullopt, 0.01 * aoi,
                                         "relative bound 1%"));
  }
  reports.push_back(make_oracle_report(
      "actuation_rate", actuation_rate(out, scenario.battery),
      sim.actuation_rate, sim.se_actuation_rate, 0.0,
      "batch-means standard error"));
  reports.push_back(make_oracle_report("battery_p_empty_simulated",
                                       ss.p_empty, sim.p_empty_hat,
                                       sim.se_p_empty, 0.0,
                                       "batch-means standard error"));

  // Constant-reset AoA formula against the simulated time average.
  reports.push_back(
      aoa_gap_report("at scenario", scenario, run, opts.aoa_gap_tolerance));
  const OptimumReport best =
      scenario.battery.is_finite()
          ? optimize_aoa_finite(sp, scenario.battery.capacity())
          : optimize_aoa_infinite(sp);
  Scenario at_best = scenario;
  at_best.q1 = best.q1_star;
  at_best.q2 = best.q2_star;
  const GapRun best_run = simulate_with_cycles(at_best, opts, 2);
  reports.push_back(
      aoa_gap_report("at optimum", at_best, best_run, opts.aoa_gap_tolerance));
  return reports;
}

}  // namespace aoa
