// Acceptance suite. Prints one [PASS]/[FAIL] line per criterion, with the
// measured values underneath. `acceptance N` runs criterion N only.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aoa/analytics.hpp"
#include "aoa/channel.hpp"
#include "aoa/common.hpp"
#include "aoa/optimizer.hpp"
#include "aoa/oracles.hpp"
#include "aoa/scenario.hpp"
#include "aoa/simulator.hpp"
#include "aoalab/aoalab.h"

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

aoa::ScenarioFile setup(int n) {
  return aoa::load_scenario(std::string(AOA_SCENARIO_DIR) + "/setup" +
                            std::to_string(n) + ".json");
}

aoa::SuccessProbs probs(int n) { return aoa::success_probs(setup(n).scenario.channel); }

// Physically plausible random channels for the sampling oracle.
aoa::ChannelConfig random_channel(std::mt19937_64& rng) {
  auto u = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  aoa::ChannelConfig cfg;
  cfg.link1 = {u(0.005, 0.05), u(0.8, 1.5), u(2.5, 4.0), u(0.5, 2.0)};
  cfg.link2 = {u(0.2, 2.0), u(1.0, 3.0), u(2.5, 4.0), u(0.5, 2.0)};
  cfg.noise_power = u(1e-9, 1e-5);
  cfg.sinr_threshold = u(0.05, 1.0);
  cfg.energy_threshold = u(0.002, 0.2);
  cfg.power_split = u(0.3, 0.99);
  return cfg;
}

aoa::SuccessProbs random_probs(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.02, 1.0);
  aoa::SuccessProbs sp;
  sp.p_d1 = u(rng);
  sp.p_d12 = std::uniform_real_distribution<double>(0.0, sp.p_d1)(rng);
  sp.p_e2 = u(rng);
  sp.p_e12 = u(rng);
  return sp;
}

Outcome criterion1() {
  Outcome o;
  const double expected[2][4] = {{1.00, 0.62, 0.20, 0.23}, {1.00, 0.34, 0.60, 0.63}};
  for (int n = 1; n <= 2; ++n) {
    const aoa::ChannelConfig ch = setup(n).scenario.channel;
    const auto t0 = Clock::now();
    const aoa::SuccessProbs sp = aoa::success_probs(ch);
    const double elapsed = ms_since(t0);
    const double got[4] = {sp.p_d1, sp.p_d12, sp.p_e2, sp.p_e12};
    bool same = true;
    for (int k = 0; k < 4; ++k) same = same && aoa::round_half_up(got[k], 2) == expected[n - 1][k];
    o.check(same, fmt("setup %d: (%.2f, %.2f, %.2f, %.2f) from (%.6f, %.6f, %.6f, %.6f)", n,
                      aoa::round_half_up(got[0], 2), aoa::round_half_up(got[1], 2),
                      aoa::round_half_up(got[2], 2), aoa::round_half_up(got[3], 2), got[0],
                      got[1], got[2], got[3]));
    o.check(elapsed < 1.0, fmt("setup %d runtime %.4f ms < 1 ms", n, elapsed));
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  const aoa::SuccessProbs s1 = probs(1), s2 = probs(2);
  auto t0 = Clock::now();
  const auto r1 = aoa::optimize_aoa_infinite(s1);
  const double ms1 = ms_since(t0);
  o.check(r1.q1_star == 1.0 && r1.q2_star == 1.0,
          fmt("setup 1 argmin (%.6g, %.6g) = (1, 1)", r1.q1_star, r1.q2_star));
  o.check(std::abs(r1.value - 4.3) <= 0.05, fmt("setup 1 value %.6f within 4.3 +- 0.05", r1.value));
  o.check(r1.flag == aoa::OptimumFlag::None, "setup 1 flag " + aoa::to_string(r1.flag));
  t0 = Clock::now();
  const auto r2 = aoa::optimize_aoa_infinite(s2);
  const double ms2 = ms_since(t0);
  o.check(r2.q1_star == 1.0, fmt("setup 2 q1* = %.6g", r2.q1_star));
  o.check(std::abs(r2.q2_star - 0.78) <= 0.005,
          fmt("setup 2 |q2* - 0.78| = |%.6f - 0.78| = %.6f <= 0.005", r2.q2_star,
              std::abs(r2.q2_star - 0.78)));
  o.check(std::abs(r2.value - 2.1) <= 0.05, fmt("setup 2 value %.6f within 2.1 +- 0.05", r2.value));
  o.check(r2.flag == aoa::OptimumFlag::None, "setup 2 flag " + aoa::to_string(r2.flag));
  o.check(ms1 < 10.0 && ms2 < 10.0, fmt("runtime %.3f ms, %.3f ms < 10 ms", ms1, ms2));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const aoa::SuccessProbs s1 = probs(1), s2 = probs(2);
  auto t0 = Clock::now();
  const auto r1 = aoa::optimize_aoa_finite(s1, 1, 0.01);
  const double ms1 = ms_since(t0);
  o.check(r1.q1_star == 1.0 && r1.q2_star == 1.0,
          fmt("setup 1 argmin (%.6g, %.6g) = (1, 1)", r1.q1_star, r1.q2_star));
  o.check(std::abs(r1.value - 4.6) <= 0.05, fmt("setup 1 value %.6f within 4.6 +- 0.05", r1.value));
  t0 = Clock::now();
  const auto r2 = aoa::optimize_aoa_finite(s2, 1, 0.01);
  const double ms2 = ms_since(t0);
  o.check(r2.q1_star == 1.0, fmt("setup 2 q1* = %.6g", r2.q1_star));
  o.check(std::abs(r2.q2_star - 0.85) <= 0.01,
          fmt("setup 2 |q2* - 0.85| = %.6f <= 0.01 (q2* = %.6f)", std::abs(r2.q2_star - 0.85),
              r2.q2_star));
  o.check(std::abs(r2.value - 3.0) <= 0.05, fmt("setup 2 value %.6f within 3.0 +- 0.05", r2.value));
  t0 = Clock::now();
  const auto grid = aoa::sweep(s2, aoa::BatterySpec::finite(1), 0.01);
  const double ms3 = ms_since(t0);
  o.check(grid.values.size() == 101 * 101, fmt("sweep has %zu cells", grid.values.size()));
  o.check(ms1 < 1000.0 && ms2 < 1000.0 && ms3 < 1000.0,
          fmt("runtime %.1f ms, %.1f ms, sweep %.1f ms < 1 s", ms1, ms2, ms3));
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (int n = 1; n <= 2; ++n) {
    const aoa::SuccessProbs sp = probs(n);
    const auto r = aoa::optimize_aoi(sp);
    o.check(r.q1_star == 1.0 && r.q2_star == 0.0 && r.value == 1.0 / sp.p_d1,
            fmt("setup %d: ((%.6g, %.6g), %.12g) vs 1/P_d1 = %.12g", n, r.q1_star, r.q2_star,
                r.value, 1.0 / sp.p_d1));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const std::int64_t n = 10'000'000;
  std::vector<aoa::ChannelConfig> configs{setup(1).scenario.channel, setup(2).scenario.channel};
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 20; ++i) configs.push_back(random_channel(rng));

  const auto t0 = Clock::now();
  int failures = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const aoa::SuccessProbs sp = aoa::success_probs(configs[i]);
    const aoa::ChannelEstimates est = aoa::mc_channel(configs[i], n, 1000 + i);
    const double closed[4] = {sp.p_d1, sp.p_d12, sp.p_e2, sp.p_e12};
    const double sampled[4] = {est.p_d1.value, est.p_d12.value, est.p_e2.value,
                               est.p_e12.value};
    for (int k = 0; k < 4; ++k) {
      const double se = std::sqrt(closed[k] * (1.0 - closed[k]) / static_cast<double>(n));
      const double z = se > 0.0 ? std::abs(closed[k] - sampled[k]) / se : 0.0;
      const bool ok = std::abs(closed[k] - sampled[k]) <= std::max(3.0 * se, 1.0 / n);
      if (!ok) ++failures;
      worst = std::max(worst, z);
      if (i < 2) {
        static const char* names[4] = {"p_d1", "p_d12", "p_e2", "p_e12"};
        o.check(ok, fmt("setup %zu %s: closed %.6f sampled %.6f (%.2f se)", i + 1, names[k],
                        closed[k], sampled[k], z));
      }
    }
  }
  const double elapsed = ms_since(t0) / 1000.0;
  o.check(failures == 0,
          fmt("%zu configs x 4 probabilities at 1e7 samples: %d outside 3 se, largest %.2f se",
              configs.size(), failures, worst));
  o.check(elapsed < 30.0, fmt("runtime %.1f s < 30 s", elapsed));
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto out = aoa::outcome_distribution(random_probs(rng), u(rng), u(rng));
    for (std::int64_t m = 1; m <= 20; ++m) {
      const auto closed = aoa::battery_steady_state(out, aoa::BatterySpec::finite(m));
      const auto solved = aoa::stationary_solve(out, m);
      for (std::size_t k = 0; k < solved.pmf.size(); ++k) {
        worst = std::max(worst, std::abs(closed.pmf[k] - solved.pmf[k]));
      }
    }
  }
  o.check(worst < 1e-10, fmt("50 distributions x m = 1..20: max entry error %.3g < 1e-10", worst));

  double worst_gap = 0.0;
  for (double r : {0.1, 0.3, 0.5, 0.7, 0.8, 0.9}) {
    for (double down : {0.05, 0.2, 0.45}) {
      aoa::OutcomeDistribution out;
      out.p_dne = down;
      out.p_nde = r * down;
      out.p_de = 0.05;
      out.p_ndne = 1.0 - out.p_dne - out.p_nde - out.p_de;
      out.p_d = out.p_de + out.p_dne;
      out.p_e = out.p_de + out.p_nde;
      const double fin = aoa::battery_steady_state(out, aoa::BatterySpec::finite(1000)).p_empty;
      const double inf = aoa::battery_steady_state(out, aoa::BatterySpec::infinite()).p_empty;
      worst_gap = std::max(worst_gap, std::abs(fin - inf) / inf);
    }
  }
  o.check(worst_gap < 1e-6, fmt("m = 1000, r <= 0.9: max relative gap %.3g < 1e-6", worst_gap));
  return o;
}

Outcome criterion7() {
  Outcome o;
  for (int n = 1; n <= 2; ++n) {
    aoa::SimConfig cfg;
    cfg.scenario = setup(n).scenario;
    cfg.scenario.q1 = 1.0;
    cfg.scenario.q2 = 1.0;
    cfg.scenario.battery = aoa::BatterySpec::infinite();
    cfg.horizon = 1'000'000;
    cfg.warmup = 10'000;
    cfg.seed = 20240501 + n;
    const auto rep = aoa::simulate(cfg);
    const auto out = aoa::outcome_distribution(aoa::success_probs(cfg.scenario.channel), 1, 1);
    const double aoi = aoa::avg_aoi(out);
    const double rate = aoa::actuation_rate(out, cfg.scenario.battery);
    const double pi0 = aoa::battery_steady_state(out, cfg.scenario.battery).p_empty;
    o.check(std::abs(rep.mean_aoi - aoi) <= 0.01 * aoi,
            fmt("setup %d mean AoI %.5f vs 1/P_D %.5f (%.3f%%)", n, rep.mean_aoi, aoi,
                100.0 * std::abs(rep.mean_aoi - aoi) / aoi));
    o.check(std::abs(rep.actuation_rate - rate) <= 3.0 * rep.se_actuation_rate,
            fmt("setup %d actuation rate %.5f vs %.5f (se %.2g)", n, rep.actuation_rate, rate,
                rep.se_actuation_rate));
    o.check(std::abs(rep.p_empty_hat - pi0) <= std::max(3.0 * rep.se_p_empty, 1e-12),
            fmt("setup %d empty-battery frequency %.5f vs %.5f (se %.2g)", n, rep.p_empty_hat,
                pi0, rep.se_p_empty));
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (int n = 1; n <= 2; ++n) {
    const aoa::ScenarioFile file = setup(n);
    aoa::ValidateOptions opts;
    opts.mc_samples = aoa::kMinChannelSamples;
    opts.horizon = 1'000'000;
    opts.warmup = 10'000;
    opts.seed = 8 + n;
    const auto reports = aoa::validate_scenario(file.scenario, opts);
    bool found = false;
    for (const auto& r : reports) {
      if (r.quantity != "avg_aoa_gap at optimum") continue;
      found = true;
      const double gap = std::abs(r.oracle - r.closed_form) / r.closed_form;
      o.check(!r.note.empty(), fmt("setup %d note: %s", n, r.note.c_str()));
      o.check(gap <= 0.10, fmt("setup %d relative gap %.4f%% <= 10%%", n, 100.0 * gap));
    }
    o.check(found, fmt("setup %d validate report contains the optimum gap record", n));
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  const double h = 1e-6;
  auto aoi = [](const aoa::SuccessProbs& sp, double a, double b) {
    return 1.0 / aoa::outcome_distribution(sp, a, b).p_d;
  };
  auto aoa2 = [](const aoa::SuccessProbs& sp, double a, double b) {
    return 1.0 / aoa::outcome_distribution(sp, a, b).p_e;
  };
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-12); };
  double worst = 0.0;
  int sign_failures = 0, fd_failures = 0, undefined = 0;
  for (int i = 0; i < 100; ++i) {
    const aoa::SuccessProbs sp = i == 0 ? probs(1) : random_probs(rng);
    const double q1 = i == 0 ? 0.5 : u(rng);
    const double q2 = i == 0 ? 0.5 : u(rng);
    const auto gi = aoa::gradient_aoi(sp, q1, q2);
    const auto ga = aoa::gradient_aoa2(sp, q1, q2);
    if (!gi || !ga) {
      ++undefined;
      continue;
    }
    const double f[4] = {
        (aoi(sp, q1 + h, q2) - aoi(sp, q1 - h, q2)) / (2 * h),
        (aoi(sp, q1, q2 + h) - aoi(sp, q1, q2 - h)) / (2 * h),
        (aoa2(sp, q1 + h, q2) - aoa2(sp, q1 - h, q2)) / (2 * h),
        (aoa2(sp, q1, q2 + h) - aoa2(sp, q1, q2 - h)) / (2 * h),
    };
    const double g[4] = {gi->d_q1, gi->d_q2, ga->d_q1, ga->d_q2};
    for (int k = 0; k < 4; ++k) {
      const double e = rel(g[k], f[k]);
      worst = std::max(worst, e);
      if (e >= 1e-4) ++fd_failures;
    }
    const bool signs = gi->d_q1 < 0.0 && gi->d_q2 > 0.0 && ga->d_q2 < 0.0 &&
                       ((ga->d_q1 > 0.0) == (sp.p_e2 > sp.p_e12));
    if (!signs) ++sign_failures;
  }
  o.check(undefined == 0, fmt("%d of 100 points undefined", undefined));
  o.check(fd_failures == 0,
          fmt("100 points x 4 components: max relative error %.3g < 1e-4", worst));
  o.check(sign_failures == 0,
          fmt("sign rules (dI/dq1 < 0, dI/dq2 > 0, dA2/dq2 < 0, sign dA2/dq1 = sign(P_e2 - "
              "P_e12)): %d violations",
              sign_failures));
  return o;
}

std::string render(aoa_report* rep, aoa_format format) {
  char* text = nullptr;
  if (aoa_report_render(rep, format, &text) != AOA_OK) return "<render failed>";
  std::string s(text);
  aoa_string_free(text);
  return s;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Renders every command's output through the C interface.
std::vector<std::string> run_all(const std::string& scenario_path, const std::string& trace) {
  std::vector<std::string> out;
  aoa_scenario* s = nullptr;
  if (aoa_scenario_load(scenario_path.c_str(), &s) != AOA_OK) return {"<load failed>"};
  aoa_scenario_set_seed(s, 4242);
  aoa_scenario_set_horizon(s, 200'000);
  aoa_report* rep = nullptr;
  if (aoa_analyze(s, &rep) == AOA_OK) out.push_back(render(rep, AOA_FORMAT_JSON));
  aoa_report_free(rep);
  if (aoa_simulate(s, 1, &rep) == AOA_OK) {
    out.push_back(render(rep, AOA_FORMAT_JSON));
    aoa_report_write_trace(rep, trace.c_str());
    out.push_back(slurp(trace));
  }
  aoa_report_free(rep);
  if (aoa_optimize(s, AOA_METRIC_AOA, &rep) == AOA_OK) out.push_back(render(rep, AOA_FORMAT_JSON));
  aoa_report_free(rep);
  if (aoa_sweep(s, &rep) == AOA_OK) {
    out.push_back(render(rep, AOA_FORMAT_JSON));
    out.push_back(render(rep, AOA_FORMAT_CSV));
  }
  aoa_report_free(rep);
  if (aoa_validate(s, &rep) == AOA_OK) out.push_back(render(rep, AOA_FORMAT_JSON));
  aoa_report_free(rep);
  aoa_scenario_free(s);
  std::remove(trace.c_str());
  return out;
}

Outcome criterion10() {
  Outcome o;
  for (int n = 1; n <= 2; ++n) {
    const std::string path = std::string(AOA_SCENARIO_DIR) + "/setup" + std::to_string(n) + ".json";
    const std::string trace = "acceptance_trace_" + std::to_string(n) + ".csv";
    const auto a = run_all(path, trace);
    const auto b = run_all(path, trace);
    std::size_t bytes = 0;
    for (const auto& s : a) bytes += s.size();
    o.check(a.size() == 7 && a == b,
            fmt("setup %d: %zu outputs (%zu bytes) identical across runs", n, a.size(), bytes));
  }
  return o;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"success probabilities round to the reference table", criterion1},
      {"infinite-battery AoA optimum for both setups", criterion2},
      {"finite-battery (m = 1) AoA optimum for both setups", criterion3},
      {"AoI optimum is (1, 0) with value 1/P_d1", criterion4},
      {"fading-level sampling confirms the channel closed forms", criterion5},
      {"battery closed forms match the linear solve and converge", criterion6},
      {"simulation reproduces the exact per-slot identities", criterion7},
      {"simulated AoA gap against the constant-reset formula", criterion8},
      {"gradients match finite differences and sign rules", criterion9},
      {"identical seeds give byte-identical outputs", criterion10},
  };

  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: %s [criterion 1..%zu]\n", argv[0], criteria.size());
      return 2;
    }
  }

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (only && number != only) continue;
    Outcome result;
    try {
      result = criteria[i].run();
    } catch (const std::exception& e) {
      result.check(false, std::string("exception: ") + e.what());
    }
    std::printf("[%s] criterion %d: %s\n", result.pass ? "PASS" : "FAIL", number,
                criteria[i].title);
    for (const auto& d : result.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    if (!result.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
