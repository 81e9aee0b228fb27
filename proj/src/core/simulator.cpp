#include "aoa/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "aoa/common.hpp"
#include "aoa/random.hpp"

namespace aoa {

namespace {

constexpr std::int64_t kBatches = 100;

// Running counts of an integer-valued statistic over counted slots.
class Histogram {
 public:
  void add(std::int64_t value) {
    const auto idx = static_cast<std::size_t>(value);
    if (idx >= counts_.size()) counts_.resize(std::max(idx + 1, 2 * counts_.size()), 0);
    ++counts_[idx];
  }

  std::map<std::int64_t, double> normalized(std::int64_t total) const {
    std::map<std::int64_t, double> out;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      if (counts_[i] != 0) {
        out.emplace(static_cast<std::int64_t>(i),
                    static_cast<double>(counts_[i]) / static_cast<double>(total));
      }
    }
    return out;
  }

 private:
  std::vector<std::int64_t> counts_;
};

// Batch-means estimator: mean and standard error of a correlated series.
class BatchMeans {
 public:
  explicit BatchMeans(std::int64_t n)
      : batch_len_(std::max<std::int64_t>(1, n / kBatches)) {}

  void add(double x) {
    total_ += x;
    batch_sum_ += x;
    if (++in_batch_ == batch_len_) {
      batch_means_.push_back(batch_sum_ / static_cast<double>(batch_len_));
      batch_sum_ = 0.0;
      in_batch_ = 0;
    }
  }

  double mean(std::int64_t n) const { return total_ / static_cast<double>(n); }

  double standard_error() const {
    const auto k = static_cast<double>(batch_means_.size());
    if (batch_means_.size() < 2) return 0.0;
    double mu = 0.0;
    for (double b : batch_means_) mu += b;
    mu /= k;
    double ss = 0.0;
    for (double b : batch_means_) ss += (b - mu) * (b - mu);
    return std::sqrt(ss / (k - 1.0) / k);
  }

 private:
  std::int64_t batch_len_;
  std::int64_t in_batch_ = 0;
  double batch_sum_ = 0.0;
  double total_ = 0.0;
  std::vector<double> batch_means_;
};

}  // namespace

StepResult step(const SimState& state, const SuccessProbs& sp, double q1,
                double q2, const BatterySpec& spec, const SlotDraws& draws) {
  SlotEvents ev;
  ev.tx1_active = draws.tx1 < q1;
  ev.tx2_active = draws.tx2 < q2;
  if (ev.tx1_active) {
    ev.data_ok = draws.data < (ev.tx2_active ? sp.p_d12 : sp.p_d1);
  }
  if (ev.tx2_active) {
    ev.energy_ok = draws.energy < (ev.tx1_active ? sp.p_e12 : sp.p_e2);
  }

  const bool stored = state.battery > 0;
  ev.actuated = ev.data_ok && (stored || ev.energy_ok);

  SimState next = state;
  if (ev.actuated) {
    // A stored packet is spent and a fresh one (if any) replaces it; with an
    // empty battery the fresh packet is consumed on arrival. Either way the
    // net change is -1 only for (D, not E) with stored energy.
    if (stored && !ev.energy_ok) --next.battery;
    next.aoa = 1;
    next.last_actuation = state.slot;
  } else {
    if (ev.energy_ok) ++next.battery;
    next.aoa = state.aoa + 1;
  }
  if (spec.is_finite()) next.battery = std::min(next.battery, spec.capacity());
  next.aoi = ev.data_ok ? 1 : state.aoi + 1;
  next.slot = state.slot + 1;
  return StepResult{next, ev};
}

void SimConfig::validate() const {
  scenario.validate();
  require(horizon >= 1, "horizon must be >= 1");
  require(warmup >= 0 && warmup < horizon, "warmup must lie in [0, horizon)");
}

SimReport simulate(const SimConfig& cfg) {
  cfg.validate();
  const Scenario& scn = cfg.scenario;
  const SuccessProbs sp = success_probs(scn.channel);
  const std::int64_t counted = cfg.horizon - cfg.warmup;

  UniformStream rng(cfg.seed);
  SimState state;
  SimReport report;
  if (cfg.trace) report.trace.reserve(static_cast<std::size_t>(cfg.horizon));

  Histogram occupancy, aoi_hist, aoa_hist;
  BatchMeans aoi_bm(counted), aoa_bm(counted), act_bm(counted), empty_bm(counted);

  for (std::int64_t t = 0; t < cfg.horizon; ++t) {
    SlotDraws draws;
    draws.tx1 = rng.next();
    draws.tx2 = rng.next();
    draws.data = rng.next();
    draws.energy = rng.next();
    const StepResult res = step(state, sp, scn.q1, scn.q2, scn.battery, draws);
    state = res.next;

    if (cfg.trace) {
      report.trace.push_back(TraceRecord{state.slot, res.events, state.battery,
                                         state.aoi, state.aoa});
    }
    if (t < cfg.warmup) continue;

    occupancy.add(state.battery);
    aoi_hist.add(state.aoi);
    aoa_hist.add(state.aoa);
    aoi_bm.add(static_cast<double>(state.aoi));
    aoa_bm.add(static_cast<double>(state.aoa));
    act_bm.add(res.events.actuated ? 1.0 : 0.0);
    empty_bm.add(state.battery == 0 ? 1.0 : 0.0);
    if (res.events.actuated) ++report.actuations;
  }

  report.slots_counted = counted;
  report.mean_aoi = aoi_bm.mean(counted);
  report.mean_aoa = aoa_bm.mean(counted);
  report.actuation_rate = act_bm.mean(counted);
  report.p_empty_hat = empty_bm.mean(counted);
  report.se_mean_aoi = aoi_bm.standard_error();
  report.se_mean_aoa = aoa_bm.standard_error();
  report.se_actuation_rate = act_bm.standard_error();
  report.se_p_empty = empty_bm.standard_error();
  report.occupancy_hist = occupancy.normalized(counted);
  report.aoi_hist = aoi_hist.normalized(counted);
  report.aoa_hist = aoa_hist.normalized(counted);
  return report;
}

SimReport merge_reports(std::span<const SimReport> reports) {
  require(!reports.empty(), "nothing to merge");
  std::int64_t total = 0;
  for (const auto& r : reports) total += r.slots_counted;
  require(total > 0, "merged reports count no slots");

  SimReport merged;
  merged.slots_counted = total;
  double var_aoi = 0, var_aoa = 0, var_act = 0, var_empty = 0;
  for (const auto& r : reports) {
    const double w = static_cast<double>(r.slots_counted) / static_cast<double>(total);
    merged.mean_aoi += w * r.mean_aoi;
    merged.mean_aoa += w * r.mean_aoa;
    merged.actuation_rate += w * r.actuation_rate;
    merged.p_empty_hat += w * r.p_empty_hat;
    var_aoi += w * w * r.se_mean_aoi * r.se_mean_aoi;
    var_aoa += w * w * r.se_mean_aoa * r.se_mean_aoa;
    var_act += w * w * r.se_actuation_rate * r.se_actuation_rate;
    var_empty += w * w * r.se_p_empty * r.se_p_empty;
    merged.actuations += r.actuations;
    for (const auto& [k, v] : r.occupancy_hist) merged.occupancy_hist[k] += w * v;
    for (const auto& [k, v] : r.aoi_hist) merged.aoi_hist[k] += w * v;
    for (const auto& [k, v] : r.aoa_hist) merged.aoa_hist[k] += w * v;
  }
  merged.se_mean_aoi = std::sqrt(var_aoi);
  merged.se_mean_aoa = std::sqrt(var_aoa);
  merged.se_actuation_rate = std::sqrt(var_act);
  merged.se_p_empty = std::sqrt(var_empty);
  return merged;
}

CycleStats estimate_cycle_stats(std::span<const std::uint8_t> resets) {
  CycleStats stats;
  std::int64_t last = -1;
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < resets.size(); ++i) {
    if (!resets[i]) continue;
    const auto now = static_cast<std::int64_t>(i);
    if (last >= 0) {
      const auto len = static_cast<double>(now - last);
      sum += len;
      sum_sq += len * len;
      ++stats.cycles;
    }
    last = now;
  }
  if (stats.cycles < kMinCycles) {
    throw Error(ErrorCode::InsufficientActuations,
                "need at least " + std::to_string(kMinCycles) +
                    " complete cycles, found " + std::to_string(stats.cycles));
  }
  const auto n = static_cast<double>(stats.cycles);
  stats.mean_cycle = sum / n;
  stats.second_moment = sum_sq / n;
  stats.implied_time_avg_age =
      (stats.second_moment + stats.mean_cycle) / (2.0 * stats.mean_cycle);
  return stats;
}

CycleStats estimate_cycle_stats(std::span<const TraceRecord> trace) {
  std::vector<std::uint8_t> resets;
  resets.reserve(trace.size());
  for (const auto& rec : trace) resets.push_back(rec.events.actuated ? 1 : 0);
  return estimate_cycle_stats(resets);
}

}  // namespace aoa
