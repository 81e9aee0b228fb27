#pragma once

// Slot-level Monte Carlo of the coupled transmit / harvest / actuate process.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "aoa/analytics.hpp"
#include "aoa/channel.hpp"
#include "aoa/scenario.hpp"

namespace aoa {

struct SimState {
  std::int64_t battery = 0;  // stored energy packets B(t)
  std::int64_t aoi = 1;      // I(t)
  std::int64_t aoa = 1;      // A(t)
  std::int64_t slot = 0;     // t
  // Slot of the most recent actuation; -1 before the first one.
  std::int64_t last_actuation = -1;
};

// The four uniforms consumed by one slot, in draw order.
struct SlotDraws {
  double tx1 = 0.0;
  double tx2 = 0.0;
  double data = 0.0;
  double energy = 0.0;
};

struct SlotEvents {
  bool tx1_active = false;
  bool tx2_active = false;
  bool data_ok = false;
  bool energy_ok = false;
  bool actuated = false;
};

struct StepResult {
  SimState next;
  SlotEvents events;
};

// Advances one slot. A deterministic function of (state, draws).
StepResult step(const SimState& state, const SuccessProbs& sp, double q1,
                double q2, const BatterySpec& spec, const SlotDraws& draws);

struct SimConfig {
  Scenario scenario;
  std::int64_t horizon = 1'000'000;
  std::int64_t warmup = 10'000;
  std::uint64_t seed = 1;
  bool trace = false;

  void validate() const;
};

struct TraceRecord {
  std::int64_t slot = 0;  // index of the state after the slot
  SlotEvents events;
  std::int64_t battery = 0;
  std::int64_t aoi = 0;
  std::int64_t aoa = 0;
};

struct SimReport {
  double mean_aoi = 0.0;
  double mean_aoa = 0.0;
  double actuation_rate = 0.0;
  double p_empty_hat = 0.0;
  // Batch-means standard errors of the four estimators above.
  double se_mean_aoi = 0.0;
  double se_mean_aoa = 0.0;
  double se_actuation_rate = 0.0;
  double se_p_empty = 0.0;
  std::map<std::int64_t, double> occupancy_hist;
  std::map<std::int64_t, double> aoi_hist;
  std::map<std::int64_t, double> aoa_hist;
  std::int64_t slots_counted = 0;
  std::int64_t actuations = 0;
  std::vector<TraceRecord> trace;  // every slot, warmup included
};

// Runs `horizon` slots from B = 0, I = A = 1. Statistics cover the slots
// after `warmup`. Same config and seed give an identical report.
SimReport simulate(const SimConfig& cfg);

// Count-weighted merge of independent runs (traces are not merged).
SimReport merge_reports(std::span<const SimReport> reports);

struct CycleStats {
  double mean_cycle = 0.0;
  double second_moment = 0.0;
  // Renewal-reward time average of a sawtooth age: E[T(T+1)] / (2 E[T]).
  double implied_time_avg_age = 0.0;
  std::int64_t cycles = 0;
};

inline constexpr std::int64_t kMinCycles = 100;

// Cycle statistics of the intervals between consecutive resets. Throws
// InsufficientActuations with fewer than kMinCycles complete intervals.
CycleStats estimate_cycle_stats(std::span<const std::uint8_t> resets);
CycleStats estimate_cycle_stats(std::span<const TraceRecord> trace);

}  // namespace aoa
