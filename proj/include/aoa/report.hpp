#pragma once

// JSON and CSV renderings of analysis, simulation, optimisation, sweep and
// validation results. Numbers carry 12 significant digits; infinite ages
// are written as the string "inf".

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "aoa/optimizer.hpp"
#include "aoa/oracles.hpp"
#include "aoa/scenario.hpp"
#include "aoa/simulator.hpp"

namespace aoa {

enum class Metric { Aoi, Aoa };

std::string analyze_json(const Scenario& scenario);
std::string simulate_json(const SimReport& report, const SimConfig& cfg);
std::string optimize_json(const OptimumReport& report, Metric metric,
                          const BatterySpec& battery);
std::string sweep_json(const SweepGrid& grid);
std::string validate_json(std::span<const OracleReport> reports);

inline constexpr const char* kTraceHeader =
    "slot,tx1_active,tx2_active,data_ok,energy_ok,battery,aoi,aoa,actuated";

void write_trace_csv(std::ostream& os, std::span<const TraceRecord> trace);

}  // namespace aoa
