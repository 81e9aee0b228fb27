#pragma once

// Scenario data model and the JSON scenario file format.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "aoa/analytics.hpp"
#include "aoa/channel.hpp"

namespace aoa {

struct Scenario {
  ChannelConfig channel;
  double q1 = 1.0;
  double q2 = 1.0;
  BatterySpec battery = BatterySpec::infinite();

  void validate() const;
};

struct SimulationSettings {
  std::int64_t horizon = 1'000'000;
  std::int64_t warmup = 10'000;
  std::optional<std::uint64_t> seed;
};

struct ScenarioFile {
  Scenario scenario;
  SimulationSettings simulation;
  double grid_step = 0.01;
};

// Throws Error(Schema) listing every problem found, one per line, each
// prefixed with its JSON path.
ScenarioFile parse_scenario(const std::string& json_text);
ScenarioFile load_scenario(const std::filesystem::path& path);

}  // namespace aoa
