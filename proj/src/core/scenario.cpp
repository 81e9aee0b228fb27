#include "aoa/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "aoa/common.hpp"
#include "aoa/units.hpp"

namespace aoa {

namespace {

using nlohmann::json;

// Collects every schema problem instead of stopping at the first.
class SchemaReader {
 public:
  void error(const std::string& path, const std::string& msg) {
    errors_.push_back(path + ": " + msg);
  }

  const json* object(const json& parent, const std::string& key,
                     const std::string& path, bool required = true) {
    if (!parent.contains(key)) {
      if (required) error(path + "." + key, "missing");
      return nullptr;
    }
    const json& v = parent.at(key);
    if (!v.is_object()) {
      error(path + "." + key, "expected an object");
      return nullptr;
    }
    return &v;
  }

  void only_keys(const json& obj, const std::string& path,
                 std::initializer_list<const char*> allowed) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : obj.items()) {
      if (!ok.count(k)) error(path + "." + k, "unknown key");
    }
  }

  double number(const json& parent, const std::string& key,
                const std::string& path) {
    const std::string p = path + "." + key;
    if (!parent.contains(key)) {
      error(p, "missing");
      return 0.0;
    }
    const json& v = parent.at(key);
    if (!v.is_number()) {
      error(p, "expected a number");
      return 0.0;
    }
    return v.get<double>();
  }

  double positive(const json& parent, const std::string& key,
                  const std::string& path) {
    const double v = number(parent, key, path);
    if (parent.contains(key) && parent.at(key).is_number() && !(v > 0.0)) {
      error(path + "." + key, "must be > 0");
    }
    return v;
  }

  double probability(const json& parent, const std::string& key,
                     const std::string& path) {
    const double v = number(parent, key, path);
    if (parent.contains(key) && parent.at(key).is_number() &&
        !is_probability(v)) {
      error(path + "." + key, "must lie in [0, 1]");
    }
    return v;
  }

  std::int64_t count(const json& parent, const std::string& key,
                     const std::string& path, std::int64_t min) {
    const std::string p = path + "." + key;
    const json& v = parent.at(key);
    if (!v.is_number_integer()) {
      error(p, "expected an integer");
      return min;
    }
    const auto n = v.get<std::int64_t>();
    if (n < min) error(p, "must be >= " + std::to_string(min));
    return n;
  }

  // {"value": x, "unit": "W" | "dBm"}
  double power(const json& parent, const std::string& key,
               const std::string& path) {
    const std::string p = path + "." + key;
    const json* q = object(parent, key, path);
    if (!q) return 0.0;
    only_keys(*q, p, {"value", "unit"});
    const double value = number(*q, "value", p);
    const auto unit = unit_tag(*q, p);
    if (!unit) return 0.0;
    const auto parsed = units::parse_power_unit(*unit);
    if (!parsed) {
      error(p + ".unit", "power unit must be one of W, dBm");
      return 0.0;
    }
    return units::Power{value, *parsed}.watts();
  }

  // {"value": x, "unit": "dB" | "linear"}
  double ratio(const json& parent, const std::string& key,
               const std::string& path) {
    const std::string p = path + "." + key;
    const json* q = object(parent, key, path);
    if (!q) return 0.0;
    only_keys(*q, p, {"value", "unit"});
    const double value = number(*q, "value", p);
    const auto unit = unit_tag(*q, p);
    if (!unit) return 0.0;
    const auto parsed = units::parse_ratio_unit(*unit);
    if (!parsed) {
      error(p + ".unit", "ratio unit must be one of dB, linear");
      return 0.0;
    }
    return units::Ratio{value, *parsed}.linear();
  }

  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::optional<std::string> unit_tag(const json& q, const std::string& p) {
    if (!q.contains("unit") || !q.at("unit").is_string()) {
      error(p + ".unit", "missing or not a string");
      return std::nullopt;
    }
    return q.at("unit").get<std::string>();
  }

  std::vector<std::string> errors_;
};

LinkParams read_link(SchemaReader& rd, const json& ch, const std::string& key) {
  LinkParams link;
  const std::string p = "$.channel." + key;
  const json* obj = rd.object(ch, key, "$.channel");
  if (!obj) return link;
  rd.only_keys(*obj, p, {"tx_power", "distance", "pathloss_exp", "fading_mean"});
  link.tx_power = rd.power(*obj, "tx_power", p);
  if (obj->contains("tx_power") && !(link.tx_power > 0.0)) {
    rd.error(p + ".tx_power", "must be > 0 W");
  }
  link.distance = rd.positive(*obj, "distance", p);
  link.pathloss_exp = rd.positive(*obj, "pathloss_exp", p);
  link.fading_mean = rd.positive(*obj, "fading_mean", p);
  return link;
}

}  // namespace

void Scenario::validate() const {
  channel.validate();
  require(is_probability(q1) && is_probability(q2),
          "q1 and q2 must lie in [0, 1]");
}

ScenarioFile parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, std::string("$: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::Schema, "$: expected an object");

  SchemaReader rd;
  ScenarioFile file;
  rd.only_keys(doc, "$", {"channel", "protocol", "battery", "simulation", "sweep"});

  if (const json* ch = rd.object(doc, "channel", "$")) {
    rd.only_keys(*ch, "$.channel",
                 {"link1", "link2", "noise_power", "sinr_threshold",
                  "energy_threshold", "power_split"});
    ChannelConfig& cfg = file.scenario.channel;
    cfg.link1 = read_link(rd, *ch, "link1");
    cfg.link2 = read_link(rd, *ch, "link2");
    cfg.noise_power = rd.power(*ch, "noise_power", "$.channel");
    cfg.sinr_threshold = rd.ratio(*ch, "sinr_threshold", "$.channel");
    cfg.energy_threshold = rd.ratio(*ch, "energy_threshold", "$.channel");
    cfg.power_split = rd.probability(*ch, "power_split", "$.channel");
    if (ch->contains("sinr_threshold") && !(cfg.sinr_threshold > 0.0)) {
      rd.error("$.channel.sinr_threshold", "must be > 0");
    }
    if (ch->contains("energy_threshold") && !(cfg.energy_threshold > 0.0)) {
      rd.error("$.channel.energy_threshold", "must be > 0");
    }
  }

  if (const json* proto = rd.object(doc, "protocol", "$")) {
    rd.only_keys(*proto, "$.protocol", {"q1", "q2"});
    file.scenario.q1 = rd.probability(*proto, "q1", "$.protocol");
    file.scenario.q2 = rd.probability(*proto, "q2", "$.protocol");
  }

  if (!doc.contains("battery")) {
    rd.error("$.battery", "missing");
  } else {
    const json& b = doc.at("battery");
    if (b.is_string() && b.get<std::string>() == "infinite") {
      file.scenario.battery = BatterySpec::infinite();
    } else if (b.is_object() && b.size() == 1 && b.contains("finite")) {
      const std::int64_t m = rd.count(b, "finite", "$.battery", 1);
      if (m >= 1) file.scenario.battery = BatterySpec::finite(m);
    } else {
      rd.error("$.battery", R"(expected "infinite" or {"finite": m})");
    }
  }

  if (const json* sim = rd.object(doc, "simulation", "$", false)) {
    rd.only_keys(*sim, "$.simulation", {"horizon", "warmup", "seed"});
    SimulationSettings& s = file.simulation;
    if (sim->contains("horizon")) s.horizon = rd.count(*sim, "horizon", "$.simulation", 1);
    if (sim->contains("warmup")) s.warmup = rd.count(*sim, "warmup", "$.simulation", 0);
    if (sim->contains("seed")) {
      const json& v = sim->at("seed");
      if (v.is_number_unsigned()) {
        s.seed = v.get<std::uint64_t>();
      } else if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        s.seed = static_cast<std::uint64_t>(v.get<std::int64_t>());
      } else {
        rd.error("$.simulation.seed", "expected a nonnegative integer");
      }
    }
    if (s.warmup >= s.horizon) rd.error("$.simulation.warmup", "must be < horizon");
  }

  if (const json* sw = rd.object(doc, "sweep", "$", false)) {
    rd.only_keys(*sw, "$.sweep", {"grid_step"});
    file.grid_step = rd.number(*sw, "grid_step", "$.sweep");
    if (!(file.grid_step > 0.0 && file.grid_step <= 0.1)) {
      rd.error("$.sweep.grid_step", "must lie in (0, 0.1]");
    }
  }

  if (!rd.errors().empty()) {
    std::ostringstream msg;
    for (std::size_t i = 0; i < rd.errors().size(); ++i) {
      if (i) msg << '\n';
      msg << rd.errors()[i];
    }
    throw Error(ErrorCode::Schema, msg.str());
  }
  return file;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open scenario " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace aoa
