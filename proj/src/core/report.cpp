#include "aoa/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "aoa/common.hpp"

namespace aoa {

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kStoredDigits = 12;
constexpr int kDisplayDigits = 4;
// Histogram entries beyond this are folded into a tail mass in JSON output.
constexpr std::size_t kMaxHistogramEntries = 1000;

ojson number(double v) {
  if (std::isinf(v)) return "inf";
  return round_significant(v, kStoredDigits);
}

std::string display(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", kDisplayDigits, v);
  return buf;
}

std::string two_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", round_half_up(v, 2));
  return buf;
}

ojson battery_json(const BatterySpec& spec) {
  if (!spec.is_finite()) return "infinite";
  return ojson{{"finite", spec.capacity()}};
}

std::string regime_name(Regime r) {
  return r == Regime::EnergyLimited ? "energy_limited" : "energy_unlimited";
}

ojson histogram(const std::map<std::int64_t, double>& h) {
  ojson out = ojson::object();
  double tail = 0.0;
  std::size_t n = 0;
  for (const auto& [k, v] : h) {
    if (n++ < kMaxHistogramEntries) {
      out[std::to_string(k)] = number(v);
    } else {
      tail += v;
    }
  }
  ojson wrapped;
  wrapped["pmf"] = std::move(out);
  wrapped["tail_mass"] = number(tail);
  return wrapped;
}

ojson critical_value(const CriticalValue& cv) {
  switch (cv.kind) {
    case CriticalValue::Kind::Real: return number(cv.value);
    case CriticalValue::Kind::NotReal: return "not_real";
    case CriticalValue::Kind::Undefined: return "undefined";
  }
  return nullptr;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string analyze_json(const Scenario& scenario) {
  scenario.validate();
  const SuccessProbs sp = success_probs(scenario.channel);
  const OutcomeDistribution out =
      outcome_distribution(sp, scenario.q1, scenario.q2);
  const BatterySteadyState ss = battery_steady_state(out, scenario.battery);
  const AgeMetrics ages = age_metrics(out, scenario.battery);

  ojson j;
  j["protocol"] = {{"q1", number(scenario.q1)}, {"q2", number(scenario.q2)}};
  j["battery"] = battery_json(scenario.battery);
  j["success_probs"] = {{"p_d1", number(sp.p_d1)},
                        {"p_d12", number(sp.p_d12)},
                        {"p_e2", number(sp.p_e2)},
                        {"p_e12", number(sp.p_e12)}};
  j["success_probs_display"] = {{"p_d1", two_decimals(sp.p_d1)},
                                {"p_d12", two_decimals(sp.p_d12)},
                                {"p_e2", two_decimals(sp.p_e2)},
                                {"p_e12", two_decimals(sp.p_e12)}};
  j["outcome_distribution"] = {{"p_de", number(out.p_de)},
                               {"p_dne", number(out.p_dne)},
                               {"p_nde", number(out.p_nde)},
                               {"p_ndne", number(out.p_ndne)},
                               {"p_d", number(out.p_d)},
                               {"p_e", number(out.p_e)}};
  ojson battery = {{"p_empty", number(ss.p_empty)},
                   {"p_nonempty", number(ss.p_nonempty)},
                   {"regime", regime_name(ss.regime)},
                   {"frozen", ss.frozen}};
  if (!ss.pmf.empty()) {
    ojson pmf = ojson::array();
    for (double p : ss.pmf) pmf.push_back(number(p));
    battery["pmf"] = std::move(pmf);
  }
  j["battery_steady_state"] = std::move(battery);
  j["age_metrics"] = {{"avg_aoi", number(ages.avg_aoi)},
                      {"avg_aoa", number(ages.avg_aoa)}};
  j["age_metrics_display"] = {{"avg_aoi", display(ages.avg_aoi)},
                              {"avg_aoa", display(ages.avg_aoa)}};
  j["actuation_rate"] = number(actuation_rate(out, scenario.battery));
  return dump(j);
}

std::string simulate_json(const SimReport& report, const SimConfig& cfg) {
  const Scenario& scn = cfg.scenario;
  const OutcomeDistribution out =
      outcome_distribution(success_probs(scn.channel), scn.q1, scn.q2);
  const BatterySteadyState ss = battery_steady_state(out, scn.battery);

  ojson j;
  j["config"] = {{"q1", number(scn.q1)},
                 {"q2", number(scn.q2)},
                 {"battery", battery_json(scn.battery)},
                 {"horizon", cfg.horizon},
                 {"warmup", cfg.warmup},
                 {"seed", cfg.seed}};
  j["slots_counted"] = report.slots_counted;
  j["actuations"] = report.actuations;
  j["mean_aoi"] = number(report.mean_aoi);
  j["mean_aoa"] = number(report.mean_aoa);
  j["actuation_rate"] = number(report.actuation_rate);
  j["p_empty_hat"] = number(report.p_empty_hat);
  j["standard_errors"] = {{"mean_aoi", number(report.se_mean_aoi)},
                          {"mean_aoa", number(report.se_mean_aoa)},
                          {"actuation_rate", number(report.se_actuation_rate)},
                          {"p_empty_hat", number(report.se_p_empty)}};
  j["closed_form"] = {{"avg_aoi", number(avg_aoi(out))},
                      {"avg_aoa", number(avg_aoa(out, scn.battery))},
                      {"actuation_rate", number(actuation_rate(out, scn.battery))},
                      {"p_empty", number(ss.p_empty)},
                      {"regime", regime_name(ss.regime)}};
  if (!report.trace.empty()) {
    const std::span<const TraceRecord> counted(
        report.trace.begin() + cfg.warmup, report.trace.end());
    try {
      const CycleStats cs = estimate_cycle_stats(counted);
      j["cycle_stats"] = {{"cycles", cs.cycles},
                          {"mean_cycle", number(cs.mean_cycle)},
                          {"second_moment", number(cs.second_moment)},
                          {"implied_time_avg_age",
                           number(cs.implied_time_avg_age)}};
    } catch (const Error& e) {
      j["cycle_stats"] = {{"error", e.what()}};
    }
  }
  j["occupancy_hist"] = histogram(report.occupancy_hist);
  j["aoi_hist"] = histogram(report.aoi_hist);
  j["aoa_hist"] = histogram(report.aoa_hist);
  return dump(j);
}

std::string optimize_json(const OptimumReport& report, Metric metric,
                          const BatterySpec& battery) {
  ojson j;
  j["metric"] = metric == Metric::Aoi ? "aoi" : "aoa";
  j["battery"] = battery_json(battery);
  j["q1_star"] = number(report.q1_star);
  j["q2_star"] = number(report.q2_star);
  j["value"] = number(report.value);
  j["value_display"] = display(report.value);
  j["method"] = to_string(report.method);
  j["case_label"] = report.case_label;
  j["flag"] = to_string(report.flag);
  if (!report.diagnostic.empty()) j["diagnostic"] = report.diagnostic;
  if (report.critical_points) {
    const CriticalPoints& cp = *report.critical_points;
    j["critical_points"] = {{"theta1", critical_value(cp.theta1)},
                            {"theta2", critical_value(cp.theta2)},
                            {"delta1", critical_value(cp.delta1)},
                            {"delta2", critical_value(cp.delta2)}};
  }
  return dump(j);
}

std::string sweep_json(const SweepGrid& grid) {
  ojson j;
  j["grid_step"] = number(grid.grid_step);
  ojson axis = ojson::array();
  for (double q : grid.axis) axis.push_back(number(q));
  j["axis"] = std::move(axis);
  ojson cells = ojson::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      cells.push_back({{"q1", number(grid.axis[i])},
                       {"q2", number(grid.axis[k])},
                       {"avg_aoa", number(grid.at(i, k))},
                       {"energy_limited", grid.limited_at(i, k)}});
    }
  }
  j["cells"] = std::move(cells);
  return dump(j);
}

std::string validate_json(std::span<const OracleReport> reports) {
  ojson list = ojson::array();
  for (const auto& r : reports) {
    ojson rec;
    rec["quantity"] = r.quantity;
    rec["closed_form_value"] = number(r.closed_form);
    rec["oracle_value"] = number(r.oracle);
    rec["standard_error"] =
        r.standard_error ? number(*r.standard_error) : ojson(nullptr);
    rec["abs_tol"] = number(r.abs_tol);
    rec["pass"] = r.pass;
    if (!r.note.empty()) rec["note"] = r.note;
    list.push_back(std::move(rec));
  }
  return dump(list);
}

void write_trace_csv(std::ostream& os, std::span<const TraceRecord> trace) {
  os << kTraceHeader << '\n';
  for (const auto& r : trace) {
    os << r.slot << ',' << r.events.tx1_active << ',' << r.events.tx2_active
       << ',' << r.events.data_ok << ',' << r.events.energy_ok << ','
       << r.battery << ',' << r.aoi << ',' << r.aoa << ','
       << r.events.actuated << '\n';
  }
}

}  // namespace aoa
