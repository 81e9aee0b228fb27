#include "aoalab/aoalab.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "aoa/common.hpp"
#include "aoa/optimizer.hpp"
#include "aoa/oracles.hpp"
#include "aoa/report.hpp"
#include "aoa/scenario.hpp"
#include "aoa/simulator.hpp"

struct aoa_scenario {
  aoa::ScenarioFile file;
};

struct aoa_report {
  std::string json;
  std::string csv;  // sweep reports only
  std::vector<aoa::TraceRecord> trace;
  bool has_trace = false;
  bool flagged = false;
};

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

thread_local std::string last_error;

aoa_status fail(aoa_status status, const std::string& message) {
  last_error = message;
  return status;
}

aoa_status map_code(aoa::ErrorCode code) {
  switch (code) {
    case aoa::ErrorCode::InvalidArgument: return AOA_ERR_INVALID_ARGUMENT;
    case aoa::ErrorCode::Schema: return AOA_ERR_SCHEMA;
    case aoa::ErrorCode::Infeasible: return AOA_ERR_INFEASIBLE;
    case aoa::ErrorCode::NoResets: return AOA_ERR_NO_RESETS;
    case aoa::ErrorCode::InsufficientActuations:
      return AOA_ERR_INSUFFICIENT_ACTUATIONS;
    case aoa::ErrorCode::Io: return AOA_ERR_IO;
  }
  return AOA_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
aoa_status guarded(Body&& body) {
  try {
    return body();
  } catch (const aoa::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(AOA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AOA_ERR_INTERNAL, e.what());
  }
}

aoa::SimConfig sim_config(const aoa::ScenarioFile& f, bool trace) {
  aoa::SimConfig cfg;
  cfg.scenario = f.scenario;
  cfg.horizon = f.simulation.horizon;
  cfg.warmup = f.simulation.warmup;
  cfg.seed = f.simulation.seed.value_or(kDefaultSeed);
  cfg.trace = trace;
  return cfg;
}

aoa_status null_argument() {
  return fail(AOA_ERR_INVALID_ARGUMENT, "null argument");
}

aoa_status emit(aoa_report* rep, aoa_report** out) {
  *out = rep;
  return AOA_OK;
}

char* copy_string(const std::string& s) {
  auto* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return buf;
}

}  // namespace

extern "C" {

const char* aoa_version(void) { return "1.0.0"; }

const char* aoa_last_error(void) { return last_error.c_str(); }

const char* aoa_status_name(aoa_status status) {
  switch (status) {
    case AOA_OK: return "ok";
    case AOA_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case AOA_ERR_SCHEMA: return "schema_error";
    case AOA_ERR_NUMERIC_FLAG: return "numeric_flag";
    case AOA_ERR_INFEASIBLE: return "infeasible";
    case AOA_ERR_IO: return "io_error";
    case AOA_ERR_INSUFFICIENT_ACTUATIONS: return "insufficient_actuations";
    case AOA_ERR_NO_RESETS: return "no_resets";
    case AOA_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

aoa_status aoa_scenario_load(const char* path, aoa_scenario** out) {
  if (!path || !out) return null_argument();
  return guarded([&] {
    auto scn = std::make_unique<aoa_scenario>();
    scn->file = aoa::load_scenario(path);
    *out = scn.release();
    return AOA_OK;
  });
}

aoa_status aoa_scenario_parse(const char* json_text, aoa_scenario** out) {
  if (!json_text || !out) return null_argument();
  return guarded([&] {
    auto scn = std::make_unique<aoa_scenario>();
    scn->file = aoa::parse_scenario(json_text);
    *out = scn.release();
    return AOA_OK;
  });
}

void aoa_scenario_free(aoa_scenario* scenario) { delete scenario; }

aoa_status aoa_scenario_set_protocol(aoa_scenario* scenario, double q1,
                                     double q2) {
  if (!scenario) return null_argument();
  if (!aoa::is_probability(q1) || !aoa::is_probability(q2)) {
    return fail(AOA_ERR_INVALID_ARGUMENT, "q1 and q2 must lie in [0, 1]");
  }
  scenario->file.scenario.q1 = q1;
  scenario->file.scenario.q2 = q2;
  return AOA_OK;
}

aoa_status aoa_scenario_set_battery(aoa_scenario* scenario, int64_t capacity) {
  if (!scenario) return null_argument();
  if (capacity < 0) {
    return fail(AOA_ERR_INVALID_ARGUMENT, "battery capacity must be >= 0");
  }
  scenario->file.scenario.battery = capacity == 0
                                        ? aoa::BatterySpec::infinite()
                                        : aoa::BatterySpec::finite(capacity);
  return AOA_OK;
}

aoa_status aoa_scenario_set_horizon(aoa_scenario* scenario, int64_t horizon) {
  if (!scenario) return null_argument();
  if (horizon < 1) return fail(AOA_ERR_INVALID_ARGUMENT, "horizon must be >= 1");
  scenario->file.simulation.horizon = horizon;
  return AOA_OK;
}

aoa_status aoa_scenario_set_warmup(aoa_scenario* scenario, int64_t warmup) {
  if (!scenario) return null_argument();
  if (warmup < 0) return fail(AOA_ERR_INVALID_ARGUMENT, "warmup must be >= 0");
  scenario->file.simulation.warmup = warmup;
  return AOA_OK;
}

aoa_status aoa_scenario_set_seed(aoa_scenario* scenario, uint64_t seed) {
  if (!scenario) return null_argument();
  scenario->file.simulation.seed = seed;
  return AOA_OK;
}

int aoa_scenario_has_seed(const aoa_scenario* scenario) {
  return scenario && scenario->file.simulation.seed.has_value() ? 1 : 0;
}

aoa_status aoa_scenario_set_grid_step(aoa_scenario* scenario, double grid_step) {
  if (!scenario) return null_argument();
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    return fail(AOA_ERR_INVALID_ARGUMENT, "grid_step must lie in (0, 0.1]");
  }
  scenario->file.grid_step = grid_step;
  return AOA_OK;
}

aoa_status aoa_success_probs_get(const aoa_scenario* scenario,
                                 aoa_success_probs* out) {
  if (!scenario || !out) return null_argument();
  return guarded([&] {
    const aoa::SuccessProbs sp = aoa::success_probs(scenario->file.scenario.channel);
    *out = aoa_success_probs{sp.p_d1, sp.p_d12, sp.p_e2, sp.p_e12};
    return AOA_OK;
  });
}

aoa_status aoa_metrics_get(const aoa_scenario* scenario, aoa_metrics* out) {
  if (!scenario || !out) return null_argument();
  return guarded([&] {
    const aoa::Scenario& s = scenario->file.scenario;
    const auto od = aoa::outcome_distribution(aoa::success_probs(s.channel), s.q1, s.q2);
    const auto ss = aoa::battery_steady_state(od, s.battery);
    out->avg_aoi = aoa::avg_aoi(od);
    out->avg_aoa = aoa::avg_aoa(od, s.battery);
    out->p_empty = ss.p_empty;
    out->actuation_rate = aoa::actuation_rate(od, s.battery);
    out->energy_limited = ss.regime == aoa::Regime::EnergyLimited ? 1 : 0;
    return AOA_OK;
  });
}

namespace {

aoa::OptimumReport run_optimizer(const aoa::ScenarioFile& f, aoa_metric metric) {
  const aoa::SuccessProbs sp = aoa::success_probs(f.scenario.channel);
  if (metric == AOA_METRIC_AOI) return aoa::optimize_aoi(sp);
  if (f.scenario.battery.is_finite()) {
    return aoa::optimize_aoa_finite(sp, f.scenario.battery.capacity(), f.grid_step);
  }
  return aoa::optimize_aoa_infinite(sp);
}

}  // namespace

aoa_status aoa_optimum_get(const aoa_scenario* scenario, aoa_metric metric,
                           aoa_optimum* out) {
  if (!scenario || !out) return null_argument();
  if (metric != AOA_METRIC_AOI && metric != AOA_METRIC_AOA) {
    return fail(AOA_ERR_INVALID_ARGUMENT, "unknown metric");
  }
  return guarded([&] {
    const aoa::OptimumReport rep = run_optimizer(scenario->file, metric);
    out->q1_star = rep.q1_star;
    out->q2_star = rep.q2_star;
    out->value = rep.value;
    out->closed_form = rep.method == aoa::Method::ClosedForm ? 1 : 0;
    out->flagged = rep.flag != aoa::OptimumFlag::None ? 1 : 0;
    return AOA_OK;
  });
}

aoa_status aoa_analyze(const aoa_scenario* scenario, aoa_report** out) {
  if (!scenario || !out) return null_argument();
  return guarded([&] {
    auto rep = std::make_unique<aoa_report>();
    rep->json = aoa::analyze_json(scenario->file.scenario);
    return emit(rep.release(), out);
  });
}

aoa_status aoa_simulate(const aoa_scenario* scenario, int keep_trace,
                        aoa_report** out) {
  if (!scenario || !out) return null_argument();
  return guarded([&] {
    const aoa::SimConfig cfg = sim_config(scenario->file, keep_trace != 0);
    aoa::SimReport sim = aoa::simulate(cfg);
    auto rep = std::make_unique<aoa_report>();
    rep->json = aoa::simulate_json(sim, cfg);
    rep->has_trace = cfg.trace;
    rep->trace = std::move(sim.trace);
    return emit(rep.release(), out);
  });
}

aoa_status aoa_optimize(const aoa_scenario* scenario, aoa_metric metric,
                        aoa_report** out) {
  if (!scenario || !out) return null_argument();
  if (metric != AOA_METRIC_AOI && metric != AOA_METRIC_AOA) {
    return fail(AOA_ERR_INVALID_ARGUMENT, "unknown metric");
  }
  return guarded([&] {
    const aoa::OptimumReport opt = run_optimizer(scenario->file, metric);
    auto rep = std::make_unique<aoa_report>();
    rep->json = aoa::optimize_json(
        opt, metric == AOA_METRIC_AOI ? aoa::Metric::Aoi : aoa::Metric::Aoa,
        scenario->file.scenario.battery);
    rep->flagged = opt.flag != aoa::OptimumFlag::None;
    return emit(rep.release(), out);
  });
}

aoa_status aoa_sweep(const aoa_scenario* scenario, aoa_report** out) {
  if (!scenario || !out) return null_argument();
  return guarded([&] {
    const aoa::ScenarioFile& f = scenario->file;
    const aoa::SweepGrid grid = aoa::sweep(aoa::success_probs(f.scenario.channel),
                                           f.scenario.battery, f.grid_step);
    auto rep = std::make_unique<aoa_report>();
    rep->json = aoa::sweep_json(grid);
    rep->csv = aoa::sweep_to_csv(grid);
    return emit(rep.release(), out);
  });
}

aoa_status aoa_validate(const aoa_scenario* scenario, aoa_report** out) {
  if (!scenario || !out) return null_argument();
  return guarded([&] {
    const aoa::ScenarioFile& f = scenario->file;
    aoa::ValidateOptions opts;
    opts.horizon = f.simulation.horizon;
    opts.warmup = f.simulation.warmup;
    opts.seed = f.simulation.seed.value_or(kDefaultSeed);
    const auto reports = aoa::validate_scenario(f.scenario, opts);
    auto rep = std::make_unique<aoa_report>();
    rep->json = aoa::validate_json(reports);
    for (const auto& r : reports) rep->flagged = rep->flagged || !r.pass;
    return emit(rep.release(), out);
  });
}

aoa_status aoa_report_render(const aoa_report* report, aoa_format format,
                             char** out) {
  if (!report || !out) return null_argument();
  if (format == AOA_FORMAT_CSV && report->csv.empty()) {
    return fail(AOA_ERR_INVALID_ARGUMENT, "CSV is only available for sweeps");
  }
  if (format != AOA_FORMAT_JSON && format != AOA_FORMAT_CSV) {
    return fail(AOA_ERR_INVALID_ARGUMENT, "unknown format");
  }
  return guarded([&] {
    *out = copy_string(format == AOA_FORMAT_CSV ? report->csv : report->json);
    return AOA_OK;
  });
}

aoa_status aoa_report_write_trace(const aoa_report* report, const char* path) {
  if (!report || !path) return null_argument();
  if (!report->has_trace) {
    return fail(AOA_ERR_INVALID_ARGUMENT, "report was created without a trace");
  }
  return guarded([&] {
    std::ofstream os(path, std::ios::binary);
    if (!os) return fail(AOA_ERR_IO, std::string("cannot write ") + path);
    aoa::write_trace_csv(os, report->trace);
    os.flush();
    if (!os) return fail(AOA_ERR_IO, std::string("write failed: ") + path);
    return AOA_OK;
  });
}

int aoa_report_flagged(const aoa_report* report) {
  return report && report->flagged ? 1 : 0;
}

void aoa_report_free(aoa_report* report) { delete report; }

void aoa_string_free(char* str) { std::free(str); }

}  // extern "C"
