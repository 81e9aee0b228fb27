// aoa-lab: command-line front end over the aoalab C interface.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aoalab/aoalab.h"

namespace {

enum ExitCode { kOk = 0, kRuntimeError = 1, kSchemaError = 2, kNumericFlag = 3 };

struct Options {
  std::string scenario;
  std::string out;
  std::string format = "json";
  std::string metric = "aoa";
  std::string trace;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> horizon;
  std::optional<std::int64_t> warmup;
  std::optional<double> grid_step;
  std::optional<double> q1;
  std::optional<double> q2;
};

struct ScenarioDeleter {
  void operator()(aoa_scenario* s) const { aoa_scenario_free(s); }
};
struct ReportDeleter {
  void operator()(aoa_report* r) const { aoa_report_free(r); }
};
using ScenarioPtr = std::unique_ptr<aoa_scenario, ScenarioDeleter>;
using ReportPtr = std::unique_ptr<aoa_report, ReportDeleter>;

int exit_code_for(aoa_status st) {
  switch (st) {
    case AOA_OK: return kOk;
    case AOA_ERR_SCHEMA:
    case AOA_ERR_INVALID_ARGUMENT: return kSchemaError;
    case AOA_ERR_NUMERIC_FLAG:
    case AOA_ERR_INFEASIBLE: return kNumericFlag;
    default: return kRuntimeError;
  }
}

int report_error(aoa_status st, const std::string& context) {
  std::cerr << "aoa-lab: " << context << ": " << aoa_status_name(st) << "\n"
            << aoa_last_error() << "\n";
  return exit_code_for(st);
}

bool write_output(const std::string& path, const char* text) {
  if (path.empty()) {
    std::fputs(text, stdout);
    return std::fflush(stdout) == 0;
  }
  std::ofstream os(path, std::ios::binary);
  os << text;
  return static_cast<bool>(os);
}

std::optional<std::uint64_t> env_seed(bool& invalid) {
  invalid = false;
  const char* raw = std::getenv("AOA_LAB_SEED");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || raw[0] == '-') {
    invalid = true;
    return std::nullopt;
  }
  return v;
}

// Loads the scenario and applies command-line overrides. Seed precedence:
// --seed, then the scenario file, then AOA_LAB_SEED, then the library default.
int load(const Options& opt, ScenarioPtr& out) {
  aoa_scenario* raw = nullptr;
  aoa_status st = aoa_scenario_load(opt.scenario.c_str(), &raw);
  if (st != AOA_OK) return report_error(st, "loading " + opt.scenario);
  ScenarioPtr scn(raw);

  if (opt.q1 || opt.q2) {
    if (!(opt.q1 && opt.q2)) {
      std::cerr << "aoa-lab: --q1 and --q2 must be given together\n";
      return kSchemaError;
    }
    st = aoa_scenario_set_protocol(scn.get(), *opt.q1, *opt.q2);
    if (st != AOA_OK) return report_error(st, "--q1/--q2");
  }
  if (opt.horizon) {
    st = aoa_scenario_set_horizon(scn.get(), *opt.horizon);
    if (st != AOA_OK) return report_error(st, "--horizon");
  }
  if (opt.warmup) {
    st = aoa_scenario_set_warmup(scn.get(), *opt.warmup);
    if (st != AOA_OK) return report_error(st, "--warmup");
  }
  if (opt.grid_step) {
    st = aoa_scenario_set_grid_step(scn.get(), *opt.grid_step);
    if (st != AOA_OK) return report_error(st, "--grid-step");
  }
  if (opt.seed) {
    aoa_scenario_set_seed(scn.get(), *opt.seed);
  } else if (!aoa_scenario_has_seed(scn.get())) {
    bool invalid = false;
    const auto s = env_seed(invalid);
    if (invalid) {
      std::cerr << "aoa-lab: AOA_LAB_SEED must be a nonnegative integer\n";
      return kSchemaError;
    }
    if (s) aoa_scenario_set_seed(scn.get(), *s);
  }
  out = std::move(scn);
  return kOk;
}

int finish(const Options& opt, aoa_report* raw, aoa_format format) {
  ReportPtr rep(raw);
  char* text = nullptr;
  const aoa_status st = aoa_report_render(rep.get(), format, &text);
  if (st != AOA_OK) return report_error(st, "rendering");
  const bool ok = write_output(opt.out, text);
  aoa_string_free(text);
  if (!ok) {
    std::cerr << "aoa-lab: cannot write " << opt.out << "\n";
    return kRuntimeError;
  }
  return aoa_report_flagged(rep.get()) ? kNumericFlag : kOk;
}

int require_json(const Options& opt, const char* cmd) {
  if (opt.format != "json") {
    std::cerr << "aoa-lab: " << cmd << " supports --format json only\n";
    return kSchemaError;
  }
  return kOk;
}

int cmd_analyze(const Options& opt) {
  if (int rc = require_json(opt, "analyze")) return rc;
  ScenarioPtr scn;
  if (int rc = load(opt, scn)) return rc;
  aoa_report* rep = nullptr;
  const aoa_status st = aoa_analyze(scn.get(), &rep);
  if (st != AOA_OK) return report_error(st, "analyze");
  return finish(opt, rep, AOA_FORMAT_JSON);
}

int cmd_simulate(const Options& opt) {
  if (int rc = require_json(opt, "simulate")) return rc;
  ScenarioPtr scn;
  if (int rc = load(opt, scn)) return rc;
  aoa_report* raw = nullptr;
  const aoa_status st = aoa_simulate(scn.get(), opt.trace.empty() ? 0 : 1, &raw);
  if (st != AOA_OK) return report_error(st, "simulate");
  if (!opt.trace.empty()) {
    const aoa_status ts = aoa_report_write_trace(raw, opt.trace.c_str());
    if (ts != AOA_OK) {
      aoa_report_free(raw);
      return report_error(ts, "writing trace");
    }
  }
  return finish(opt, raw, AOA_FORMAT_JSON);
}

int cmd_optimize(const Options& opt) {
  if (int rc = require_json(opt, "optimize")) return rc;
  ScenarioPtr scn;
  if (int rc = load(opt, scn)) return rc;
  const aoa_metric metric = opt.metric == "aoi" ? AOA_METRIC_AOI : AOA_METRIC_AOA;
  aoa_report* rep = nullptr;
  const aoa_status st = aoa_optimize(scn.get(), metric, &rep);
  if (st != AOA_OK) return report_error(st, "optimize");
  return finish(opt, rep, AOA_FORMAT_JSON);
}

int cmd_sweep(const Options& opt) {
  ScenarioPtr scn;
  if (int rc = load(opt, scn)) return rc;
  aoa_report* rep = nullptr;
  const aoa_status st = aoa_sweep(scn.get(), &rep);
  if (st != AOA_OK) return report_error(st, "sweep");
  return finish(opt, rep, opt.format == "csv" ? AOA_FORMAT_CSV : AOA_FORMAT_JSON);
}

int cmd_validate(const Options& opt) {
  if (int rc = require_json(opt, "validate")) return rc;
  ScenarioPtr scn;
  if (int rc = load(opt, scn)) return rc;
  aoa_report* rep = nullptr;
  const aoa_status st = aoa_validate(scn.get(), &rep);
  if (st != AOA_OK) return report_error(st, "validate");
  return finish(opt, rep, AOA_FORMAT_JSON);
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--scenario", opt.scenario, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", opt.out, "Output path (default: stdout)");
  cmd->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--q1", opt.q1, "Override q1");
  cmd->add_option("--q2", opt.q2, "Override q2");
  cmd->add_option("--seed", opt.seed, "Random seed (fallback: AOA_LAB_SEED)");
  cmd->add_option("--horizon", opt.horizon, "Simulated slots");
  cmd->add_option("--warmup", opt.warmup, "Slots discarded before statistics");
  cmd->add_option("--grid-step", opt.grid_step, "Grid step for sweeps and searches");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AoI / AoA analysis, simulation and optimisation", "aoa-lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(aoa_version()));

  Options opt;
  auto* analyze = app.add_subcommand("analyze", "Closed-form probabilities, battery and ages");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo simulation");
  auto* optimize = app.add_subcommand("optimize", "Optimal (q1, q2)");
  auto* sweep = app.add_subcommand("sweep", "Average AoA over the (q1, q2) grid");
  auto* validate = app.add_subcommand("validate", "Run every oracle check");
  for (auto* cmd : {analyze, simulate, optimize, sweep, validate}) add_common(cmd, opt);
  simulate->add_option("--trace", opt.trace, "Write the per-slot trace CSV here");
  optimize->add_option("--metric", opt.metric, "Objective")
      ->check(CLI::IsMember({"aoi", "aoa"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kSchemaError;
  }

  if (*analyze) return cmd_analyze(opt);
  if (*simulate) return cmd_simulate(opt);
  if (*optimize) return cmd_optimize(opt);
  if (*sweep) return cmd_sweep(opt);
  return cmd_validate(opt);
}
