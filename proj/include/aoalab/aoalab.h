/*
 * aoalab: C interface to the AoI / AoA analysis, simulation and optimisation
 * library for a two-transmitter wireless-power-transfer status-update link.
 *
 * All objects are opaque handles created and released through this API.
 * Every fallible call returns an aoa_status; on failure a human-readable
 * message is available from aoa_last_error() on the same thread until the
 * next failing call.
 */
#ifndef AOALAB_H
#define AOALAB_H

#include <stdint.h>

#if defined(_WIN32)
#  if defined(AOALAB_BUILDING)
#    define AOALAB_API __declspec(dllexport)
#  else
#    define AOALAB_API __declspec(dllimport)
#  endif
#else
#  define AOALAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aoa_status {
  AOA_OK = 0,
  AOA_ERR_INVALID_ARGUMENT = 1,
  AOA_ERR_SCHEMA = 2,
  AOA_ERR_NUMERIC_FLAG = 3,
  AOA_ERR_INFEASIBLE = 4,
  AOA_ERR_IO = 5,
  AOA_ERR_INSUFFICIENT_ACTUATIONS = 6,
  AOA_ERR_NO_RESETS = 7,
  AOA_ERR_INTERNAL = 8
} aoa_status;

typedef enum aoa_metric { AOA_METRIC_AOI = 0, AOA_METRIC_AOA = 1 } aoa_metric;

typedef enum aoa_format { AOA_FORMAT_JSON = 0, AOA_FORMAT_CSV = 1 } aoa_format;

typedef struct aoa_scenario aoa_scenario;
typedef struct aoa_report aoa_report;

typedef struct aoa_success_probs {
  double p_d1;
  double p_d12;
  double p_e2;
  double p_e12;
} aoa_success_probs;

typedef struct aoa_metrics {
  double avg_aoi; /* slots; +inf when no data gets through */
  double avg_aoa; /* slots; +inf when no actuation happens */
  double p_empty;
  double actuation_rate;
  int energy_limited;
} aoa_metrics;

typedef struct aoa_optimum {
  double q1_star;
  double q2_star;
  double value;
  int closed_form; /* 1 for the closed-form solution, 0 for grid search */
  int flagged;     /* case-table mismatch or exhaustive fallback */
} aoa_optimum;

AOALAB_API const char* aoa_version(void);
AOALAB_API const char* aoa_last_error(void);
AOALAB_API const char* aoa_status_name(aoa_status status);

/* Scenarios (JSON scenario file format). */
AOALAB_API aoa_status aoa_scenario_load(const char* path, aoa_scenario** out);
AOALAB_API aoa_status aoa_scenario_parse(const char* json_text,
                                         aoa_scenario** out);
AOALAB_API void aoa_scenario_free(aoa_scenario* scenario);

AOALAB_API aoa_status aoa_scenario_set_protocol(aoa_scenario* scenario,
                                                double q1, double q2);
/* capacity 0 selects the infinite battery. */
AOALAB_API aoa_status aoa_scenario_set_battery(aoa_scenario* scenario,
                                               int64_t capacity);
AOALAB_API aoa_status aoa_scenario_set_horizon(aoa_scenario* scenario,
                                               int64_t horizon);
AOALAB_API aoa_status aoa_scenario_set_warmup(aoa_scenario* scenario,
                                              int64_t warmup);
AOALAB_API aoa_status aoa_scenario_set_seed(aoa_scenario* scenario,
                                            uint64_t seed);
AOALAB_API int aoa_scenario_has_seed(const aoa_scenario* scenario);
AOALAB_API aoa_status aoa_scenario_set_grid_step(aoa_scenario* scenario,
                                                 double grid_step);

/* Closed-form quantities. */
AOALAB_API aoa_status aoa_success_probs_get(const aoa_scenario* scenario,
                                            aoa_success_probs* out);
AOALAB_API aoa_status aoa_metrics_get(const aoa_scenario* scenario,
                                      aoa_metrics* out);
AOALAB_API aoa_status aoa_optimum_get(const aoa_scenario* scenario,
                                      aoa_metric metric, aoa_optimum* out);

/* Reports. Render with aoa_report_render; release with aoa_report_free. */
AOALAB_API aoa_status aoa_analyze(const aoa_scenario* scenario,
                                  aoa_report** out);
AOALAB_API aoa_status aoa_simulate(const aoa_scenario* scenario,
                                   int keep_trace, aoa_report** out);
AOALAB_API aoa_status aoa_optimize(const aoa_scenario* scenario,
                                   aoa_metric metric, aoa_report** out);
AOALAB_API aoa_status aoa_sweep(const aoa_scenario* scenario,
                                aoa_report** out);
AOALAB_API aoa_status aoa_validate(const aoa_scenario* scenario,
                                   aoa_report** out);

/* CSV is available for sweep reports only. The string is owned by the
 * caller and released with aoa_string_free. */
AOALAB_API aoa_status aoa_report_render(const aoa_report* report,
                                        aoa_format format, char** out);
/* Per-slot CSV trace of a simulate report created with keep_trace != 0. */
AOALAB_API aoa_status aoa_report_write_trace(const aoa_report* report,
                                             const char* path);
/* Nonzero when the report raised a numerical flag: optimiser case-table
 * mismatch or fallback, or a failed validation check. */
AOALAB_API int aoa_report_flagged(const aoa_report* report);
AOALAB_API void aoa_report_free(aoa_report* report);

AOALAB_API void aoa_string_free(char* str);

#ifdef __cplusplus
}
#endif

#endif /* AOALAB_H */
