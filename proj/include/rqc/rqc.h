// Copyright 2026 The rqc-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the rqc-sim library. */
#ifndef RQC_RQC_H
#define RQC_RQC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(RQC_BUILDING_LIBRARY)
#define RQC_API __declspec(dllexport)
#else
#define RQC_API __declspec(dllimport)
#endif
#else
#define RQC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Seed used whenever the caller does not pick one. */
#define RQC_DEFAULT_SEED UINT64_C(20260101)

typedef enum rqc_status {
    RQC_OK = 0,
    RQC_ERR_DOMAIN = 1,
    RQC_ERR_CAPACITY = 2,
    RQC_ERR_IMPOSSIBLE_OUTCOME = 3,
    RQC_ERR_NUMERICAL = 4,
    RQC_ERR_IO = 5,
    RQC_ERR_INVALID_ARGUMENT = 6,
    RQC_ERR_INTERNAL = 7
} rqc_status;

typedef enum rqc_format { RQC_FORMAT_CSV = 0, RQC_FORMAT_JSON = 1 } rqc_format;

typedef enum rqc_twirl { RQC_TWIRL_CUBATURE = 0, RQC_TWIRL_HAAR = 1 } rqc_twirl;

typedef struct rqc_report rqc_report;

RQC_API const char* rqc_version(void);
/* Message of the last failed call on this thread ("" if none). */
RQC_API const char* rqc_last_error(void);
RQC_API const char* rqc_status_string(rqc_status status);

/* ---- experiments; each returns a report owned by the caller ---- */

typedef struct rqc_walk_config {
    int target_n;
    int start_k;
    int64_t max_steps; /* 0: 10 N^2 */
    int64_t trials;
    uint64_t seed;
    int threads; /* 0: RQC_SIM_THREADS, then hardware concurrency */
} rqc_walk_config;

typedef struct rqc_growth_quantum_config {
    int k;
    int measurements;
    uint64_t seed;
    int discard_trials;
} rqc_growth_quantum_config;

typedef struct rqc_localize_config {
    int n;
    int64_t m;
    int64_t trials;
    uint64_t seed;
    int threads;
} rqc_localize_config;

typedef struct rqc_tiny_exact_config {
    int n;
    int m;
    uint64_t seed;
    rqc_twirl twirl;
    int theta_nodes;
    int haar_samples;
    const char* outcomes; /* NULL or "": all outcome strings */
} rqc_tiny_exact_config;

typedef struct rqc_sweep_config {
    const int* n_values;
    size_t n_count;
    const double* epsilon_values;
    size_t epsilon_count;
    int64_t trials;
    uint64_t seed;
    int threads;
} rqc_sweep_config;

typedef struct rqc_end_to_end_config {
    int n;
    int64_t m;
    uint64_t seed;
    int measurements_per_step;
} rqc_end_to_end_config;

typedef struct rqc_verify_config {
    uint64_t seed;
    int threads;
} rqc_verify_config;

RQC_API void rqc_walk_config_default(rqc_walk_config* config);
RQC_API void rqc_growth_quantum_config_default(rqc_growth_quantum_config* config);
RQC_API void rqc_localize_config_default(rqc_localize_config* config);
RQC_API void rqc_tiny_exact_config_default(rqc_tiny_exact_config* config);
RQC_API void rqc_sweep_config_default(rqc_sweep_config* config);
RQC_API void rqc_end_to_end_config_default(rqc_end_to_end_config* config);
RQC_API void rqc_verify_config_default(rqc_verify_config* config);

RQC_API rqc_status rqc_walk(const rqc_walk_config* config, rqc_report** out);
RQC_API rqc_status rqc_growth_quantum(const rqc_growth_quantum_config* config, rqc_report** out);
RQC_API rqc_status rqc_localize(const rqc_localize_config* config, rqc_report** out);
RQC_API rqc_status rqc_tiny_exact(const rqc_tiny_exact_config* config, rqc_report** out);
RQC_API rqc_status rqc_sweep(const rqc_sweep_config* config, rqc_report** out);
RQC_API rqc_status rqc_end_to_end(const rqc_end_to_end_config* config, rqc_report** out);
/* all_passed may be NULL. */
RQC_API rqc_status rqc_verify(const rqc_verify_config* config, rqc_report** out, int* all_passed);

/* ---- reports ---- */

/* path NULL, "" or "-" writes to standard output. */
RQC_API rqc_status rqc_report_write(const rqc_report* report, rqc_format format, const char* path);
/* Params and summary only, as JSON. */
RQC_API rqc_status rqc_report_write_summary(const rqc_report* report, const char* path);
/* *out is released with rqc_free_string. */
RQC_API rqc_status rqc_report_render(const rqc_report* report, rqc_format format, char** out);
RQC_API rqc_status rqc_report_parse_json(const char* text, rqc_report** out);
RQC_API int rqc_report_equal(const rqc_report* a, const rqc_report* b);
RQC_API const char* rqc_report_kind(const rqc_report* report);
RQC_API size_t rqc_report_row_count(const rqc_report* report);
/* Numeric view of a summary field: booleans as 0/1, rationals as their float. */
RQC_API rqc_status rqc_report_summary_double(const rqc_report* report, const char* key, double* out);
/* Text form of a summary field, as written to CSV. */
RQC_API rqc_status rqc_report_summary_text(const rqc_report* report, const char* key, char** out);
RQC_API void rqc_report_free(rqc_report* report);
RQC_API void rqc_free_string(char* s);

/* ---- scalar entry points ---- */

/* Rationals come back as "p/q" in *text (may be NULL) and as a double. */
RQC_API rqc_status rqc_triplet_probability(int k, double* value, char** text);
RQC_API rqc_status rqc_absorption_probability(int n, double* value, char** text);
RQC_API rqc_status rqc_expected_steps(int n, double* value, char** text);
/* log T(a, b) always; *text only when a + b is within the exact range. */
RQC_API rqc_status rqc_t_integral(int64_t a, int64_t b, double* log_value, char** text);

typedef struct rqc_posterior {
    double mean;
    double mean_approx;
    double second_moment;
    double variance_central;
    double variance_approx;
    double sigma;
    int exact_arithmetic;
} rqc_posterior;

RQC_API rqc_status rqc_posterior_summary(int64_t n1, int64_t m, rqc_posterior* out);
RQC_API rqc_status rqc_trace_distance_q(double q1, double q2, double* out);
RQC_API rqc_status rqc_trace_distance_bound(double q1, double q2, double* out);
RQC_API rqc_status rqc_ensemble_error(int64_t n1, int64_t m, int n, double* out);
RQC_API rqc_status rqc_ensemble_error_bound(int n, int64_t m, double* out);
/* On RQC_ERR_CAPACITY *log_m (if non-NULL) still holds log M. */
RQC_API rqc_status rqc_required_m(int n, double epsilon, int64_t* out, double* log_m);

#ifdef __cplusplus
}
#endif

#endif
