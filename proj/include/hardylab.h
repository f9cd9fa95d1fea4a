/*
 * Copyright 2026 The hardylab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libhardylab.
 *
 * Every fallible call returns an hl_status; on failure the message is
 * available from hl_last_error() on the same thread until the next call.
 * Objects are opaque and owned by the caller once returned; strings returned
 * through char** are released with hl_string_free. const char* accessors on
 * a report stay valid until the report is destroyed.
 */

#ifndef HARDYLAB_H
#define HARDYLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HL_API __declspec(dllexport)
#else
#define HL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hl_status {
  HL_OK = 0,
  HL_E_INVALID_ARGUMENT = 1,
  HL_E_SIZE_MISMATCH = 2,
  HL_E_NOT_ANALYTIC = 3,
  HL_E_NOT_REAL = 4,
  HL_E_DOMAIN = 5,
  HL_E_DEGENERATE = 6,
  HL_E_REGRESSION = 7,
  HL_E_CONTRACT = 8,
  HL_E_IO = 9,
  HL_E_PARSE = 10,
  HL_E_NULL = 11,
  HL_E_INTERNAL = 99
} hl_status;

typedef struct hl_function hl_function;
typedef struct hl_ensemble hl_ensemble;
typedef struct hl_report hl_report;

HL_API const char* hl_version(void);
HL_API const char* hl_status_string(hl_status status);
HL_API const char* hl_last_error(void);
HL_API void hl_string_free(char* s);

/* Sampled functions on the n-point midpoint grid of the circle. im may be
 * NULL for a real function. n must be a power of two >= 8. */
HL_API hl_status hl_function_create(size_t n, const double* re, const double* im,
                                    hl_function** out);
HL_API hl_status hl_function_from_json(const char* json, hl_function** out);
HL_API hl_status hl_function_to_json(const hl_function* f, char** out);
HL_API hl_status hl_function_to_csv(const hl_function* f, char** out);
HL_API void hl_function_destroy(hl_function* f);
HL_API size_t hl_function_size(const hl_function* f);
HL_API hl_status hl_function_samples(const hl_function* f, double* re, double* im);
/* Conjugate function of a real input (HL_E_NOT_REAL otherwise). */
HL_API hl_status hl_function_conjugate(const hl_function* f, hl_function** out);
/* Drops the negative Fourier modes. */
HL_API hl_status hl_function_riesz_project(const hl_function* f, hl_function** out);
/* Quadrature L^p norm; p = INFINITY gives the max. */
HL_API hl_status hl_function_norm(const hl_function* f, double p, double* out);

/* Brownian path ensembles. The config is a SimConfig JSON object. */
HL_API hl_status hl_ensemble_sample(const char* sim_config_json, hl_ensemble** out);
HL_API void hl_ensemble_destroy(hl_ensemble* e);
HL_API size_t hl_ensemble_size(const hl_ensemble* e);
HL_API hl_status hl_ensemble_exit(const hl_ensemble* e, size_t path, double* re, double* im,
                                  double* time);
/* format: "binary" (little-endian float64 pairs, path-major) or "csv". */
HL_API hl_status hl_ensemble_write_checkpoint(const hl_ensemble* e, const char* path,
                                              const char* format);
/* Largest absolute difference between a binary checkpoint and the ensemble. */
HL_API hl_status hl_ensemble_compare_checkpoint(const hl_ensemble* e, const char* path,
                                                double* max_difference);

/* Experiments: decompose, lemma12, kfunc, simulate, interpolate, oracle.
 * command may be NULL when the config names it. seed_override may be NULL. */
HL_API hl_status hl_config_validate(const char* command, const char* config_json,
                                    const uint64_t* seed_override);
HL_API hl_status hl_run(const char* command, const char* config_json,
                        const uint64_t* seed_override, hl_report** out);
HL_API void hl_report_destroy(hl_report* r);
HL_API int hl_report_passed(const hl_report* r);
HL_API const char* hl_report_command(const hl_report* r);
/* The config's format ("json" or "csv"). */
HL_API const char* hl_report_format(const hl_report* r);
HL_API const char* hl_report_json(const hl_report* r);
HL_API const char* hl_report_csv(const hl_report* r);
HL_API const char* hl_report_summary(const hl_report* r);
/* Writes <command>.<format>, <command>_summary.txt and any checkpoint into
 * out_dir, each through a temporary file and a rename. format NULL uses the
 * config's. The written paths come back newline-separated in *written when
 * written is not NULL. */
HL_API hl_status hl_report_write(const hl_report* r, const char* out_dir, const char* format,
                                 char** written);

#ifdef __cplusplus
}
#endif

#endif /* HARDYLAB_H */
