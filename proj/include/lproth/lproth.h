/* Copyright 2026 The lproth Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of liblproth. Handles are opaque; every fallible call returns an
 * lproth_status and leaves a message in lproth_last_error() (per thread). */

#ifndef LPROTH_LPROTH_H_
#define LPROTH_LPROTH_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define LPROTH_API __attribute__((visibility("default")))
#else
#define LPROTH_API
#endif

typedef enum lproth_status {
  LPROTH_OK = 0,
  LPROTH_E_USAGE = 1,         /* bad configuration key or value */
  LPROTH_E_CHECKS_FAILED = 2, /* a suite ran and some checks failed */
  LPROTH_E_INTERNAL = 3,      /* budget, quadrature or I/O failure */
  LPROTH_E_INVALID_ARGUMENT = 4
} lproth_status;

typedef struct lproth_config lproth_config;
typedef struct lproth_report lproth_report;

LPROTH_API const char* lproth_version(void);
LPROTH_API const char* lproth_last_error(void);
/* Configuration key named by the last usage error ("" if none). */
LPROTH_API const char* lproth_last_error_key(void);

LPROTH_API lproth_status lproth_config_new(lproth_config** out);
LPROTH_API void lproth_config_free(lproth_config* cfg);
LPROTH_API lproth_status lproth_config_set(lproth_config* cfg, const char* key, const char* value);
/* Flat "key = value" file with '#' comments. */
LPROTH_API lproth_status lproth_config_load(lproth_config* cfg, const char* path);
LPROTH_API lproth_status lproth_config_validate(const lproth_config* cfg);
LPROTH_API size_t lproth_config_key_count(void);
LPROTH_API const char* lproth_config_key(size_t index);

/* Runs the configured suite. On LPROTH_OK or LPROTH_E_CHECKS_FAILED *out holds
 * a report the caller frees. */
LPROTH_API lproth_status lproth_run(const lproth_config* cfg, lproth_report** out);
LPROTH_API void lproth_report_free(lproth_report* rep);
LPROTH_API size_t lproth_report_record_count(const lproth_report* rep);
LPROTH_API size_t lproth_report_failed_count(const lproth_report* rep);
/* Borrowed strings stay valid until the report is freed. */
LPROTH_API lproth_status lproth_report_record(const lproth_report* rep, size_t index,
                                              const char** suite, const char** name,
                                              const char** anchor, int* pass);
LPROTH_API const char* lproth_report_json(const lproth_report* rep);
LPROTH_API const char* lproth_report_csv(const lproth_report* rep);
/* Writes the report and its CSV sidecars into the configured directory. */
LPROTH_API lproth_status lproth_report_write(const lproth_report* rep);

LPROTH_API const char* lproth_suite_listing(void);
LPROTH_API const char* lproth_report_schema(void);

/* A few numerical entry points. */
LPROTH_API lproth_status lproth_lp_norm(const double* y, size_t d, double p, double* out);
LPROTH_API lproth_status lproth_kernel_mass(double p, int d, double epsilon, double* out);
LPROTH_API lproth_status lproth_oscillatory_integral(double p, double t, double* out);
/* U3 norm (counting measure) of a complex function on Z_M^d, values given as
 * interleaved (re, im) pairs in row-major order. */
LPROTH_API lproth_status lproth_u3_norm(const double* re_im, int M, int d, double* out);

#ifdef __cplusplus
}
#endif

#endif /* LPROTH_LPROTH_H_ */
