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

/* Smoke test of the C interface, compiled as C and linked against liblproth. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "lproth/lproth.h"

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                  \
    }                                                              \
  } while (0)

int main(void) {
  double v = 0.0;
  const double y[2] = {3.0, -4.0};
  double grid[2 * 8];
  lproth_config* cfg = NULL;
  lproth_report* rep = NULL;
  size_t i, n;
  int pass_all = 1;

  EXPECT(strcmp(lproth_version(), "1.0.0") == 0);

  EXPECT(lproth_lp_norm(y, 2, 2.0, &v) == LPROTH_OK);
  EXPECT(fabs(v - 5.0) < 1e-14);
  EXPECT(lproth_lp_norm(y, 2, 0.5, &v) == LPROTH_E_INVALID_ARGUMENT);
  EXPECT(strlen(lproth_last_error()) > 0);
  EXPECT(lproth_lp_norm(NULL, 2, 2.0, &v) == LPROTH_E_INVALID_ARGUMENT);

  /* Constant 1 on Z_8: U3 sum = 8^4, norm = 8^{1/2}. */
  for (i = 0; i < 8; ++i) {
    grid[2 * i] = 1.0;
    grid[2 * i + 1] = 0.0;
  }
  EXPECT(lproth_u3_norm(grid, 8, 1, &v) == LPROTH_OK);
  EXPECT(fabs(v - sqrt(8.0)) < 1e-12);
  EXPECT(lproth_u3_norm(grid, 8, 3, &v) == LPROTH_E_INVALID_ARGUMENT);

  EXPECT(lproth_kernel_mass(2.0, 2, 0.01, &v) == LPROTH_OK);
  EXPECT(fabs(v - 2.0 * M_PI * M_PI) < 1e-3 * v); /* small-eps limit 2 pi * pi */

  EXPECT(lproth_oscillatory_integral(2.0, 50.0, &v) == LPROTH_OK);
  {
    double v0 = 0.0;
    EXPECT(lproth_oscillatory_integral(2.0, 0.0, &v0) == LPROTH_OK);
    EXPECT(fabs(v - v0) < 1e-9 * v0);
  }

  /* Configuration handling. */
  EXPECT(lproth_config_new(&cfg) == LPROTH_OK);
  EXPECT(lproth_config_key_count() > 5);
  EXPECT(lproth_config_key(lproth_config_key_count()) == NULL);
  EXPECT(lproth_config_validate(cfg) == LPROTH_E_USAGE); /* suite missing */
  EXPECT(strcmp(lproth_last_error_key(), "suite") == 0);
  EXPECT(lproth_config_set(cfg, "nonsense", "1") == LPROTH_E_USAGE);
  EXPECT(strcmp(lproth_last_error_key(), "nonsense") == 0);
  EXPECT(lproth_config_set(cfg, "suite", "gowers") == LPROTH_OK);
  EXPECT(lproth_config_set(cfg, "seed", "5") == LPROTH_OK);
  EXPECT(lproth_config_validate(cfg) == LPROTH_OK);
  EXPECT(lproth_config_load(cfg, "/nonexistent/lproth.cfg") == LPROTH_E_USAGE);

  /* A full run through the handle API. */
  EXPECT(lproth_run(cfg, &rep) == LPROTH_OK);
  if (rep) {
    n = lproth_report_record_count(rep);
    EXPECT(n > 0);
    EXPECT(lproth_report_failed_count(rep) == 0);
    for (i = 0; i < n; ++i) {
      const char *suite = NULL, *name = NULL, *anchor = NULL;
      int pass = 0;
      EXPECT(lproth_report_record(rep, i, &suite, &name, &anchor, &pass) == LPROTH_OK);
      EXPECT(suite && strcmp(suite, "gowers") == 0);
      EXPECT(name && strlen(name) > 0);
      EXPECT(anchor && strlen(anchor) > 0);
      pass_all = pass_all && pass;
    }
    EXPECT(pass_all);
    EXPECT(lproth_report_record(rep, n, NULL, NULL, NULL, NULL) == LPROTH_E_INVALID_ARGUMENT);
    EXPECT(strstr(lproth_report_json(rep), "\"records\"") != NULL);
    EXPECT(strncmp(lproth_report_csv(rep), "index,", 6) == 0);
    lproth_report_free(rep);
  }
  lproth_config_free(cfg);

  EXPECT(strstr(lproth_suite_listing(), "counterexamples") != NULL);
  EXPECT(strstr(lproth_report_schema(), "\"records\"") != NULL);

  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("C API smoke test passed\n");
  return 0;
}
