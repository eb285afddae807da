// Copyright 2026 The qmcontrol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMCONTROL_QMC_H_
#define QMCONTROL_QMC_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(QMC_BUILDING_LIBRARY)
#define QMC_API __attribute__((visibility("default")))
#else
#define QMC_API
#endif

typedef enum qmc_status {
  QMC_OK = 0,
  QMC_ERR_INVALID_ARGUMENT = 1,
  QMC_ERR_PARSE = 2,
  QMC_ERR_INADMISSIBLE = 3,
  QMC_ERR_NUMERICAL = 4,
  QMC_ERR_INTERNAL = 5
} qmc_status;

typedef struct qmc_system qmc_system;

/* Message for the most recent failing call on this thread; "" if none. */
QMC_API const char* qmc_last_error(void);

QMC_API const char* qmc_version(void);

/* Builds a system from a JSON system document. With permissive != 0 a GKS
 * matrix that is not positive semidefinite is accepted (and reported by
 * qmc_analyze); otherwise it yields QMC_ERR_INADMISSIBLE. */
QMC_API qmc_status qmc_system_from_json(const char* text, int permissive, qmc_system** out);

/* params_json may be NULL or a JSON object of named nonnegative reals. */
QMC_API qmc_status qmc_system_from_preset(const char* name, const char* params_json,
                                          qmc_system** out);

QMC_API void qmc_system_free(qmc_system* sys);

/* Hilbert dimension N and coherence-vector length N^2 - 1. */
QMC_API int qmc_system_dimension(const qmc_system* sys);
QMC_API int qmc_system_num_controls(const qmc_system* sys);

/* System document as JSON. Free with qmc_string_free. */
QMC_API qmc_status qmc_system_to_json(const qmc_system* sys, char** out);

/* Analysis report as JSON. closure_tol <= 0 selects the default. */
QMC_API qmc_status qmc_analyze(const qmc_system* sys, double closure_tol, char** report);

/* controls_json: [{"duration": d, "u": [...]}, ...]. rho0 has N^2 - 1
 * entries. Writes the trajectory CSV. */
QMC_API qmc_status qmc_simulate(const qmc_system* sys, const char* controls_json,
                                const double* rho0, size_t rho0_len, int samples_per_segment,
                                char** csv);

typedef struct qmc_reachable_options {
  double horizon;
  int num_samples;
  uint64_t seed;
  double control_bound;
  int grid_points;
  int max_segments;
  unsigned threads;
} qmc_reachable_options;

QMC_API void qmc_reachable_defaults(qmc_reachable_options* opts);

/* Either output pointer may be NULL if not wanted. */
QMC_API qmc_status qmc_reachable(const qmc_system* sys, const double* rho0, size_t rho0_len,
                                 const qmc_reachable_options* opts, char** cloud_csv,
                                 char** stats_json);

/* Built-in invariant suite. *passed is 1 iff every item passed. */
QMC_API qmc_status qmc_verify(int strict_table, char** report, int* passed);

QMC_API void qmc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif  // QMCONTROL_QMC_H_
