/* Copyright 2026 The cpk developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License"); you may
 * not use this file except in compliance with the License. You may obtain
 * a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
 * WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
 * License for the specific language governing permissions and limitations
 * under the License.
 */

/* C interface to the cpk shared library. All functions return a status
 * code; on failure cpk_last_error() carries a thread-local message.
 * Strings returned through out-parameters are owned by the caller and must
 * be released with cpk_string_free(); handles with the matching *_free().
 */

#ifndef CPK_CAPI_H
#define CPK_CAPI_H

#include <stdint.h>

#if defined(_WIN32)
#define CPK_API __declspec(dllexport)
#else
#define CPK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef int32_t cpk_status;

enum {
  CPK_OK = 0,
  CPK_ERR_PARSE = 1,    /* malformed serialized input */
  CPK_ERR_INVALID = 2,  /* precondition violation */
  CPK_ERR_NUMERIC = 3,  /* snapping/normalization/range failure */
  CPK_ERR_INTERNAL = 4, /* unexpected failure */
};

typedef struct cpk_state cpk_state; /* two-time state with its party layout */
typedef struct cpk_table cpk_table; /* exact rational probability table */
typedef struct cpk_pm cpk_pm;       /* process matrix */

CPK_API const char* cpk_version(void);
CPK_API const char* cpk_last_error(void);
CPK_API void cpk_string_free(char* text);

/* Two-time states. The only builtin scenario is "cyclic3". */
CPK_API cpk_status cpk_state_builtin(const char* scenario, cpk_state** out_state);
CPK_API cpk_status cpk_state_from_json(const char* json_text, cpk_state** out_state);
CPK_API cpk_status cpk_state_to_json(const cpk_state* state, char** out_json);
CPK_API void cpk_state_free(cpk_state* state);

/* Simulation. instruments_json may be NULL to use the builtin
 * measure-and-conditionally-flip instruments for the state's layout. */
CPK_API cpk_status cpk_simulate(const cpk_state* state,
                                const char* instruments_json,
                                cpk_table** out_table);

CPK_API cpk_status cpk_table_from_json(const char* json_text, cpk_table** out_table);
CPK_API cpk_status cpk_table_to_json(const cpk_table* table, char** out_json);
CPK_API cpk_status cpk_table_render(const cpk_table* table, char** out_text);
CPK_API void cpk_table_free(cpk_table* table);

/* Verification reports are JSON with a top-level "pass" flag. */
CPK_API cpk_status cpk_verify_state(const cpk_state* state, uint32_t seed,
                                    int32_t random_samples, double tolerance,
                                    char** out_report_json);
CPK_API cpk_status cpk_verify_pm(const cpk_pm* process, uint32_t seed,
                                 int32_t random_samples, double tolerance,
                                 char** out_report_json);

/* Classical-polytope vertices (n_parties must be 3) and certification.
 * vertices_json may be NULL, in which case vertices are enumerated on the
 * fly. The report carries "in_nbts_polytope", "classical", the certificate,
 * extremality, symmetry and last-mover results. */
CPK_API cpk_status cpk_vertices(int32_t n_parties, char** out_vertices_json);
CPK_API cpk_status cpk_certify(const cpk_table* table, const char* vertices_json,
                               char** out_report_json);

/* Classical stochastic matrix of a channel sandwiched between
 * computational-basis measurements. */
CPK_API cpk_status cpk_sandwich(const char* kraus_json, char** out_stochastic_json);

/* Process matrices and the two-time-state isomorphism. */
CPK_API cpk_status cpk_pm_from_json(const char* json_text, cpk_pm** out_process);
CPK_API cpk_status cpk_pm_to_json(const cpk_pm* process, char** out_json);
CPK_API cpk_status cpk_pm_to_state(const cpk_pm* process, cpk_state** out_state);
CPK_API cpk_status cpk_state_to_pm(const cpk_state* state, cpk_pm** out_process);
CPK_API void cpk_pm_free(cpk_pm* process);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CPK_CAPI_H */
