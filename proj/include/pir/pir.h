/*
 * Copyright 2026 the pirsim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the pirsim library: private information retrieval from
 * replicated databases with download-optimal schemes, plus an audit harness
 * that verifies correctness, exact query-distribution privacy, and the
 * closed-form download cost.
 *
 * All functions returning pir_status leave outputs untouched on failure and
 * record a human-readable message retrievable via pir_last_error(). Strings
 * returned through char** are heap-allocated; release them with
 * pir_string_free(). Handles are opaque; release them with the matching
 * *_free function. Message indexes and positions are 1-based here and in
 * JSON documents that mirror the in-memory model; serialized wire bytes are
 * 0-based.
 */

#ifndef PIR_PIR_H
#define PIR_PIR_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define PIR_API __attribute__((visibility("default")))

typedef enum pir_status {
  PIR_OK = 0,
  PIR_ERROR_INVALID_ARGUMENT = 1,
  PIR_ERROR_BUDGET_EXCEEDED = 2,
  PIR_ERROR_PROTOCOL = 3,
  PIR_ERROR_IO = 4,
  PIR_ERROR_INTERNAL = 5
} pir_status;

/*
 * databases          N  - replicated, non-communicating databases
 * messages           K  - messages stored at every database
 * message_length     L  - symbols per message
 * message_alphabet   M  - message symbols lie in [0, M-1]
 * download_alphabet  M' - downloaded symbols lie in [0, M'-1]
 */
typedef struct pir_params {
  uint32_t databases;
  uint32_t messages;
  uint64_t message_length;
  uint64_t message_alphabet;
  uint64_t download_alphabet;
} pir_params;

typedef struct pir_store pir_store;
typedef struct pir_transcript pir_transcript;
typedef struct pir_audit_report pir_audit_report;

typedef enum pir_negative_control {
  PIR_CONTROL_NONE = 0,
  /* capacity segments skip the private position mapping */
  PIR_CONTROL_IDENTITY_PERMUTATIONS = 1,
  /* short segments use all-zero coefficient vectors */
  PIR_CONTROL_ZERO_COINS = 2
} pir_negative_control;

typedef struct pir_audit_options {
  uint64_t budget;      /* exhaustive-enumeration cap; 0 = 10^6 */
  uint64_t trials;      /* sampled-mode trials per index; 0 = 10^4 */
  double significance;  /* sampled-mode level; 0 = 1e-3 */
  uint64_t seed;
  pir_negative_control control;
} pir_audit_options;

PIR_API const char* pir_version(void);
PIR_API const char* pir_status_name(pir_status status);

/* Message for the most recent failure on this thread. */
PIR_API const char* pir_last_error(void);

PIR_API void pir_string_free(char* text);

/*
 * Cost summary as JSON: exact capacity, optimal download (or the
 * [lower, achieved] window for mismatched alphabets), greedy decomposition
 * and capacity attainment.
 */
PIR_API pir_status pir_cost_summary_json(const pir_params* params,
                                         char** out_json);

/* Symbolic query table of the deterministic plan at L = N^(K-1). */
PIR_API pir_status pir_demo_table(const pir_params* params, uint32_t theta,
                                  char** out_text);

/* Stores */
PIR_API pir_status pir_store_random(const pir_params* params, uint64_t seed,
                                    pir_store** out_store);
PIR_API pir_status pir_store_from_json(const char* json_text,
                                       pir_store** out_store);
PIR_API pir_status pir_store_to_json(const pir_store* store, char** out_json);
/* 1-based message index and position. */
PIR_API pir_status pir_store_symbol(const pir_store* store, uint32_t message,
                                    uint64_t position, uint64_t* out_symbol);
PIR_API void pir_store_free(pir_store* store);

/* Protocol runs */
PIR_API pir_status pir_run(const pir_params* params, uint32_t theta,
                           const pir_store* store, uint64_t seed,
                           pir_transcript** out_transcript);
PIR_API pir_status pir_transcript_json(const pir_transcript* transcript,
                                       char** out_json);
PIR_API pir_status pir_transcript_total_download(
    const pir_transcript* transcript, uint64_t* out_total);
/* Copies the decoded message (message_length symbols) into the buffer. */
PIR_API pir_status pir_transcript_decoded(const pir_transcript* transcript,
                                          uint64_t* buffer,
                                          uint64_t buffer_length);
PIR_API void pir_transcript_free(pir_transcript* transcript);

/* Audits */
PIR_API pir_status pir_audit_run(const pir_params* params,
                                 const pir_audit_options* options,
                                 pir_audit_report** out_report);
/* 1 when every verdict passed, 0 otherwise. */
PIR_API int pir_audit_passed(const pir_audit_report* report);
PIR_API pir_status pir_audit_json(const pir_audit_report* report,
                                  char** out_json);
PIR_API void pir_audit_report_free(pir_audit_report* report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PIR_PIR_H */
