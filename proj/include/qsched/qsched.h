// Copyright 2026 The qsched Authors
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

/* C interface to the qsched circuit scheduler. All objects are opaque and
 * owned by the caller once returned; release them with the matching _free
 * function. Every fallible call returns a qs_status; on failure
 * qs_last_error() holds a message for the calling thread. */
#ifndef QSCHED_QSCHED_H_
#define QSCHED_QSCHED_H_

#include <stddef.h>
#include <stdint.h>

#if defined(QSCHED_BUILDING_LIBRARY)
#define QS_API __attribute__((visibility("default")))
#else
#define QS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qs_status {
  QS_OK = 0,
  QS_ERR_SYNTAX = 1,
  QS_ERR_UNSUPPORTED_GATE = 2,
  QS_ERR_UNSUPPORTED_CELL = 3,
  QS_ERR_UNSUPPORTED_LAYOUT = 4,
  QS_ERR_INDEX = 5,
  QS_ERR_VALIDATION = 6,
  QS_ERR_TOO_WIDE = 7,
  QS_ERR_EMPTY_BATCH = 8,
  QS_ERR_LENGTH_MISMATCH = 9,
  QS_ERR_CAPACITY_EXCEEDED = 10,
  QS_ERR_INVALID_SHOTS = 11,
  QS_ERR_WIDTH_MISMATCH = 12,
  QS_ERR_EMPTY_DISTRIBUTION = 13,
  QS_ERR_BACKEND = 14,
  QS_ERR_NOT_FOUND = 15,
  QS_ERR_IO = 16,
  QS_ERR_CONNECTION = 17,
  QS_ERR_API = 18,
  QS_ERR_INVALID_ARGUMENT = 19,
  QS_ERR_INTERNAL = 20
} qs_status;

typedef struct qs_string qs_string;
typedef struct qs_circuit qs_circuit;
typedef struct qs_service qs_service;

QS_API const char* qs_status_name(qs_status status);
/* Message of the last failure on this thread; "" if none. */
QS_API const char* qs_last_error(void);
QS_API const char* qs_version(void);

/* Strings returned by the library. */
QS_API const char* qs_string_data(const qs_string* s);
QS_API size_t qs_string_size(const qs_string* s);
QS_API void qs_string_free(qs_string* s);

/* Circuits. */
QS_API qs_status qs_circuit_parse_qasm(const char* text, qs_circuit** out);
QS_API qs_status qs_circuit_parse_quirk(const char* url_or_json, qs_circuit** out);
/* Format chosen by extension: .qasm, otherwise Quirk. */
QS_API qs_status qs_circuit_load_file(const char* path, qs_circuit** out);
QS_API void qs_circuit_free(qs_circuit* c);
QS_API size_t qs_circuit_width(const qs_circuit* c);
QS_API size_t qs_circuit_depth(const qs_circuit* c);
QS_API size_t qs_circuit_num_clbits(const qs_circuit* c);
QS_API size_t qs_circuit_num_instructions(const qs_circuit* c);
QS_API qs_status qs_circuit_to_qasm(const qs_circuit* c, qs_string** out);

/* Samples `shots` outcomes on the statevector simulator. The result is the
 * counts JSON {"num_bits", "total_shots", "counts"}. */
QS_API qs_status qs_simulate(const qs_circuit* c, uint64_t shots, uint64_t seed,
                             double depolarizing_prob, double readout_flip_prob,
                             qs_string** counts_json);

/* Distances between two counts JSON documents (either the wrapped form above
 * or a bare {"bitstring": count} object). */
QS_API qs_status qs_hellinger(const char* counts_a, const char* counts_b, double* out);
QS_API qs_status qs_wasserstein(const char* counts_a, const char* counts_b, double* out);

/* Service configuration: defaults, then `path` (may be NULL), then the
 * QSCHED_* environment variables. Returned as JSON. */
QS_API qs_status qs_config_load(const char* path, qs_string** config_json);

/* Creates a service from a config JSON (as produced by qs_config_load, with
 * any edits). Replays the journal if one is configured. */
QS_API qs_status qs_service_create(const char* config_json, qs_service** out);
/* Starts the dispatcher, binds the configured listen address and blocks until
 * qs_service_stop(). */
QS_API qs_status qs_service_run(qs_service* s);
/* Bound port after qs_service_run has bound; 0 before. */
QS_API int qs_service_port(const qs_service* s);
/* Safe to call from another thread or a signal-handling thread. */
QS_API void qs_service_stop(qs_service* s);
QS_API void qs_service_free(qs_service* s);

/* HTTP client. `server` is "host:port" or "http://host:port". */
QS_API qs_status qs_client_submit(const char* server, const char* format, const char* payload,
                                  uint64_t shots, const char* name, qs_string** job_id);
/* GET `path`; the HTTP status is stored in *http_status and the body in
 * *body. Returns QS_OK for any HTTP reply, QS_ERR_CONNECTION otherwise. */
QS_API qs_status qs_client_get(const char* server, const char* path, int* http_status,
                               qs_string** body);

/* Stand-in noise level for bench runs when no device calibration is known.
 * A placeholder, not a measured property of any hardware. */
#define QS_PLACEHOLDER_NOISE 0.01

/* Benchmark. `config_json` keys: corpus_dir, capacity, shots, seed, output,
 * parallel, depolarizing_prob, readout_flip_prob. The report JSON holds
 * per-job distances, means, batches, log and the CSV text. */
QS_API qs_status qs_bench_run(const char* config_json, qs_string** report_json);

#ifdef __cplusplus
}
#endif

#endif /* QSCHED_QSCHED_H_ */
