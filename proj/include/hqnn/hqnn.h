// Copyright 2026 The hqnn Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the hqnn library. Every call returns an hqnn_status;
 * on failure hqnn_last_error() describes the problem for the calling
 * thread. Strings returned through char** are owned by the caller and
 * released with hqnn_string_free().
 */
#ifndef HQNN_H
#define HQNN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(HQNN_BUILDING_LIBRARY)
#define HQNN_API __declspec(dllexport)
#else
#define HQNN_API __declspec(dllimport)
#endif
#else
#define HQNN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hqnn_status {
    HQNN_OK = 0,
    HQNN_ERR_CONTRACT = 1,   /* invalid argument or precondition */
    HQNN_ERR_INPUT = 2,      /* unreadable file, bad CSV or config */
    HQNN_ERR_NUMERIC = 3,    /* non-finite loss or gradient */
    HQNN_ERR_RESOURCE = 4,   /* qubit ceiling or Fock element budget */
    HQNN_ERR_TRUNCATION = 5, /* Fock leakage above tolerance */
    HQNN_ERR_INTERNAL = 6
} hqnn_status;

typedef struct hqnn_state hqnn_state;
typedef struct hqnn_circuit hqnn_circuit;

HQNN_API const char *hqnn_version(void);
HQNN_API const char *hqnn_last_error(void);
HQNN_API void hqnn_string_free(char *str);

/* Statevector: wire 0 is the most significant bit of the basis index. */
HQNN_API hqnn_status hqnn_state_create(size_t n_qubits, hqnn_state **out);
HQNN_API void hqnn_state_destroy(hqnn_state *state);
HQNN_API hqnn_status hqnn_state_num_qubits(const hqnn_state *state, size_t *out);
/* Writes 2^n interleaved (re, im) pairs; `len` counts doubles. */
HQNN_API hqnn_status hqnn_state_amplitudes(const hqnn_state *state, double *out, size_t len);
/* Gate names: RX RY RZ Rot H CNOT CZ. */
HQNN_API hqnn_status hqnn_state_apply_gate(hqnn_state *state, const char *gate,
                                           const size_t *wires, size_t n_wires,
                                           const double *angles, size_t n_angles);
HQNN_API hqnn_status hqnn_state_expectation_z(const hqnn_state *state, size_t wire, double *out);
HQNN_API hqnn_status hqnn_state_meyer_wallach(const hqnn_state *state, double *out);

/* Circuits with symbolic parameter slots. */
HQNN_API hqnn_status hqnn_circuit_create(size_t n_qubits, hqnn_circuit **out);
/* entangler: "cnot", "cz" or "none". */
HQNN_API hqnn_status hqnn_circuit_strongly_entangling(size_t n_wires, size_t n_layers,
                                                      const char *entangler,
                                                      hqnn_circuit **out);
HQNN_API void hqnn_circuit_destroy(hqnn_circuit *circuit);
/* Each angle is bound to parameter slot `slots[i]`. */
HQNN_API hqnn_status hqnn_circuit_add_gate(hqnn_circuit *circuit, const char *gate,
                                           const size_t *wires, size_t n_wires,
                                           const size_t *slots, size_t n_slots);
HQNN_API hqnn_status hqnn_circuit_num_params(const hqnn_circuit *circuit, size_t *out);
HQNN_API hqnn_status hqnn_circuit_run(const hqnn_circuit *circuit, const double *params,
                                      size_t n_params, hqnn_state **out);
/* Parameter-shift Jacobian of <Z_w> for every wire, row-major (n_qubits x n_params). */
HQNN_API hqnn_status hqnn_circuit_jacobian(const hqnn_circuit *circuit, const double *params,
                                           size_t n_params, double *out, size_t len);
HQNN_API hqnn_status hqnn_circuit_expressibility(const hqnn_circuit *circuit, size_t samples,
                                                 size_t bins, uint64_t seed, double *out);
HQNN_API hqnn_status hqnn_circuit_entangling_capability(const hqnn_circuit *circuit,
                                                        size_t samples, uint64_t seed,
                                                        double *out);

/* Experiment commands: JSON config in, JSON summary out. */
HQNN_API hqnn_status hqnn_config_load(const char *path, char **config_json);
HQNN_API hqnn_status hqnn_data_prepare(const char *config_json, char **result_json);
HQNN_API hqnn_status hqnn_train(const char *config_json, char **result_json);
/* shots == 0 evaluates exact expectations. */
HQNN_API hqnn_status hqnn_predict(const char *manifest_path, const char *input_csv,
                                  const char *output_dir, size_t shots, char **result_json);
HQNN_API hqnn_status hqnn_descriptors(const char *config_json, char **result_json);

#ifdef __cplusplus
}
#endif

#endif /* HQNN_H */
