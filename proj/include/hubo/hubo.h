/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#ifndef HUBO_HUBO_H
#define HUBO_HUBO_H

/*
 * C interface to the hubo library.
 *
 * Objects are opaque handles released with their *_free function (NULL is
 * accepted). Every fallible call returns a hubo_status; on failure the
 * message of the calling thread's last error is available from
 * hubo_last_error() until the next failing call on that thread. Output
 * pointers are left untouched on failure.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(HUBO_BUILDING_LIBRARY)
#define HUBO_API __declspec(dllexport)
#else
#define HUBO_API __declspec(dllimport)
#endif
#else
#define HUBO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hubo_status {
  HUBO_OK = 0,
  HUBO_ERR_INVALID_ARGUMENT = 1, /* bad value, shape or null pointer */
  HUBO_ERR_OUT_OF_RANGE = 2,     /* index past the end of a result */
  HUBO_ERR_IO = 3,               /* file could not be read or written */
  HUBO_ERR_PARSE = 4,            /* malformed input file */
  HUBO_ERR_RUNTIME = 5,          /* computation failed */
  HUBO_ERR_NO_MEMORY = 6
} hubo_status;

typedef enum hubo_encoding { HUBO_ENCODING_QUBO = 0, HUBO_ENCODING_HUBO = 1 } hubo_encoding;

typedef enum hubo_strategy {
  HUBO_STRATEGY_CHAIN = 0,
  HUBO_STRATEGY_GRAY = 1,
  HUBO_STRATEGY_BEST = 2
} hubo_strategy;

typedef enum hubo_descent { HUBO_DESCENT_LBFGS = 0, HUBO_DESCENT_STEEPEST = 1 } hubo_descent;

typedef struct hubo_instance hubo_instance;
typedef struct hubo_problem hubo_problem;
typedef struct hubo_circuit hubo_circuit;
typedef struct hubo_benchmark hubo_benchmark;

HUBO_API const char* hubo_version(void);
HUBO_API const char* hubo_status_string(hubo_status status);
HUBO_API const char* hubo_last_error(void);

/* Encoding, strategy and descent names: "qubo", "hubo"; "chain", "gray",
 * "best"; "lbfgs", "steepest". */
HUBO_API hubo_status hubo_parse_encoding(const char* text, hubo_encoding* out);
HUBO_API hubo_status hubo_parse_strategy(const char* text, hubo_strategy* out);
HUBO_API hubo_status hubo_parse_descent(const char* text, hubo_descent* out);

/* ---- Instances ---------------------------------------------------------- */

HUBO_API hubo_status hubo_instance_load(const char* path, hubo_instance** out);
HUBO_API hubo_status hubo_instance_save(const hubo_instance* instance, const char* path);
/* Built-in benchmarks "gap", "mkcs" and "ip". penalty <= 0 selects the
 * default multiplier (ignored by "mkcs", which has no constraints). */
HUBO_API hubo_status hubo_instance_builtin(const char* name, double penalty, hubo_instance** out);
HUBO_API void hubo_instance_free(hubo_instance* instance);

HUBO_API hubo_status hubo_instance_shape(const hubo_instance* instance, size_t* num_variables,
                                         size_t* num_values);
HUBO_API hubo_status hubo_instance_hash(const hubo_instance* instance, uint64_t* out);
/* Objective (without constraint penalties) and feasibility of an assignment
 * of num_variables value indices. Either output may be NULL. */
HUBO_API hubo_status hubo_instance_evaluate(const hubo_instance* instance,
                                            const uint32_t* assignment, size_t length,
                                            double* objective, int* feasible);
/* Exhaustive optimum and worst feasible objective. argmin, when not NULL,
 * receives num_variables entries. cache_path may be NULL or empty. */
HUBO_API hubo_status hubo_instance_ground_truth(const hubo_instance* instance,
                                                const char* cache_path, double* c_min,
                                                double* c_max, uint32_t* argmin);

/* Copy with variable i fixed to value index v; its costs fold into the
 * remaining terms. */
HUBO_API hubo_status hubo_instance_fix(const hubo_instance* instance, size_t i, uint32_t v,
                                       hubo_instance** out);
/* Copy with variable i and every term touching it deleted. */
HUBO_API hubo_status hubo_instance_remove(const hubo_instance* instance, size_t i,
                                          hubo_instance** out);
/* Doubles the penalty of built-in "gap" or "ip", starting from `initial`,
 * until the ground state of the encoded Hamiltonian decodes to a feasible
 * assignment. */
HUBO_API hubo_status hubo_calibrate_penalty(const char* name, hubo_encoding encoding,
                                            double initial, size_t max_doublings, double* out);

/* ---- Encoded problems --------------------------------------------------- */

/* penalty <= 0 selects the default multiplier. */
HUBO_API hubo_status hubo_encode(const hubo_instance* instance, hubo_encoding encoding,
                                 double penalty, hubo_problem** out);
HUBO_API void hubo_problem_free(hubo_problem* problem);

HUBO_API hubo_status hubo_problem_num_qubits(const hubo_problem* problem, size_t* out);
/* Non-identity Pauli terms. */
HUBO_API hubo_status hubo_problem_num_terms(const hubo_problem* problem, size_t* out);
HUBO_API hubo_status hubo_problem_penalty(const hubo_problem* problem, double* out);
/* counts[k] = number of terms of order k for k < capacity; max_order (may
 * be NULL) receives the highest order present. */
HUBO_API hubo_status hubo_problem_order_census(const hubo_problem* problem, size_t* counts,
                                               size_t capacity, size_t* max_order);
/* <b|H|b> for a basis index. */
HUBO_API hubo_status hubo_problem_energy(const hubo_problem* problem, uint64_t basis,
                                         double* out);
/* Polynomial as text, one "coefficient qubit..." line per term. */
HUBO_API hubo_status hubo_problem_save(const hubo_problem* problem, const char* path);

/* ---- Circuits and resources --------------------------------------------- */

typedef struct hubo_resources {
  size_t num_qubits;
  size_t layers;
  size_t cnot_per_layer;
  size_t rz_per_layer;
  size_t rx_per_layer;
  size_t hadamard_init;
  size_t cnot_total;
  size_t single_qubit_total; /* H + RZ + RX */
  size_t total_gates;
} hubo_resources;

/* Full QAOA circuit with `layers` angle pairs in units of H. */
HUBO_API hubo_status hubo_compile(const hubo_problem* problem, const double* gammas,
                                  const double* betas, size_t layers, hubo_strategy strategy,
                                  hubo_circuit** out);
HUBO_API void hubo_circuit_free(hubo_circuit* circuit);
HUBO_API hubo_status hubo_circuit_resources(const hubo_circuit* circuit, size_t layers,
                                            hubo_resources* out);
HUBO_API hubo_status hubo_circuit_save(const hubo_circuit* circuit, const char* path);

/* Resources of a p-layer circuit without building it. */
HUBO_API hubo_status hubo_layer_resources(const hubo_problem* problem, hubo_strategy strategy,
                                          size_t layers, hubo_resources* out);
/* Dense worst-case per-layer counts for n variables with m >= 2 values. */
HUBO_API hubo_status hubo_scaling_formulas(size_t n, size_t m, hubo_encoding encoding,
                                           hubo_resources* out);

/* ---- Benchmarks ----------------------------------------------------------- */

typedef struct hubo_record {
  size_t run;
  size_t layers;
  uint64_t seed;
  double energy;
  double ratio;
  double ratio_sampled;
  double mean_objective;
  double feasible_probability;
  size_t iterations;
} hubo_record;

typedef void (*hubo_record_callback)(const hubo_record* record, void* user);

typedef struct hubo_benchmark_config {
  hubo_encoding encoding;
  hubo_strategy strategy; /* for resource counts */
  size_t max_layers;
  size_t runs;
  uint64_t seed;
  double penalty; /* <= 0 selects the default */
  size_t samples;
  size_t jobs;
  double stop_threshold; /* < 0 disables early stopping */
  /* Optimizer. */
  size_t grid;
  size_t max_iterations;
  double gradient_tolerance;
  double value_tolerance;
  int finite_difference; /* nonzero: finite differences instead of adjoint */
  double jitter;
  double perturbation;
  hubo_descent descent;
  size_t memory; /* L-BFGS correction pairs */
  /* Optional ground-truth cache file (NULL or empty disables it). */
  const char* truth_cache;
  /* Optional progress hook, serialized. */
  hubo_record_callback on_record;
  void* user;
} hubo_benchmark_config;

HUBO_API void hubo_benchmark_config_default(hubo_benchmark_config* config);
HUBO_API hubo_status hubo_benchmark_run(const hubo_instance* instance,
                                        const hubo_benchmark_config* config,
                                        hubo_benchmark** out);
HUBO_API void hubo_benchmark_free(hubo_benchmark* benchmark);

typedef struct hubo_layer_summary {
  size_t layers;
  size_t runs;
  hubo_resources resources;
  double mean_ratio;
  double std_ratio;
  double best_ratio;
  double mean_ratio_sampled;
  double mean_objective;
  double std_objective;
  double mean_feasible;
} hubo_layer_summary;

HUBO_API hubo_status hubo_benchmark_truth(const hubo_benchmark* benchmark, double* c_min,
                                          double* c_max);
HUBO_API hubo_status hubo_benchmark_penalty(const hubo_benchmark* benchmark, double* out);
HUBO_API hubo_status hubo_benchmark_num_layers(const hubo_benchmark* benchmark, size_t* out);
HUBO_API hubo_status hubo_benchmark_layer(const hubo_benchmark* benchmark, size_t index,
                                          hubo_layer_summary* out);
HUBO_API hubo_status hubo_benchmark_num_runs(const hubo_benchmark* benchmark, size_t* out);
/* Layers completed by one run. */
HUBO_API hubo_status hubo_benchmark_run_length(const hubo_benchmark* benchmark, size_t run,
                                               size_t* out);
/* Record of run `run` at layer index `index` (layers = index + 1). gammas
 * and betas, when not NULL, receive layers entries of circuit angles. */
HUBO_API hubo_status hubo_benchmark_record(const hubo_benchmark* benchmark, size_t run,
                                           size_t index, hubo_record* out, double* gammas,
                                           double* betas);

#ifdef __cplusplus
}
#endif

#endif /* HUBO_HUBO_H */
