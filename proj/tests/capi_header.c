/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
/* Plain C consumer of the public header: it must compile as C and link
 * against the shared library alone. */
#include "hubo/hubo.h"

#include <stdio.h>

#define CHECK(expr)                                                            \
  do {                                                                         \
    if (!(expr)) {                                                             \
      fprintf(stderr, "%s:%d: %s failed: %s\n", __FILE__, __LINE__, #expr,     \
              hubo_last_error());                                              \
      return 1;                                                                \
    }                                                                          \
  } while (0)

int main(void) {
  hubo_instance* inst = NULL;
  hubo_problem* problem = NULL;
  hubo_resources r;
  size_t qubits = 0;

  CHECK(hubo_instance_builtin("gap", 0.0, &inst) == HUBO_OK);
  CHECK(hubo_encode(inst, HUBO_ENCODING_QUBO, 0.0, &problem) == HUBO_OK);
  CHECK(hubo_problem_num_qubits(problem, &qubits) == HUBO_OK && qubits == 20);
  CHECK(hubo_layer_resources(problem, HUBO_STRATEGY_CHAIN, 1, &r) == HUBO_OK);
  CHECK(r.cnot_per_layer == 140 && r.rz_per_layer == 90);
  hubo_problem_free(problem);
  CHECK(hubo_encode(inst, HUBO_ENCODING_HUBO, 0.0, &problem) == HUBO_OK);
  CHECK(hubo_layer_resources(problem, HUBO_STRATEGY_CHAIN, 1, &r) == HUBO_OK);
  CHECK(r.rz_per_layer == 27);
  CHECK(hubo_encode(NULL, HUBO_ENCODING_HUBO, 0.0, &problem) == HUBO_ERR_INVALID_ARGUMENT);
  hubo_problem_free(problem);
  hubo_instance_free(inst);
  printf("C header check passed (library %s)\n", hubo_version());
  return 0;
}
