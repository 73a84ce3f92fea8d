/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "hubo/hubo.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace {

struct InstanceDeleter {
  void operator()(hubo_instance* p) const { hubo_instance_free(p); }
};
struct ProblemDeleter {
  void operator()(hubo_problem* p) const { hubo_problem_free(p); }
};
struct CircuitDeleter {
  void operator()(hubo_circuit* p) const { hubo_circuit_free(p); }
};
struct BenchmarkDeleter {
  void operator()(hubo_benchmark* p) const { hubo_benchmark_free(p); }
};
using Instance = std::unique_ptr<hubo_instance, InstanceDeleter>;
using Problem = std::unique_ptr<hubo_problem, ProblemDeleter>;
using Circuit = std::unique_ptr<hubo_circuit, CircuitDeleter>;
using Benchmark = std::unique_ptr<hubo_benchmark, BenchmarkDeleter>;

Instance builtin(const char* name) {
  hubo_instance* raw = nullptr;
  EXPECT_EQ(hubo_instance_builtin(name, 0.0, &raw), HUBO_OK) << hubo_last_error();
  return Instance(raw);
}

Problem encoded(const hubo_instance* inst, hubo_encoding e) {
  hubo_problem* raw = nullptr;
  EXPECT_EQ(hubo_encode(inst, e, 0.0, &raw), HUBO_OK) << hubo_last_error();
  return Problem(raw);
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_NE(std::string(hubo_version()), "");
  EXPECT_STREQ(hubo_status_string(HUBO_OK), "ok");
  EXPECT_NE(std::string(hubo_status_string(HUBO_ERR_PARSE)), "");
  EXPECT_NE(std::string(hubo_status_string(static_cast<hubo_status>(99))), "");
}

TEST(CApi, ParseNames) {
  hubo_encoding e;
  EXPECT_EQ(hubo_parse_encoding("hubo", &e), HUBO_OK);
  EXPECT_EQ(e, HUBO_ENCODING_HUBO);
  hubo_strategy s;
  EXPECT_EQ(hubo_parse_strategy("gray", &s), HUBO_OK);
  EXPECT_EQ(s, HUBO_STRATEGY_GRAY);
  hubo_descent d;
  EXPECT_EQ(hubo_parse_descent("steepest", &d), HUBO_OK);
  EXPECT_EQ(d, HUBO_DESCENT_STEEPEST);
  EXPECT_EQ(hubo_parse_encoding("ternary", &e), HUBO_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(hubo_last_error()).find("ternary"), std::string::npos);
}

TEST(CApi, NullArgumentsAreRejected) {
  EXPECT_EQ(hubo_instance_builtin("mkcs", 0.0, nullptr), HUBO_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(hubo_instance_builtin(nullptr, 0.0, nullptr), HUBO_ERR_INVALID_ARGUMENT);
  size_t n = 7;
  EXPECT_EQ(hubo_instance_shape(nullptr, &n, nullptr), HUBO_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(n, 7u);
  hubo_instance_free(nullptr);
  hubo_problem_free(nullptr);
  hubo_circuit_free(nullptr);
  hubo_benchmark_free(nullptr);
}

TEST(CApi, ErrorCodesByKind) {
  hubo_instance* raw = nullptr;
  EXPECT_EQ(hubo_instance_load("/nonexistent/instance.txt", &raw), HUBO_ERR_IO);
  EXPECT_EQ(raw, nullptr);
  const std::string path = temp_path("hubo_capi_bad.txt");
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("[meta]\ntype = nothing\n", f);
    std::fclose(f);
  }
  EXPECT_EQ(hubo_instance_load(path.c_str(), &raw), HUBO_ERR_PARSE);
  std::filesystem::remove(path);
  EXPECT_EQ(hubo_instance_builtin("tsp", 0.0, &raw), HUBO_ERR_INVALID_ARGUMENT);
}

TEST(CApi, InstanceQueries) {
  Instance gap = builtin("gap");
  size_t n = 0, m = 0;
  ASSERT_EQ(hubo_instance_shape(gap.get(), &n, &m), HUBO_OK);
  EXPECT_EQ(n, 5u);
  EXPECT_EQ(m, 4u);
  double c_min = 0, c_max = 0;
  std::vector<uint32_t> argmin(n);
  ASSERT_EQ(hubo_instance_ground_truth(gap.get(), nullptr, &c_min, &c_max, argmin.data()),
            HUBO_OK);
  EXPECT_NEAR(c_max / c_min, 1.8646, 0.02 * 1.8646);
  double objective = 0;
  int feasible = 0;
  ASSERT_EQ(hubo_instance_evaluate(gap.get(), argmin.data(), n, &objective, &feasible), HUBO_OK);
  EXPECT_DOUBLE_EQ(objective, c_min);
  EXPECT_EQ(feasible, 1);
  EXPECT_EQ(hubo_instance_evaluate(gap.get(), argmin.data(), n - 1, &objective, nullptr),
            HUBO_ERR_INVALID_ARGUMENT);

  hubo_instance* fixed = nullptr;
  ASSERT_EQ(hubo_instance_fix(gap.get(), 4, argmin[4], &fixed), HUBO_OK);
  Instance fixed_owner(fixed);
  ASSERT_EQ(hubo_instance_shape(fixed, &n, nullptr), HUBO_OK);
  EXPECT_EQ(n, 4u);
  EXPECT_EQ(hubo_instance_fix(gap.get(), 9, 0, &fixed), HUBO_ERR_INVALID_ARGUMENT);

  hubo_instance* removed = nullptr;
  ASSERT_EQ(hubo_instance_remove(gap.get(), 0, &removed), HUBO_OK);
  Instance removed_owner(removed);
  uint64_t h1 = 0, h2 = 0;
  hubo_instance_hash(gap.get(), &h1);
  hubo_instance_hash(removed, &h2);
  EXPECT_NE(h1, h2);
}

TEST(CApi, SaveAndLoad) {
  Instance ip = builtin("ip");
  const std::string path = temp_path("hubo_capi_ip.txt");
  ASSERT_EQ(hubo_instance_save(ip.get(), path.c_str()), HUBO_OK);
  hubo_instance* raw = nullptr;
  ASSERT_EQ(hubo_instance_load(path.c_str(), &raw), HUBO_OK) << hubo_last_error();
  Instance back(raw);
  uint64_t a = 0, b = 0;
  hubo_instance_hash(ip.get(), &a);
  hubo_instance_hash(back.get(), &b);
  EXPECT_EQ(a, b);
  std::filesystem::remove(path);
}

TEST(CApi, EncodeAndCompile) {
  Instance mkcs = builtin("mkcs");
  Problem qubo = encoded(mkcs.get(), HUBO_ENCODING_QUBO);
  Problem hubo = encoded(mkcs.get(), HUBO_ENCODING_HUBO);
  size_t q = 0;
  hubo_problem_num_qubits(qubo.get(), &q);
  EXPECT_EQ(q, 20u);
  hubo_problem_num_qubits(hubo.get(), &q);
  EXPECT_EQ(q, 10u);
  size_t terms = 0;
  hubo_problem_num_terms(hubo.get(), &terms);
  EXPECT_EQ(terms, 27u);
  size_t census[8] = {}, max_order = 0;
  ASSERT_EQ(hubo_problem_order_census(hubo.get(), census, 8, &max_order), HUBO_OK);
  EXPECT_EQ(max_order, 4u);
  EXPECT_EQ(census[4], 9u);

  hubo_resources r;
  ASSERT_EQ(hubo_layer_resources(qubo.get(), HUBO_STRATEGY_CHAIN, 1, &r), HUBO_OK);
  EXPECT_EQ(r.cnot_per_layer, 132u);
  EXPECT_EQ(r.rz_per_layer, 86u);
  ASSERT_EQ(hubo_layer_resources(hubo.get(), HUBO_STRATEGY_CHAIN, 3, &r), HUBO_OK);
  EXPECT_EQ(r.cnot_total, 270u);

  const double gammas[] = {0.1, 0.2, 0.3}, betas[] = {0.3, 0.2, 0.1};
  hubo_circuit* raw = nullptr;
  ASSERT_EQ(hubo_compile(hubo.get(), gammas, betas, 3, HUBO_STRATEGY_CHAIN, &raw), HUBO_OK);
  Circuit circuit(raw);
  hubo_resources counted;
  ASSERT_EQ(hubo_circuit_resources(circuit.get(), 3, &counted), HUBO_OK);
  EXPECT_EQ(counted.total_gates, r.total_gates);
  EXPECT_EQ(hubo_compile(hubo.get(), gammas, nullptr, 3, HUBO_STRATEGY_CHAIN, &raw),
            HUBO_ERR_INVALID_ARGUMENT);

  double energy = -1;
  ASSERT_EQ(hubo_problem_energy(hubo.get(), 0, &energy), HUBO_OK);
  EXPECT_DOUBLE_EQ(energy, 9.0);
  EXPECT_EQ(hubo_problem_energy(hubo.get(), uint64_t{1} << 10, &energy),
            HUBO_ERR_OUT_OF_RANGE);

  ASSERT_EQ(hubo_scaling_formulas(5, 4, HUBO_ENCODING_QUBO, &r), HUBO_OK);
  EXPECT_EQ(r.num_qubits, 20u);
  EXPECT_EQ(hubo_scaling_formulas(5, 1, HUBO_ENCODING_QUBO, &r), HUBO_ERR_INVALID_ARGUMENT);
}

TEST(CApi, CalibratePenalty) {
  double lambda = 0;
  ASSERT_EQ(hubo_calibrate_penalty("ip", HUBO_ENCODING_QUBO, 0.01, 30, &lambda), HUBO_OK);
  EXPECT_GE(lambda, 0.01);
  EXPECT_EQ(hubo_calibrate_penalty("mkcs", HUBO_ENCODING_QUBO, 1.0, 30, &lambda),
            HUBO_ERR_INVALID_ARGUMENT);
}

namespace {

void count_records(const hubo_record*, void* user) { ++*static_cast<size_t*>(user); }

} // namespace

TEST(CApi, BenchmarkRoundTrip) {
  Instance mkcs = builtin("mkcs");
  hubo_instance* small = nullptr;
  ASSERT_EQ(hubo_instance_remove(mkcs.get(), 4, &small), HUBO_OK);
  Instance owner(small);
  hubo_benchmark_config c;
  hubo_benchmark_config_default(&c);
  EXPECT_EQ(c.max_iterations, 500u);
  EXPECT_EQ(c.descent, HUBO_DESCENT_LBFGS);
  c.encoding = HUBO_ENCODING_HUBO;
  c.max_layers = 2;
  c.runs = 3;
  c.samples = 200;
  c.max_iterations = 15;
  size_t seen = 0;
  c.on_record = count_records;
  c.user = &seen;
  hubo_benchmark* raw = nullptr;
  ASSERT_EQ(hubo_benchmark_run(small, &c, &raw), HUBO_OK) << hubo_last_error();
  Benchmark bench(raw);
  EXPECT_EQ(seen, 6u);
  size_t layers = 0, runs = 0, length = 0;
  hubo_benchmark_num_layers(raw, &layers);
  hubo_benchmark_num_runs(raw, &runs);
  hubo_benchmark_run_length(raw, 1, &length);
  EXPECT_EQ(layers, 2u);
  EXPECT_EQ(runs, 3u);
  EXPECT_EQ(length, 2u);
  hubo_layer_summary s;
  ASSERT_EQ(hubo_benchmark_layer(raw, 1, &s), HUBO_OK);
  EXPECT_EQ(s.layers, 2u);
  EXPECT_EQ(s.runs, 3u);
  EXPECT_GE(s.mean_ratio, 0.0);
  EXPECT_LE(s.mean_ratio, 1.0);
  EXPECT_EQ(hubo_benchmark_layer(raw, 2, &s), HUBO_ERR_OUT_OF_RANGE);
  hubo_record rec;
  double gammas[2], betas[2];
  ASSERT_EQ(hubo_benchmark_record(raw, 2, 1, &rec, gammas, betas), HUBO_OK);
  EXPECT_EQ(rec.run, 2u);
  EXPECT_EQ(rec.layers, 2u);
  EXPECT_EQ(hubo_benchmark_record(raw, 3, 0, &rec, nullptr, nullptr), HUBO_ERR_OUT_OF_RANGE);

  c.on_record = nullptr;
  c.jobs = 2;
  ASSERT_EQ(hubo_benchmark_run(small, &c, &raw), HUBO_OK);
  Benchmark again(raw);
  hubo_record rec2;
  double gammas2[2], betas2[2];
  ASSERT_EQ(hubo_benchmark_record(raw, 2, 1, &rec2, gammas2, betas2), HUBO_OK);
  EXPECT_EQ(rec2.ratio, rec.ratio);
  EXPECT_EQ(gammas2[1], gammas[1]);
  EXPECT_EQ(betas2[0], betas[0]);
}
