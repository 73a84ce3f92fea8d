/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "hubo/hubo.h"
#include "hubo/benchmark.hpp"
#include "hubo/instance_io.hpp"

#include <fstream>
#include <new>
#include <stdexcept>
#include <string>

struct hubo_instance {
  hubo::CopInstance value;
};

struct hubo_problem {
  hubo::EncodedProblem value;
};

struct hubo_circuit {
  hubo::Circuit value;
};

struct hubo_benchmark {
  hubo::BenchmarkResult value;
};

namespace {

thread_local std::string last_error;

hubo_status fail(hubo_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
hubo_status guarded(Fn&& fn) {
  try {
    fn();
    return HUBO_OK;
  } catch (const hubo::ParseError& e) {
    return fail(HUBO_ERR_PARSE, e.what());
  } catch (const hubo::IoError& e) {
    return fail(HUBO_ERR_IO, e.what());
  } catch (const std::out_of_range& e) {
    return fail(HUBO_ERR_OUT_OF_RANGE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(HUBO_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HUBO_ERR_NO_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(HUBO_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(HUBO_ERR_RUNTIME, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (!p)
    throw std::invalid_argument(std::string(what) + " is null");
}

hubo::Encoding to_encoding(hubo_encoding e) {
  switch (e) {
  case HUBO_ENCODING_QUBO:
    return hubo::Encoding::qubo;
  case HUBO_ENCODING_HUBO:
    return hubo::Encoding::hubo;
  }
  throw std::invalid_argument("unknown encoding " + std::to_string(static_cast<int>(e)));
}

hubo::Strategy to_strategy(hubo_strategy s) {
  switch (s) {
  case HUBO_STRATEGY_CHAIN:
    return hubo::Strategy::chain;
  case HUBO_STRATEGY_GRAY:
    return hubo::Strategy::gray;
  case HUBO_STRATEGY_BEST:
    return hubo::Strategy::best;
  }
  throw std::invalid_argument("unknown strategy " + std::to_string(static_cast<int>(s)));
}

hubo_resources to_c(const hubo::ResourceReport& r) {
  return {r.num_qubits,      r.layers,         r.cnot_per_layer,
          r.rz_per_layer,    r.rx_per_layer,   r.hadamard_init,
          r.cnot_total(),    r.single_qubit_total(), r.total_gates()};
}

hubo_record to_c(const hubo::RunRecord& r) {
  return {r.run,   r.layers,        r.seed,           r.energy,    r.ratio,
          r.ratio_sampled, r.mean_objective, r.feasible_probability, r.iterations};
}

} // namespace

extern "C" {

const char* hubo_version(void) {
  return "0.1.0";
}

const char* hubo_status_string(hubo_status status) {
  switch (status) {
  case HUBO_OK:
    return "ok";
  case HUBO_ERR_INVALID_ARGUMENT:
    return "invalid argument";
  case HUBO_ERR_OUT_OF_RANGE:
    return "out of range";
  case HUBO_ERR_IO:
    return "i/o error";
  case HUBO_ERR_PARSE:
    return "parse error";
  case HUBO_ERR_RUNTIME:
    return "runtime error";
  case HUBO_ERR_NO_MEMORY:
    return "out of memory";
  }
  return "unknown status";
}

const char* hubo_last_error(void) {
  return last_error.c_str();
}

hubo_status hubo_parse_encoding(const char* text, hubo_encoding* out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = hubo::parse_encoding(text) == hubo::Encoding::qubo ? HUBO_ENCODING_QUBO
                                                              : HUBO_ENCODING_HUBO;
  });
}

hubo_status hubo_parse_strategy(const char* text, hubo_strategy* out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    switch (hubo::parse_strategy(text)) {
    case hubo::Strategy::chain:
      *out = HUBO_STRATEGY_CHAIN;
      break;
    case hubo::Strategy::gray:
      *out = HUBO_STRATEGY_GRAY;
      break;
    case hubo::Strategy::best:
      *out = HUBO_STRATEGY_BEST;
      break;
    }
  });
}

hubo_status hubo_parse_descent(const char* text, hubo_descent* out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = hubo::parse_descent(text) == hubo::Descent::steepest ? HUBO_DESCENT_STEEPEST
                                                                : HUBO_DESCENT_LBFGS;
  });
}

// ---- Instances ------------------------------------------------------------

hubo_status hubo_instance_load(const char* path, hubo_instance** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new hubo_instance{hubo::load_instance(path)};
  });
}

hubo_status hubo_instance_save(const hubo_instance* instance, const char* path) {
  return guarded([&] {
    require(instance, "instance");
    require(path, "path");
    hubo::save_instance(path, instance->value);
  });
}

hubo_status hubo_instance_builtin(const char* name, double penalty, hubo_instance** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    const std::string n = name;
    if (n == "gap")
      *out = new hubo_instance{hubo::gap_instance(hubo::builtin_gap_benchmark(), penalty)};
    else if (n == "mkcs")
      *out = new hubo_instance{hubo::builtin_mkcs_benchmark()};
    else if (n == "ip")
      *out = new hubo_instance{hubo::builtin_ip_benchmark(penalty)};
    else
      throw std::invalid_argument("unknown built-in instance '" + n + "'");
  });
}

void hubo_instance_free(hubo_instance* instance) {
  delete instance;
}

hubo_status hubo_instance_shape(const hubo_instance* instance, size_t* num_variables,
                                size_t* num_values) {
  return guarded([&] {
    require(instance, "instance");
    if (num_variables)
      *num_variables = instance->value.num_variables();
    if (num_values)
      *num_values = instance->value.num_values();
  });
}

hubo_status hubo_instance_hash(const hubo_instance* instance, uint64_t* out) {
  return guarded([&] {
    require(instance, "instance");
    require(out, "out");
    *out = hubo::instance_hash(instance->value);
  });
}

hubo_status hubo_instance_evaluate(const hubo_instance* instance, const uint32_t* assignment,
                                   size_t length, double* objective, int* feasible) {
  return guarded([&] {
    require(instance, "instance");
    if (length > 0)
      require(assignment, "assignment");
    const std::span<const std::uint32_t> s(assignment, length);
    instance->value.check_assignment(s);
    const double c = instance->value.objective(s);
    const bool ok = instance->value.feasible(s);
    if (objective)
      *objective = c;
    if (feasible)
      *feasible = ok ? 1 : 0;
  });
}

hubo_status hubo_instance_ground_truth(const hubo_instance* instance, const char* cache_path,
                                       double* c_min, double* c_max, uint32_t* argmin) {
  return guarded([&] {
    require(instance, "instance");
    const hubo::GroundTruth t = hubo::ground_truth(instance->value, cache_path ? cache_path : "");
    if (c_min)
      *c_min = t.c_min;
    if (c_max)
      *c_max = t.c_max;
    if (argmin)
      std::copy(t.argmin.begin(), t.argmin.end(), argmin);
  });
}

hubo_status hubo_instance_fix(const hubo_instance* instance, size_t i, uint32_t v,
                              hubo_instance** out) {
  return guarded([&] {
    require(instance, "instance");
    require(out, "out");
    *out = new hubo_instance{hubo::fix_variable(instance->value, i, v)};
  });
}

hubo_status hubo_instance_remove(const hubo_instance* instance, size_t i, hubo_instance** out) {
  return guarded([&] {
    require(instance, "instance");
    require(out, "out");
    *out = new hubo_instance{hubo::remove_variable(instance->value, i)};
  });
}

hubo_status hubo_calibrate_penalty(const char* name, hubo_encoding encoding, double initial,
                                   size_t max_doublings, double* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    const std::string n = name;
    std::function<hubo::CopInstance(double)> build;
    if (n == "gap")
      build = [data = hubo::builtin_gap_benchmark()](double l) {
        return hubo::gap_instance(data, l);
      };
    else if (n == "ip")
      build = [](double l) { return hubo::builtin_ip_benchmark(l); };
    else
      throw std::invalid_argument("penalty calibration needs built-in 'gap' or 'ip', got '" + n +
                                  "'");
    *out = hubo::calibrate_penalty(build, to_encoding(encoding), initial, max_doublings);
  });
}

// ---- Encoded problems -----------------------------------------------------

hubo_status hubo_encode(const hubo_instance* instance, hubo_encoding encoding, double penalty,
                        hubo_problem** out) {
  return guarded([&] {
    require(instance, "instance");
    require(out, "out");
    *out = new hubo_problem{hubo::encode(instance->value, to_encoding(encoding), penalty)};
  });
}

void hubo_problem_free(hubo_problem* problem) {
  delete problem;
}

hubo_status hubo_problem_num_qubits(const hubo_problem* problem, size_t* out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    *out = problem->value.hamiltonian.num_qubits();
  });
}

hubo_status hubo_problem_num_terms(const hubo_problem* problem, size_t* out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    *out = problem->value.hamiltonian.num_nonidentity_terms();
  });
}

hubo_status hubo_problem_penalty(const hubo_problem* problem, double* out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    *out = problem->value.penalty;
  });
}

hubo_status hubo_problem_order_census(const hubo_problem* problem, size_t* counts,
                                      size_t capacity, size_t* max_order) {
  return guarded([&] {
    require(problem, "problem");
    if (capacity > 0)
      require(counts, "counts");
    const auto census = problem->value.hamiltonian.order_census();
    for (size_t k = 0; k < capacity; ++k)
      counts[k] = k < census.size() ? census[k] : 0;
    if (max_order) {
      size_t top = 0;
      for (size_t k = 0; k < census.size(); ++k)
        if (census[k] > 0)
          top = k;
      *max_order = top;
    }
  });
}

hubo_status hubo_problem_energy(const hubo_problem* problem, uint64_t basis, double* out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    const std::size_t q = problem->value.hamiltonian.num_qubits();
    if (q < 64 && basis >> q)
      throw std::out_of_range("basis index " + std::to_string(basis) + " outside " +
                              std::to_string(q) + " qubits");
    *out = hubo::diagonal_entry(problem->value.hamiltonian, basis);
  });
}

hubo_status hubo_problem_save(const hubo_problem* problem, const char* path) {
  return guarded([&] {
    require(problem, "problem");
    require(path, "path");
    std::ofstream out(path);
    if (!out)
      throw hubo::IoError(std::string("cannot write polynomial file '") + path + "'");
    hubo::write_polynomial(out, problem->value.hamiltonian);
    if (!out)
      throw hubo::IoError(std::string("failed writing '") + path + "'");
  });
}

// ---- Circuits and resources -----------------------------------------------

hubo_status hubo_compile(const hubo_problem* problem, const double* gammas, const double* betas,
                         size_t layers, hubo_strategy strategy, hubo_circuit** out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    if (layers > 0) {
      require(gammas, "gammas");
      require(betas, "betas");
    }
    const std::vector<double> g(gammas, gammas + layers), b(betas, betas + layers);
    *out = new hubo_circuit{hubo::qaoa_circuit(problem->value.hamiltonian, g, b,
                                               to_strategy(strategy),
                                               problem->value.layout.registers())};
  });
}

void hubo_circuit_free(hubo_circuit* circuit) {
  delete circuit;
}

hubo_status hubo_circuit_resources(const hubo_circuit* circuit, size_t layers,
                                   hubo_resources* out) {
  return guarded([&] {
    require(circuit, "circuit");
    require(out, "out");
    *out = to_c(hubo::count_resources(circuit->value, layers));
  });
}

hubo_status hubo_circuit_save(const hubo_circuit* circuit, const char* path) {
  return guarded([&] {
    require(circuit, "circuit");
    require(path, "path");
    std::ofstream out(path);
    if (!out)
      throw hubo::IoError(std::string("cannot write circuit file '") + path + "'");
    hubo::write_circuit(out, circuit->value);
    if (!out)
      throw hubo::IoError(std::string("failed writing '") + path + "'");
  });
}

hubo_status hubo_layer_resources(const hubo_problem* problem, hubo_strategy strategy,
                                 size_t layers, hubo_resources* out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    *out = to_c(hubo::layer_resources(problem->value.hamiltonian, to_strategy(strategy),
                                      problem->value.layout.registers(), layers));
  });
}

hubo_status hubo_scaling_formulas(size_t n, size_t m, hubo_encoding encoding,
                                  hubo_resources* out) {
  return guarded([&] {
    require(out, "out");
    *out = to_c(hubo::scaling_formulas(n, m, to_encoding(encoding)));
  });
}

// ---- Benchmarks -----------------------------------------------------------

void hubo_benchmark_config_default(hubo_benchmark_config* config) {
  if (!config)
    return;
  const hubo::BenchmarkConfig d;
  config->encoding = d.encoding == hubo::Encoding::qubo ? HUBO_ENCODING_QUBO : HUBO_ENCODING_HUBO;
  config->strategy = HUBO_STRATEGY_BEST;
  config->max_layers = d.max_layers;
  config->runs = d.runs;
  config->seed = d.seed;
  config->penalty = d.penalty;
  config->samples = d.samples;
  config->jobs = d.jobs;
  config->stop_threshold = -1.0;
  config->grid = d.optimizer.grid;
  config->max_iterations = d.optimizer.max_iterations;
  config->gradient_tolerance = d.optimizer.gradient_tolerance;
  config->value_tolerance = d.optimizer.value_tolerance;
  config->finite_difference = d.optimizer.gradient == hubo::GradientMethod::finite_difference;
  config->jitter = d.optimizer.jitter;
  config->perturbation = d.optimizer.perturbation;
  config->descent = d.optimizer.descent == hubo::Descent::steepest ? HUBO_DESCENT_STEEPEST
                                                                   : HUBO_DESCENT_LBFGS;
  config->memory = d.optimizer.memory;
  config->truth_cache = nullptr;
  config->on_record = nullptr;
  config->user = nullptr;
}

hubo_status hubo_benchmark_run(const hubo_instance* instance, const hubo_benchmark_config* config,
                               hubo_benchmark** out) {
  return guarded([&] {
    require(instance, "instance");
    require(config, "config");
    require(out, "out");
    hubo::BenchmarkConfig c;
    c.encoding = to_encoding(config->encoding);
    c.strategy = to_strategy(config->strategy);
    c.max_layers = config->max_layers;
    c.runs = config->runs;
    c.seed = config->seed;
    c.penalty = config->penalty;
    c.samples = config->samples;
    c.jobs = config->jobs;
    if (config->stop_threshold >= 0.0)
      c.stop_threshold = config->stop_threshold;
    c.optimizer.grid = config->grid;
    c.optimizer.max_iterations = config->max_iterations;
    c.optimizer.gradient_tolerance = config->gradient_tolerance;
    c.optimizer.value_tolerance = config->value_tolerance;
    c.optimizer.gradient = config->finite_difference ? hubo::GradientMethod::finite_difference
                                                     : hubo::GradientMethod::adjoint;
    c.optimizer.jitter = config->jitter;
    c.optimizer.perturbation = config->perturbation;
    c.optimizer.descent =
        config->descent == HUBO_DESCENT_STEEPEST ? hubo::Descent::steepest : hubo::Descent::lbfgs;
    c.optimizer.memory = config->memory;
    if (config->on_record) {
      const hubo_record_callback cb = config->on_record;
      void* user = config->user;
      c.on_record = [cb, user](const hubo::RunRecord& r) {
        const hubo_record rec = to_c(r);
        cb(&rec, user);
      };
    }
    const hubo::GroundTruth truth =
        hubo::ground_truth(instance->value, config->truth_cache ? config->truth_cache : "");
    *out = new hubo_benchmark{hubo::run_benchmark(instance->value, c, truth)};
  });
}

void hubo_benchmark_free(hubo_benchmark* benchmark) {
  delete benchmark;
}

hubo_status hubo_benchmark_truth(const hubo_benchmark* benchmark, double* c_min, double* c_max) {
  return guarded([&] {
    require(benchmark, "benchmark");
    if (c_min)
      *c_min = benchmark->value.truth.c_min;
    if (c_max)
      *c_max = benchmark->value.truth.c_max;
  });
}

hubo_status hubo_benchmark_penalty(const hubo_benchmark* benchmark, double* out) {
  return guarded([&] {
    require(benchmark, "benchmark");
    require(out, "out");
    *out = benchmark->value.penalty;
  });
}

hubo_status hubo_benchmark_num_layers(const hubo_benchmark* benchmark, size_t* out) {
  return guarded([&] {
    require(benchmark, "benchmark");
    require(out, "out");
    *out = benchmark->value.layers.size();
  });
}

hubo_status hubo_benchmark_layer(const hubo_benchmark* benchmark, size_t index,
                                 hubo_layer_summary* out) {
  return guarded([&] {
    require(benchmark, "benchmark");
    require(out, "out");
    const auto& s = benchmark->value.layers.at(index);
    *out = {s.layers,        s.runs,           to_c(s.resources), s.mean_ratio,
            s.std_ratio,     s.best_ratio,     s.mean_ratio_sampled, s.mean_objective,
            s.std_objective, s.mean_feasible};
  });
}

hubo_status hubo_benchmark_num_runs(const hubo_benchmark* benchmark, size_t* out) {
  return guarded([&] {
    require(benchmark, "benchmark");
    require(out, "out");
    *out = benchmark->value.runs.size();
  });
}

hubo_status hubo_benchmark_run_length(const hubo_benchmark* benchmark, size_t run, size_t* out) {
  return guarded([&] {
    require(benchmark, "benchmark");
    require(out, "out");
    *out = benchmark->value.runs.at(run).size();
  });
}

hubo_status hubo_benchmark_record(const hubo_benchmark* benchmark, size_t run, size_t index,
                                  hubo_record* out, double* gammas, double* betas) {
  return guarded([&] {
    require(benchmark, "benchmark");
    const hubo::RunRecord& r = benchmark->value.runs.at(run).at(index);
    if (out)
      *out = to_c(r);
    if (gammas)
      std::copy(r.params.gammas.begin(), r.params.gammas.end(), gammas);
    if (betas)
      std::copy(r.params.betas.begin(), r.params.betas.end(), betas);
  });
}

} // extern "C"
