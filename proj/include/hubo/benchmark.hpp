/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include "hubo/metrics.hpp"
#include "hubo/qaoa.hpp"

namespace hubo {

struct RunRecord;

struct BenchmarkConfig {
  Encoding encoding = Encoding::hubo;
  std::size_t max_layers = 10;
  std::size_t runs = 20;
  std::uint64_t seed = 1;
  Strategy strategy = Strategy::best;
  double penalty = 0.0; // encoding penalty, <= 0 selects the default
  OptimizerConfig optimizer;
  std::size_t samples = 10000; // per run and layer, for the sampled ratio
  std::size_t jobs = 1;
  /// When set, each run stops at the first layer reaching the threshold or
  /// at the lowest crossing layer found so far by any run.
  std::optional<double> stop_threshold;
  /// Progress hook, called once per finished run and layer. Calls are
  /// serialized but arrive in completion order.
  std::function<void(const RunRecord&)> on_record;
};

/// One run at one layer count.
struct RunRecord {
  std::size_t run = 0;
  std::size_t layers = 0;
  std::uint64_t seed = 0;
  double energy = 0.0;
  double ratio = 1.0;         // exact
  double ratio_sampled = 1.0; // from `samples` draws
  double mean_objective = 0.0;
  double feasible_probability = 0.0;
  std::size_t iterations = 0;
  QaoaParams params; // circuit angles (gamma in units of H)
};

struct LayerSummary {
  std::size_t layers = 0;
  ResourceReport resources;
  std::size_t runs = 0; // runs that reached this layer
  double mean_ratio = 1.0;
  double std_ratio = 0.0;
  double best_ratio = 1.0;
  double mean_ratio_sampled = 1.0;
  double mean_objective = 0.0;
  double std_objective = 0.0;
  double mean_feasible = 0.0;
};

struct BenchmarkResult {
  Encoding encoding = Encoding::hubo;
  Strategy strategy = Strategy::best;
  QubitLayout layout;
  double penalty = 0.0;
  GroundTruth truth;
  std::vector<std::vector<RunRecord>> runs; // [run][layer - 1]
  std::vector<LayerSummary> layers;

  /// Series for gates_to_threshold: best run per layer, or the run mean.
  std::vector<SeriesPoint> best_series() const;
  std::vector<SeriesPoint> mean_series() const;
};

/// Seed of run r; identical across encodings so comparisons are paired.
std::uint64_t run_seed(std::uint64_t seed, std::size_t run);

/// Runs `config.runs` independent layerwise optimizations (in parallel up to
/// `config.jobs`) and aggregates them per layer. Results do not depend on
/// the number of jobs.
BenchmarkResult run_benchmark(const CopInstance& instance, const BenchmarkConfig& config,
                              const GroundTruth& truth);
BenchmarkResult run_benchmark(const CopInstance& instance, const BenchmarkConfig& config);

/// Smaller instances from a full one, smallest first, ending with the full
/// instance. `fixing_ladder` fixes the last variable to its value in
/// `optimum` until one variable remains; `deletion_ladder` deletes the last
/// variable instead.
std::vector<CopInstance> fixing_ladder(const CopInstance& instance, const Assignment& optimum);
std::vector<CopInstance> deletion_ladder(const CopInstance& instance);

/// Doubles lambda (starting from `initial`) until the ground state of the
/// encoded Hamiltonian built from `build(lambda)` decodes to a feasible
/// assignment. Returns the accepted lambda.
double calibrate_penalty(const std::function<CopInstance(double)>& build, Encoding encoding,
                         double initial, std::size_t max_doublings = 30);

} // namespace hubo
