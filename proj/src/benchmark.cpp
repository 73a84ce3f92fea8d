/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "hubo/benchmark.hpp"
#include "hubo/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace hubo {

std::uint64_t run_seed(std::uint64_t seed, std::size_t run) {
  return derive_seed(seed, run);
}

namespace {

// Stream index for sampling, disjoint from the optimizer's draws.
constexpr std::uint64_t kSampleStream = 1u << 20;

std::vector<SeriesPoint> series(const std::vector<LayerSummary>& layers, bool best) {
  std::vector<SeriesPoint> out;
  for (const LayerSummary& s : layers)
    out.push_back({s.layers, s.resources.total_gates(), s.resources.cnot_total(),
                   s.resources.single_qubit_total(), best ? s.best_ratio : s.mean_ratio});
  return out;
}

} // namespace

std::vector<SeriesPoint> BenchmarkResult::best_series() const {
  return series(layers, true);
}

std::vector<SeriesPoint> BenchmarkResult::mean_series() const {
  return series(layers, false);
}

BenchmarkResult run_benchmark(const CopInstance& instance, const BenchmarkConfig& config) {
  return run_benchmark(instance, config, brute_force(instance));
}

BenchmarkResult run_benchmark(const CopInstance& instance, const BenchmarkConfig& config,
                              const GroundTruth& truth) {
  if (config.runs == 0)
    throw InvalidArgument("benchmark needs at least one run");
  if (config.max_layers == 0)
    throw InvalidArgument("benchmark needs at least one layer");

  const EncodedProblem problem = encode(instance, config.encoding, config.penalty);
  const QaoaLandscape landscape(problem.hamiltonian);
  const OutcomeTable table = outcome_table(instance, problem.layout, truth);
  const auto registers = problem.layout.registers();

  BenchmarkResult result;
  result.encoding = config.encoding;
  result.strategy = config.strategy;
  result.layout = problem.layout;
  result.penalty = problem.penalty;
  result.truth = truth;
  result.runs.resize(config.runs);

  std::atomic<std::size_t> cap{config.max_layers};
  std::atomic<std::size_t> next{0};
  std::mutex report;
  std::vector<std::exception_ptr> errors(config.runs);

  auto work = [&] {
    for (std::size_t r = next++; r < config.runs; r = next++) {
      try {
        const std::uint64_t seed = run_seed(config.seed, r);
        auto& records = result.runs[r];
        auto on_layer = [&](const LayerResult& layer, const StateVector& state) {
          RunRecord rec;
          rec.run = r;
          rec.layers = layer.params.layers();
          rec.seed = seed;
          rec.energy = layer.energy;
          rec.ratio = approximation_ratio_exact(state, table);
          const auto draws = sample(state, config.samples, derive_seed(seed, kSampleStream + rec.layers));
          rec.ratio_sampled = approximation_ratio_sampled(draws, table);
          rec.mean_objective = mean_objective(state, table);
          rec.feasible_probability = feasible_probability(state, table);
          rec.iterations = layer.iterations;
          rec.params = landscape.physical(layer.params);
          records.push_back(rec);
          if (config.on_record) {
            std::lock_guard lock(report);
            config.on_record(rec);
          }
          if (!config.stop_threshold)
            return true;
          if (rec.ratio <= *config.stop_threshold) {
            std::size_t seen = cap.load();
            while (rec.layers < seen && !cap.compare_exchange_weak(seen, rec.layers)) {
            }
            return false;
          }
          return rec.layers < cap.load();
        };
        optimize(landscape, config.max_layers, config.optimizer, seed, on_layer);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(config.jobs, 1, config.runs);
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j)
    pool.emplace_back(work);
  work();
  for (auto& t : pool)
    t.join();
  for (std::size_t r = 0; r < config.runs; ++r)
    if (errors[r]) {
      try {
        std::rethrow_exception(errors[r]);
      } catch (const std::exception& e) {
        throw std::runtime_error("run " + std::to_string(r) + " failed: " + e.what());
      }
    }

  // Layers beyond the lowest threshold crossing are dropped so the summary
  // does not depend on thread timing.
  std::size_t depth = 0;
  for (const auto& records : result.runs)
    depth = std::max(depth, records.size());
  if (config.stop_threshold)
    depth = std::min(depth, cap.load());
  for (std::size_t L = 1; L <= depth; ++L) {
    LayerSummary s;
    s.layers = L;
    s.resources = layer_resources(problem.hamiltonian, config.strategy, registers, L);
    std::vector<const RunRecord*> at;
    for (const auto& records : result.runs)
      if (records.size() >= L)
        at.push_back(&records[L - 1]);
    s.runs = at.size();
    if (at.empty())
      break;
    double sum_a = 0, sum_a2 = 0, sum_o = 0, sum_o2 = 0, sum_s = 0, sum_f = 0;
    s.best_ratio = 1.0;
    for (const RunRecord* rec : at) {
      sum_a += rec->ratio;
      sum_a2 += rec->ratio * rec->ratio;
      sum_o += rec->mean_objective;
      sum_o2 += rec->mean_objective * rec->mean_objective;
      sum_s += rec->ratio_sampled;
      sum_f += rec->feasible_probability;
      s.best_ratio = std::min(s.best_ratio, rec->ratio);
    }
    const double k = static_cast<double>(at.size());
    s.mean_ratio = sum_a / k;
    s.mean_objective = sum_o / k;
    s.mean_ratio_sampled = sum_s / k;
    s.mean_feasible = sum_f / k;
    // Population standard deviation over runs.
    s.std_ratio = std::sqrt(std::max(0.0, sum_a2 / k - s.mean_ratio * s.mean_ratio));
    s.std_objective = std::sqrt(std::max(0.0, sum_o2 / k - s.mean_objective * s.mean_objective));
    result.layers.push_back(s);
  }
  if (config.stop_threshold)
    for (auto& records : result.runs)
      if (records.size() > depth)
        records.resize(depth);
  return result;
}

std::vector<CopInstance> fixing_ladder(const CopInstance& instance, const Assignment& optimum) {
  instance.check_assignment(optimum);
  std::vector<CopInstance> out{instance};
  while (out.back().num_variables() > 1) {
    const std::size_t last = out.back().num_variables() - 1;
    out.push_back(fix_variable(out.back(), last, optimum[last]));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<CopInstance> deletion_ladder(const CopInstance& instance) {
  std::vector<CopInstance> out{instance};
  while (out.back().num_variables() > 1)
    out.push_back(remove_variable(out.back(), out.back().num_variables() - 1));
  std::reverse(out.begin(), out.end());
  return out;
}

double calibrate_penalty(const std::function<CopInstance(double)>& build, Encoding encoding,
                         double initial, std::size_t max_doublings) {
  if (!(initial > 0.0))
    throw InvalidArgument("calibration needs a positive starting penalty");
  double lambda = initial;
  for (std::size_t k = 0; k <= max_doublings; ++k, lambda *= 2.0) {
    const CopInstance inst = build(lambda);
    const EncodedProblem p = encode(inst, encoding, lambda);
    const auto diag = diagonal_of(p.hamiltonian);
    const auto ground = static_cast<std::uint64_t>(
        std::min_element(diag.begin(), diag.end()) - diag.begin());
    const Decoded d = decode(ground, p.layout);
    if (d.valid && inst.feasible(d.assignment))
      return lambda;
  }
  throw std::runtime_error("penalty calibration did not converge after " +
                           std::to_string(max_doublings) + " doublings");
}

} // namespace hubo
