/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include "hubo/statevector.hpp"

#include <functional>
#include <optional>
#include <string>

namespace hubo {

/// Extremes of the raw objective over feasible assignments.
struct GroundTruth {
  double c_min = 0.0;
  double c_max = 0.0;
  Assignment argmin;
  Assignment argmax;
  std::uint64_t feasible_count = 0;
  std::uint64_t instance_hash = 0;
};

using FeasibilityPredicate = std::function<bool(std::span<const std::uint32_t>)>;

/// Largest assignment space brute_force accepts.
inline constexpr double kBruteForceLimit = 1e8;

/// Exhaustive scan of all m^n assignments. The default predicate is the
/// instance's own constraint list. Throws InvalidArgument above the limit
/// and std::runtime_error when nothing is feasible.
GroundTruth brute_force(const CopInstance& instance, const FeasibilityPredicate& feasible = {});

/// brute_force behind a JSON file keyed by the instance hash. An empty path
/// disables the cache.
GroundTruth ground_truth(const CopInstance& instance, const std::string& cache_path);

struct Decoded {
  bool valid = false;
  Assignment assignment;     // filled when valid
  std::size_t offending = 0; // first invalid variable otherwise
};

/// QUBO: each block must be exactly one-hot. HUBO: each index must be < m.
Decoded decode(std::uint64_t bits, const QubitLayout& layout);

/// Per basis state: r(b) (0 for infeasible strings) and the objective with
/// infeasible strings counted at C_max.
struct OutcomeTable {
  std::vector<double> ratio;
  std::vector<double> objective;
  std::vector<std::uint8_t> feasible;
};

/// Default enumeration cap for OutcomeTable.
inline constexpr std::size_t kOutcomeQubitCap = 20;

OutcomeTable outcome_table(const CopInstance& instance, const QubitLayout& layout,
                           const GroundTruth& truth, std::size_t cap = kOutcomeQubitCap);

/// r(b) for one bitstring.
double solution_quality(std::uint64_t bits, const CopInstance& instance,
                        const QubitLayout& layout, const GroundTruth& truth);

/// A = 1 - sum_b |<b|psi>|^2 r(b); 0 is optimal, 1 is only infeasible or
/// worst-cost outcomes.
double approximation_ratio_exact(const StateVector& state, const OutcomeTable& table);
double approximation_ratio_exact(const StateVector& state, const CopInstance& instance,
                                 const QubitLayout& layout, const GroundTruth& truth);

/// 1 - (1/N) sum_samples r(b).
double approximation_ratio_sampled(std::span<const std::uint64_t> samples,
                                   const OutcomeTable& table);
double approximation_ratio_sampled(std::span<const std::uint64_t> samples,
                                   const CopInstance& instance, const QubitLayout& layout,
                                   const GroundTruth& truth);

/// Expected objective, infeasible outcomes scored at C_max.
double mean_objective(const StateVector& state, const OutcomeTable& table);
/// Probability of a feasible outcome.
double feasible_probability(const StateVector& state, const OutcomeTable& table);

struct SeriesPoint {
  std::size_t layers = 0;
  std::size_t total_gates = 0;
  std::size_t cnot = 0;
  std::size_t single_qubit = 0;
  double ratio = 1.0;
};

/// First entry (in the given order) with ratio <= threshold.
std::optional<SeriesPoint> gates_to_threshold(std::span<const SeriesPoint> series,
                                              double threshold);

} // namespace hubo
