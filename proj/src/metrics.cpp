/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "hubo/metrics.hpp"
#include "hubo/instance_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

namespace hubo {

GroundTruth brute_force(const CopInstance& instance, const FeasibilityPredicate& feasible) {
  const std::size_t n = instance.num_variables();
  const std::size_t m = instance.num_values();
  const double space = std::pow(static_cast<double>(m), static_cast<double>(n));
  if (space > kBruteForceLimit)
    throw InvalidArgument("assignment space " + std::to_string(m) + "^" + std::to_string(n) +
                          " exceeds the exhaustive limit of 1e8");
  GroundTruth truth;
  truth.c_min = std::numeric_limits<double>::infinity();
  truth.c_max = -std::numeric_limits<double>::infinity();
  Assignment s(n, 0);
  for (;;) {
    const bool ok = feasible ? feasible(s) : instance.feasible(s);
    if (ok) {
      ++truth.feasible_count;
      const double c = instance.objective(s);
      if (c < truth.c_min) {
        truth.c_min = c;
        truth.argmin = s;
      }
      if (c > truth.c_max) {
        truth.c_max = c;
        truth.argmax = s;
      }
    }
    // Mixed-radix increment, variable 0 fastest.
    std::size_t i = 0;
    while (i < n && ++s[i] == m)
      s[i++] = 0;
    if (i == n)
      break;
  }
  if (truth.feasible_count == 0)
    throw std::runtime_error("instance has no feasible assignment");
  truth.instance_hash = instance_hash(instance);
  return truth;
}

namespace {

std::string hash_key(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace

GroundTruth ground_truth(const CopInstance& instance, const std::string& cache_path) {
  if (cache_path.empty())
    return brute_force(instance);
  const std::string key = hash_key(instance_hash(instance));
  nlohmann::json cache = nlohmann::json::object();
  if (std::ifstream in(cache_path); in) {
    try {
      in >> cache;
    } catch (const nlohmann::json::exception&) {
      cache = nlohmann::json::object(); // unreadable cache: rebuild it
    }
  }
  if (cache.contains(key)) {
    const auto& e = cache[key];
    GroundTruth t;
    t.c_min = e.at("c_min").get<double>();
    t.c_max = e.at("c_max").get<double>();
    t.argmin = e.at("argmin").get<Assignment>();
    t.argmax = e.at("argmax").get<Assignment>();
    t.feasible_count = e.at("feasible_count").get<std::uint64_t>();
    t.instance_hash = instance_hash(instance);
    return t;
  }
  GroundTruth t = brute_force(instance);
  cache[key] = {{"c_min", t.c_min},
                {"c_max", t.c_max},
                {"argmin", t.argmin},
                {"argmax", t.argmax},
                {"feasible_count", t.feasible_count}};
  const auto parent = std::filesystem::path(cache_path).parent_path();
  if (!parent.empty())
    std::filesystem::create_directories(parent);
  std::ofstream(cache_path) << cache.dump(2) << '\n';
  return t;
}

Decoded decode(std::uint64_t bits, const QubitLayout& layout) {
  Decoded out;
  const std::size_t width = layout.qubits_per_variable();
  const std::uint64_t mask = width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  out.assignment.resize(layout.n);
  for (std::size_t i = 0; i < layout.n; ++i) {
    const std::uint64_t block = (bits >> (i * width)) & mask;
    std::uint64_t value = 0;
    bool ok = false;
    if (layout.encoding == Encoding::qubo) {
      ok = std::popcount(block) == 1;
      value = static_cast<std::uint64_t>(std::countr_zero(block));
    } else {
      value = block;
      ok = value < layout.m;
    }
    if (!ok) {
      out.offending = i;
      out.assignment.clear();
      return out;
    }
    out.assignment[i] = static_cast<std::uint32_t>(value);
  }
  out.valid = true;
  return out;
}

namespace {

double ratio_of(double c, const GroundTruth& truth) {
  const double span = truth.c_max - truth.c_min;
  return span > 0.0 ? (truth.c_max - c) / span : 1.0;
}

} // namespace

double solution_quality(std::uint64_t bits, const CopInstance& instance,
                        const QubitLayout& layout, const GroundTruth& truth) {
  const Decoded d = decode(bits, layout);
  if (!d.valid || !instance.feasible(d.assignment))
    return 0.0;
  return ratio_of(instance.objective(d.assignment), truth);
}

OutcomeTable outcome_table(const CopInstance& instance, const QubitLayout& layout,
                           const GroundTruth& truth, std::size_t cap) {
  const std::size_t q = layout.num_qubits();
  if (q > cap)
    throw InvalidArgument("outcome table over " + std::to_string(q) + " qubits exceeds cap of " +
                          std::to_string(cap));
  const std::size_t size = std::size_t{1} << q;
  OutcomeTable t;
  t.ratio.assign(size, 0.0);
  t.objective.assign(size, truth.c_max);
  t.feasible.assign(size, 0);
  for (std::uint64_t b = 0; b < size; ++b) {
    const Decoded d = decode(b, layout);
    if (!d.valid || !instance.feasible(d.assignment))
      continue;
    const double c = instance.objective(d.assignment);
    t.ratio[b] = ratio_of(c, truth);
    t.objective[b] = c;
    t.feasible[b] = 1;
  }
  return t;
}

namespace {

void check_width(const StateVector& state, const OutcomeTable& table) {
  if (state.size() != table.ratio.size())
    throw InvalidArgument("state and outcome table sizes differ");
}

} // namespace

double approximation_ratio_exact(const StateVector& state, const OutcomeTable& table) {
  check_width(state, table);
  double quality = 0.0;
  const auto& amps = state.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b)
    quality += std::norm(amps[b]) * table.ratio[b];
  return std::clamp(1.0 - quality, 0.0, 1.0);
}

double approximation_ratio_exact(const StateVector& state, const CopInstance& instance,
                                 const QubitLayout& layout, const GroundTruth& truth) {
  return approximation_ratio_exact(state, outcome_table(instance, layout, truth));
}

double approximation_ratio_sampled(std::span<const std::uint64_t> samples,
                                   const OutcomeTable& table) {
  if (samples.empty())
    throw InvalidArgument("sampled ratio needs at least one sample");
  double quality = 0.0;
  for (std::uint64_t b : samples) {
    if (b >= table.ratio.size())
      throw InvalidArgument("sample " + std::to_string(b) + " outside the outcome table");
    quality += table.ratio[b];
  }
  return 1.0 - quality / static_cast<double>(samples.size());
}

double approximation_ratio_sampled(std::span<const std::uint64_t> samples,
                                   const CopInstance& instance, const QubitLayout& layout,
                                   const GroundTruth& truth) {
  if (samples.empty())
    throw InvalidArgument("sampled ratio needs at least one sample");
  double quality = 0.0;
  for (std::uint64_t b : samples)
    quality += solution_quality(b, instance, layout, truth);
  return 1.0 - quality / static_cast<double>(samples.size());
}

double mean_objective(const StateVector& state, const OutcomeTable& table) {
  check_width(state, table);
  double total = 0.0;
  const auto& amps = state.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b)
    total += std::norm(amps[b]) * table.objective[b];
  return total;
}

double feasible_probability(const StateVector& state, const OutcomeTable& table) {
  check_width(state, table);
  double total = 0.0;
  const auto& amps = state.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b)
    if (table.feasible[b])
      total += std::norm(amps[b]);
  return total;
}

std::optional<SeriesPoint> gates_to_threshold(std::span<const SeriesPoint> series,
                                              double threshold) {
  for (const SeriesPoint& p : series)
    if (p.ratio <= threshold)
      return p;
  return std::nullopt;
}

} // namespace hubo
