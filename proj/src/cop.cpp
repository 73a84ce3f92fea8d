/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "hubo/cop.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hubo {

namespace {

std::string pair_text(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

} // namespace

CopInstance::CopInstance(std::size_t num_variables, std::size_t num_values)
    : n_(num_variables), m_(num_values) {
  if (num_values == 0)
    throw InvalidArgument("CopInstance: number of values must be positive");
  objective_.linear.assign(n_ * m_, 0.0);
  penalty_.linear.assign(n_ * m_, 0.0);
}

void CopInstance::check_variable(std::size_t i) const {
  if (i >= n_)
    throw InvalidArgument("variable index " + std::to_string(i) + " out of range [0, " +
                          std::to_string(n_) + ")");
}

void CopInstance::check_value(std::uint32_t v) const {
  if (v >= m_)
    throw InvalidArgument("value index " + std::to_string(v) + " out of range [0, " +
                          std::to_string(m_) + ")");
}

double CopInstance::layer_value(const Layer& layer, std::size_t m, std::size_t i,
                                std::size_t j, std::uint32_t v, std::uint32_t w) {
  if (i > j) {
    std::swap(i, j);
    std::swap(v, w);
  }
  auto it = layer.blocks.find({i, j});
  if (it == layer.blocks.end())
    return 0.0;
  return it->second[v * m + w];
}

void CopInstance::add_to_layer(Layer& layer, std::size_t i, std::size_t j, std::uint32_t v,
                               std::uint32_t w, double c) {
  check_variable(i);
  check_variable(j);
  check_value(v);
  check_value(w);
  if (i == j)
    throw InvalidArgument("quadratic term requires distinct variables, got " + pair_text(i, j));
  if (i > j) {
    std::swap(i, j);
    std::swap(v, w);
  }
  auto [it, inserted] = layer.blocks.try_emplace({i, j});
  if (inserted)
    it->second.assign(m_ * m_, 0.0);
  it->second[v * m_ + w] += c;
}

double CopInstance::linear(std::size_t i, std::uint32_t v) const {
  return objective_linear(i, v) + penalty_.linear[i * m_ + v];
}

double CopInstance::quadratic(std::size_t i, std::size_t j, std::uint32_t v,
                              std::uint32_t w) const {
  return objective_quadratic(i, j, v, w) + layer_value(penalty_, m_, i, j, v, w);
}

double CopInstance::objective_linear(std::size_t i, std::uint32_t v) const {
  check_variable(i);
  check_value(v);
  return objective_.linear[i * m_ + v];
}

double CopInstance::objective_quadratic(std::size_t i, std::size_t j, std::uint32_t v,
                                        std::uint32_t w) const {
  check_variable(i);
  check_variable(j);
  check_value(v);
  check_value(w);
  return layer_value(objective_, m_, i, j, v, w);
}

std::vector<VariablePair> CopInstance::coupled_pairs() const {
  std::vector<VariablePair> pairs;
  for (const auto& [key, _] : objective_.blocks)
    pairs.push_back(key);
  for (const auto& [key, _] : penalty_.blocks)
    pairs.push_back(key);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

void CopInstance::add_linear(std::size_t i, std::uint32_t v, double c) {
  check_variable(i);
  check_value(v);
  objective_.linear[i * m_ + v] += c;
}

void CopInstance::add_quadratic(std::size_t i, std::size_t j, std::uint32_t v,
                                std::uint32_t w, double c) {
  add_to_layer(objective_, i, j, v, w, c);
}

void CopInstance::add_constraint(Constraint c) {
  if (!(c.lambda > 0.0))
    throw InvalidArgument("constraint multiplier must be positive, got " +
                          std::to_string(c.lambda));
  if (c.unary()) {
    check_variable(c.i);
    check_value(c.v);
    penalty_.linear[c.i * m_ + c.v] += c.lambda;
  } else {
    add_to_layer(penalty_, c.i, c.j, c.v, c.w, c.lambda);
    if (c.i > c.j) {
      std::swap(c.i, c.j);
      std::swap(c.v, c.w);
    }
  }
  constraints_.push_back(c);
}

void CopInstance::mark_infeasible(double lambda) {
  infeasible_ = true;
  penalty_constant_ += lambda;
}

void CopInstance::check_assignment(std::span<const std::uint32_t> s) const {
  if (s.size() != n_)
    throw InvalidArgument("assignment has " + std::to_string(s.size()) + " entries, expected " +
                          std::to_string(n_) + " (first offending index " +
                          std::to_string(std::min(s.size(), n_)) + ")");
  for (std::size_t i = 0; i < n_; ++i)
    if (s[i] >= m_)
      throw InvalidArgument("assignment entry " + std::to_string(i) + " has value " +
                            std::to_string(s[i]) + ", expected < " + std::to_string(m_));
}

double CopInstance::evaluate_layer(const Layer& layer, std::span<const std::uint32_t> s) const {
  double total = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    total += layer.linear[i * m_ + s[i]];
  for (const auto& [key, block] : layer.blocks)
    total += block[s[key.first] * m_ + s[key.second]];
  return total;
}

double CopInstance::evaluate(std::span<const std::uint32_t> s) const {
  check_assignment(s);
  return constant() + evaluate_layer(objective_, s) + evaluate_layer(penalty_, s);
}

double CopInstance::objective(std::span<const std::uint32_t> s) const {
  check_assignment(s);
  return constant_ + evaluate_layer(objective_, s);
}

bool CopInstance::feasible(std::span<const std::uint32_t> s) const {
  check_assignment(s);
  if (infeasible_)
    return false;
  for (const auto& c : constraints_) {
    if (c.unary()) {
      if (s[c.i] == c.v)
        return false;
    } else if (s[c.i] == c.v && s[c.j] == c.w) {
      return false;
    }
  }
  return true;
}

double CopInstance::max_abs_linear() const {
  double best = 0.0;
  for (std::size_t k = 0; k < n_ * m_; ++k)
    best = std::max(best, std::abs(objective_.linear[k] + penalty_.linear[k]));
  return best;
}

double CopInstance::max_abs_quadratic() const {
  double best = 0.0;
  for (const auto& [i, j] : coupled_pairs())
    for (std::uint32_t v = 0; v < m_; ++v)
      for (std::uint32_t w = 0; w < m_; ++w)
        best = std::max(best, std::abs(quadratic(i, j, v, w)));
  return best;
}

void CopInstance::set_value_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != m_)
    throw InvalidArgument("expected " + std::to_string(m_) + " value labels, got " +
                          std::to_string(labels.size()));
  labels_ = std::move(labels);
}

// ---------------------------------------------------------------------------

double default_penalty(const CopInstance& instance) {
  double scale = instance.max_abs_linear() + instance.max_abs_quadratic();
  return scale > 0.0 ? 2.0 * scale : 1.0;
}

CopInstance add_not_equal_penalty(const CopInstance& instance,
                                  std::span<const VariablePair> pairs, double lambda) {
  if (!(lambda > 0.0))
    throw InvalidArgument("penalty multiplier must be positive");
  CopInstance out = instance;
  for (const auto& [i, j] : pairs) {
    if (i == j)
      throw InvalidArgument("not-equal constraint on identical variables " + pair_text(i, j));
    for (std::uint32_t v = 0; v < instance.num_values(); ++v)
      out.add_constraint(Constraint{i, j, v, v, lambda});
  }
  return out;
}

void GapData::validate() const {
  const std::size_t gates = num_gates();
  const std::size_t flights = num_flights();
  if (gates == 0)
    throw InvalidArgument("GAP data: no gates");
  if (walk_dep.size() != gates)
    throw InvalidArgument("GAP data: walk_dep has " + std::to_string(walk_dep.size()) +
                          " entries, expected " + std::to_string(gates));
  if (walk_trans.size() != gates)
    throw InvalidArgument("GAP data: walk_trans must be " + std::to_string(gates) + " x " +
                          std::to_string(gates));
  for (std::size_t v = 0; v < gates; ++v) {
    if (walk_trans[v].size() != gates)
      throw InvalidArgument("GAP data: walk_trans row " + std::to_string(v) + " has wrong length");
    if (walk_trans[v][v] != 0.0)
      throw InvalidArgument("GAP data: walk_trans diagonal entry " + std::to_string(v) +
                            " is nonzero");
    if (walk_arr[v] < 0.0 || walk_dep[v] < 0.0)
      throw InvalidArgument("GAP data: negative walking time for gate " + std::to_string(v));
    for (std::size_t w = 0; w < gates; ++w) {
      if (walk_trans[v][w] != walk_trans[w][v])
        throw InvalidArgument("GAP data: walk_trans not symmetric at " + pair_text(v, w));
      if (walk_trans[v][w] < 0.0)
        throw InvalidArgument("GAP data: negative transfer time at " + pair_text(v, w));
    }
  }
  if (passengers_dep.size() != flights)
    throw InvalidArgument("GAP data: passengers_dep has " + std::to_string(passengers_dep.size()) +
                          " entries, expected " + std::to_string(flights));
  for (std::size_t i = 0; i < flights; ++i)
    if (passengers_arr[i] < 0.0 || passengers_dep[i] < 0.0)
      throw InvalidArgument("GAP data: negative passenger count for flight " + std::to_string(i));
  for (const auto& [key, count] : transfers) {
    if (key.first >= flights || key.second >= flights || key.first == key.second)
      throw InvalidArgument("GAP data: invalid transfer pair " + pair_text(key.first, key.second));
    if (count < 0.0)
      throw InvalidArgument("GAP data: negative transfer count for " +
                            pair_text(key.first, key.second));
  }
  for (const auto& [i, j] : conflicts)
    if (i >= flights || j >= flights || i == j)
      throw InvalidArgument("GAP data: invalid conflict pair " + pair_text(i, j));
}

double GapData::total_passengers() const {
  double total = 0.0;
  for (std::size_t i = 0; i < num_flights(); ++i)
    total += passengers_arr[i] + passengers_dep[i];
  for (const auto& [_, count] : transfers)
    total += count;
  return total;
}

CopInstance gap_instance(const GapData& data, double lambda) {
  data.validate();
  const std::size_t n = data.num_flights();
  const std::size_t m = data.num_gates();
  CopInstance inst(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint32_t v = 0; v < m; ++v)
      inst.add_linear(i, v,
                      data.passengers_arr[i] * data.walk_arr[v] +
                          data.passengers_dep[i] * data.walk_dep[v]);
  for (const auto& [key, count] : data.transfers) {
    if (count == 0.0)
      continue;
    for (std::uint32_t v = 0; v < m; ++v)
      for (std::uint32_t w = 0; w < m; ++w)
        if (data.walk_trans[v][w] != 0.0)
          inst.add_quadratic(key.first, key.second, v, w, count * data.walk_trans[v][w]);
  }
  if (lambda <= 0.0)
    lambda = default_penalty(inst);
  inst = add_not_equal_penalty(inst, data.conflicts, lambda);
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < m; ++v)
    labels.push_back("gate " + std::to_string(v + 1));
  inst.set_value_labels(std::move(labels));
  inst.set_metadata("gap: " + std::to_string(n) + " flights, " + std::to_string(m) +
                    " gates, " + std::to_string(data.total_passengers()) + " passengers");
  return inst;
}

GapData builtin_gap_benchmark() {
  GapData data;
  data.walk_arr = {10, 10, 20, 20};
  data.walk_dep = {10, 10, 20, 20};
  data.walk_trans = {{0, 20, 20, 20}, {20, 0, 20, 20}, {20, 20, 0, 1}, {20, 20, 1, 0}};
  const double combined[] = {75, 74, 62, 88, 61};
  for (double c : combined) {
    data.passengers_arr.push_back(std::ceil(c / 2.0));
    data.passengers_dep.push_back(std::floor(c / 2.0));
  }
  data.transfers = {{{1, 4}, 13.0}, {{0, 2}, 29.0}};
  data.conflicts = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  return data;
}

CopInstance mkcs_instance(std::span<const VariablePair> edges, std::size_t num_vertices,
                          std::size_t k) {
  CopInstance inst(num_vertices, k);
  for (const auto& [i, j] : edges) {
    if (i == j)
      throw InvalidArgument("self-loop on vertex " + std::to_string(i));
    for (std::uint32_t v = 0; v < k; ++v)
      inst.add_quadratic(i, j, v, v, 1.0);
  }
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < k; ++v)
    labels.push_back("color " + std::to_string(v + 1));
  inst.set_value_labels(std::move(labels));
  inst.set_metadata("mkcs: " + std::to_string(num_vertices) + " vertices, " +
                    std::to_string(edges.size()) + " edges, " + std::to_string(k) + " colors");
  return inst;
}

CopInstance builtin_mkcs_benchmark() {
  std::vector<VariablePair> edges;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j)
      if (!(i == 3 && j == 4))
        edges.emplace_back(i, j);
  return mkcs_instance(edges, 5, 4);
}

CopInstance ip_instance(std::span<const double> q, const std::vector<std::vector<double>>& Q,
                        std::span<const long> domain, std::span<const Constraint> violations,
                        double lambda) {
  const std::size_t n = q.size();
  const std::size_t m = domain.size();
  if (m == 0)
    throw InvalidArgument("IP domain is empty");
  if (Q.size() != n)
    throw InvalidArgument("IP matrix has " + std::to_string(Q.size()) + " rows, expected " +
                          std::to_string(n));
  for (std::size_t v = 0; v < m; ++v)
    for (std::size_t w = v + 1; w < m; ++w)
      if (domain[v] == domain[w])
        throw InvalidArgument("IP domain value " + std::to_string(domain[v]) + " repeated");
  CopInstance inst(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (Q[i].size() != n)
      throw InvalidArgument("IP matrix row " + std::to_string(i) + " has wrong length");
    for (std::uint32_t v = 0; v < m; ++v) {
      const double y = static_cast<double>(domain[v]);
      inst.add_linear(i, v, q[i] * y + Q[i][i] * y * y);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double coupling = Q[i][j] + Q[j][i];
      if (coupling == 0.0)
        continue;
      for (std::uint32_t v = 0; v < m; ++v)
        for (std::uint32_t w = 0; w < m; ++w) {
          const double c = coupling * static_cast<double>(domain[v]) * static_cast<double>(domain[w]);
          if (c != 0.0)
            inst.add_quadratic(i, j, v, w, c);
        }
    }
  if (lambda <= 0.0)
    lambda = default_penalty(inst);
  for (Constraint c : violations) {
    if (c.unary())
      throw InvalidArgument("IP violations must be pairwise");
    c.lambda = lambda;
    inst.add_constraint(c);
  }
  std::vector<std::string> labels;
  for (long y : domain)
    labels.push_back(std::to_string(y));
  inst.set_value_labels(std::move(labels));
  inst.set_metadata("ip: " + std::to_string(n) + " variables, domain size " + std::to_string(m) +
                    ", " + std::to_string(violations.size()) + " forbidden value pairs");
  return inst;
}

CopInstance builtin_ip_benchmark(double lambda) {
  const std::vector<double> q = {-2, -3, -1, -2};
  std::vector<std::vector<double>> Q(4, std::vector<double>(4, 0.0));
  Q[0][1] = 1.0;
  Q[2][3] = -1.0;
  const std::vector<long> domain = {0, 1, 2, 3};
  auto violations = enumerate_violations(0, 2, domain, [](long a, long b) { return a + b <= 2; });
  auto second =
      enumerate_violations(1, 3, domain, [](long a, long b) { return 2 * a + b <= 4; });
  violations.insert(violations.end(), second.begin(), second.end());
  return ip_instance(q, Q, domain, violations, lambda);
}

CopInstance fix_variable(const CopInstance& instance, std::size_t i, std::uint32_t v) {
  const std::size_t n = instance.num_variables();
  const std::size_t m = instance.num_values();
  if (i >= n)
    throw InvalidArgument("fix_variable: variable " + std::to_string(i) + " out of range");
  if (v >= m)
    throw InvalidArgument("fix_variable: value " + std::to_string(v) + " out of range");
  auto remap = [i](std::size_t k) { return k < i ? k : k - 1; };

  CopInstance out(n - 1, m);
  out.add_constant(instance.objective_constant() + instance.objective_linear(i, v));
  for (std::size_t k = 0; k < n; ++k) {
    if (k == i)
      continue;
    for (std::uint32_t w = 0; w < m; ++w)
      out.add_linear(remap(k), w, instance.objective_linear(k, w));
  }
  for (const auto& [a, b] : instance.coupled_pairs()) {
    for (std::uint32_t x = 0; x < m; ++x)
      for (std::uint32_t y = 0; y < m; ++y) {
        const double c = instance.objective_quadratic(a, b, x, y);
        if (c == 0.0)
          continue;
        if (a == i) {
          if (x == v)
            out.add_linear(remap(b), y, c);
        } else if (b == i) {
          if (y == v)
            out.add_linear(remap(a), x, c);
        } else {
          out.add_quadratic(remap(a), remap(b), x, y, c);
        }
      }
  }
  if (instance.trivially_infeasible())
    out.mark_infeasible(instance.constant() - instance.objective_constant());
  for (const auto& c : instance.constraints()) {
    if (c.unary()) {
      if (c.i == i) {
        if (c.v == v)
          out.mark_infeasible(c.lambda);
      } else {
        out.add_constraint(Constraint{remap(c.i), Constraint::kUnary, c.v, 0, c.lambda});
      }
    } else if (c.i == i || c.j == i) {
      const bool first = c.i == i;
      if ((first ? c.v : c.w) == v)
        out.add_constraint(Constraint{remap(first ? c.j : c.i), Constraint::kUnary,
                                      first ? c.w : c.v, 0, c.lambda});
    } else {
      out.add_constraint(Constraint{remap(c.i), remap(c.j), c.v, c.w, c.lambda});
    }
  }
  out.set_value_labels(instance.value_labels());
  out.set_metadata(instance.metadata() + " | fixed x" + std::to_string(i) + "=" +
                   std::to_string(v));
  return out;
}

CopInstance remove_variable(const CopInstance& instance, std::size_t i) {
  const std::size_t n = instance.num_variables();
  const std::size_t m = instance.num_values();
  if (i >= n)
    throw InvalidArgument("remove_variable: variable " + std::to_string(i) + " out of range");
  auto remap = [i](std::size_t k) { return k < i ? k : k - 1; };
  CopInstance out(n - 1, m);
  out.add_constant(instance.objective_constant());
  for (std::size_t k = 0; k < n; ++k)
    if (k != i)
      for (std::uint32_t w = 0; w < m; ++w)
        out.add_linear(remap(k), w, instance.objective_linear(k, w));
  for (const auto& [a, b] : instance.coupled_pairs()) {
    if (a == i || b == i)
      continue;
    for (std::uint32_t x = 0; x < m; ++x)
      for (std::uint32_t y = 0; y < m; ++y) {
        const double c = instance.objective_quadratic(a, b, x, y);
        if (c != 0.0)
          out.add_quadratic(remap(a), remap(b), x, y, c);
      }
  }
  if (instance.trivially_infeasible())
    out.mark_infeasible(instance.constant() - instance.objective_constant());
  for (const auto& c : instance.constraints()) {
    if (c.i == i || (!c.unary() && c.j == i))
      continue;
    out.add_constraint(Constraint{remap(c.i), c.unary() ? Constraint::kUnary : remap(c.j), c.v,
                                  c.w, c.lambda});
  }
  out.set_value_labels(instance.value_labels());
  out.set_metadata(instance.metadata() + " | removed x" + std::to_string(i));
  return out;
}

CopInstance scale(const CopInstance& instance, double alpha) {
  const std::size_t n = instance.num_variables();
  const std::size_t m = instance.num_values();
  CopInstance out(n, m);
  out.add_constant(alpha * instance.objective_constant());
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint32_t v = 0; v < m; ++v)
      out.add_linear(i, v, alpha * instance.objective_linear(i, v));
  for (const auto& [a, b] : instance.coupled_pairs())
    for (std::uint32_t x = 0; x < m; ++x)
      for (std::uint32_t y = 0; y < m; ++y) {
        const double c = instance.objective_quadratic(a, b, x, y);
        if (c != 0.0)
          out.add_quadratic(a, b, x, y, alpha * c);
      }
  if (instance.trivially_infeasible())
    out.mark_infeasible(alpha * (instance.constant() - instance.objective_constant()));
  for (auto c : instance.constraints()) {
    c.lambda *= alpha;
    out.add_constraint(c);
  }
  out.set_value_labels(instance.value_labels());
  out.set_metadata(instance.metadata());
  return out;
}

} // namespace hubo
