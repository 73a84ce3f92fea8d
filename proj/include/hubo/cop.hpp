/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hubo {

/// Thrown when an argument violates a documented precondition. The message
/// names the offending index or value where one exists.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A value index per variable, each in [0, m).
using Assignment = std::vector<std::uint32_t>;

/// Pair of variable indices with first < second.
using VariablePair = std::pair<std::size_t, std::size_t>;

/// A hard constraint expressed as a forbidden combination of values. Unary
/// constraints forbid value `v` for variable `i` (`j` is unused). Each
/// constraint carries the Lagrange multiplier it contributes to the penalized
/// objective.
struct Constraint {
  static constexpr std::size_t kUnary = static_cast<std::size_t>(-1);

  std::size_t i = 0;
  std::size_t j = kUnary;
  std::uint32_t v = 0;
  std::uint32_t w = 0;
  double lambda = 0.0;

  bool unary() const { return j == kUnary; }
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// A combinatorial optimization problem in assignment form: n variables,
/// each taking one of m values, with linear and pairwise costs.
///
/// Costs are stored in two layers with identical shape. The *objective*
/// layer holds the raw problem costs; the *penalty* layer holds the
/// Lagrange-multiplier terms generated by constraints. `evaluate` sums both;
/// `objective` reports only the first. Feasibility is decided from the
/// constraint list, never from penalty magnitudes.
class CopInstance {
public:
  CopInstance() = default;
  CopInstance(std::size_t num_variables, std::size_t num_values);

  std::size_t num_variables() const { return n_; }
  std::size_t num_values() const { return m_; }

  /// Total coefficients (objective + penalty).
  double constant() const { return constant_ + penalty_constant_; }
  double linear(std::size_t i, std::uint32_t v) const;
  double quadratic(std::size_t i, std::size_t j, std::uint32_t v, std::uint32_t w) const;

  double objective_constant() const { return constant_; }
  double objective_linear(std::size_t i, std::uint32_t v) const;
  double objective_quadratic(std::size_t i, std::size_t j, std::uint32_t v,
                             std::uint32_t w) const;

  /// Variable pairs with a stored (possibly zero) coupling block, sorted.
  std::vector<VariablePair> coupled_pairs() const;

  void add_constant(double c) { constant_ += c; }
  void add_linear(std::size_t i, std::uint32_t v, double c);
  /// Accepts either orientation; (j, i, w, v) is folded onto (i, j, v, w).
  void add_quadratic(std::size_t i, std::size_t j, std::uint32_t v, std::uint32_t w,
                     double c);
  /// Records a forbidden value pair and adds `c.lambda` to the penalty layer.
  void add_constraint(Constraint c);
  /// Marks the instance as having no feasible assignment (a fixed variable
  /// violated a unary constraint). The penalty is carried as a constant.
  void mark_infeasible(double lambda);

  const std::vector<Constraint>& constraints() const { return constraints_; }
  bool trivially_infeasible() const { return infeasible_; }

  /// Penalized objective: constant + linear + pairwise terms.
  double evaluate(std::span<const std::uint32_t> s) const;
  /// Penalty-free objective.
  double objective(std::span<const std::uint32_t> s) const;
  bool feasible(std::span<const std::uint32_t> s) const;

  /// Largest |linear| and |quadratic| coefficient over the total layers.
  double max_abs_linear() const;
  double max_abs_quadratic() const;

  const std::vector<std::string>& value_labels() const { return labels_; }
  void set_value_labels(std::vector<std::string> labels);
  const std::string& metadata() const { return metadata_; }
  void set_metadata(std::string text) { metadata_ = std::move(text); }

  /// Throws InvalidArgument naming the first bad entry.
  void check_assignment(std::span<const std::uint32_t> s) const;

private:
  struct Layer {
    std::vector<double> linear;                         // n*m, row-major (i, v)
    std::map<VariablePair, std::vector<double>> blocks; // m*m, row-major (v, w)
  };

  void check_variable(std::size_t i) const;
  void check_value(std::uint32_t v) const;
  static double layer_value(const Layer& layer, std::size_t m, std::size_t i, std::size_t j,
                            std::uint32_t v, std::uint32_t w);
  void add_to_layer(Layer& layer, std::size_t i, std::size_t j, std::uint32_t v,
                    std::uint32_t w, double c);
  double evaluate_layer(const Layer& layer, std::span<const std::uint32_t> s) const;

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  double constant_ = 0.0;
  double penalty_constant_ = 0.0;
  bool infeasible_ = false;
  Layer objective_;
  Layer penalty_;
  std::vector<Constraint> constraints_;
  std::vector<std::string> labels_;
  std::string metadata_;
};

/// Airport gate-assignment data. Flights are variables, gates are values.
struct GapData {
  std::vector<double> walk_arr;                // per gate, check-in -> gate
  std::vector<double> walk_dep;                // per gate, gate -> luggage claim
  std::vector<std::vector<double>> walk_trans; // gate x gate, symmetric, zero diagonal
  std::vector<double> passengers_arr;          // per flight
  std::vector<double> passengers_dep;          // per flight
  std::map<VariablePair, double> transfers;    // unordered flight pair -> passengers
  std::vector<VariablePair> conflicts;         // temporally overlapping flights

  std::size_t num_flights() const { return passengers_arr.size(); }
  std::size_t num_gates() const { return walk_arr.size(); }
  /// Throws InvalidArgument on shape, symmetry, sign or index violations.
  void validate() const;
  /// Arriving + departing + transfer passengers, the divisor behind the
  /// minutes-per-passenger figure.
  double total_passengers() const;
};

/// Default Lagrange multiplier: 2 * (max|c1| + max|c2|), or 1 for an
/// all-zero instance.
double default_penalty(const CopInstance& instance);

/// Adds lambda to every (i, j, v, v) for the given pairs.
CopInstance add_not_equal_penalty(const CopInstance& instance,
                                  std::span<const VariablePair> pairs, double lambda);

/// Builds the gate-assignment COP. lambda <= 0 selects default_penalty of
/// the unpenalized instance.
CopInstance gap_instance(const GapData& data, double lambda);

/// The five-flight, four-gate benchmark with its walking-time and passenger
/// tables. Combined passenger counts are split between arrival and departure
/// (ceil/floor); since both walking-time vectors agree the cost is split
/// invariant.
GapData builtin_gap_benchmark();

/// Maximum k-colorable subgraph: one unit of cost per monochromatic edge.
CopInstance mkcs_instance(std::span<const VariablePair> edges, std::size_t num_vertices,
                          std::size_t k);

/// K5 minus the edge (3, 4), four colors.
CopInstance builtin_mkcs_benchmark();

/// Integer program over a shared value domain. `violations` lists forbidden
/// (i, j, v, w) value-index tuples; each becomes a constraint of weight
/// lambda (lambda <= 0 selects default_penalty of the unpenalized instance).
CopInstance ip_instance(std::span<const double> q, const std::vector<std::vector<double>>& Q,
                        std::span<const long> domain, std::span<const Constraint> violations,
                        double lambda);

/// Enumerates the value pairs of (i, j) rejected by `allowed(y_v, y_w)`.
template <class Predicate>
std::vector<Constraint> enumerate_violations(std::size_t i, std::size_t j,
                                             std::span<const long> domain,
                                             Predicate allowed) {
  std::vector<Constraint> out;
  for (std::uint32_t v = 0; v < domain.size(); ++v)
    for (std::uint32_t w = 0; w < domain.size(); ++w)
      if (!allowed(domain[v], domain[w]))
        out.push_back(Constraint{i, j, v, w, 0.0});
  return out;
}

/// Four variables over {0,1,2,3}: dense couplings on (0,1) and (2,3) and two
/// linear pairwise constraints, x0 + x2 <= 2 and 2*x1 + x3 <= 4.
CopInstance builtin_ip_benchmark(double lambda = 0.0);

/// Eliminates variable i by fixing it to value v. Its costs fold into the
/// constant and into the linear costs of its neighbours; pair constraints
/// touching it become unary constraints. Remaining variables keep their
/// order.
CopInstance fix_variable(const CopInstance& instance, std::size_t i, std::uint32_t v);

/// Deletes variable i together with every term and constraint touching it.
CopInstance remove_variable(const CopInstance& instance, std::size_t i);

/// Scales every coefficient (and multiplier) by alpha.
CopInstance scale(const CopInstance& instance, double alpha);

} // namespace hubo
