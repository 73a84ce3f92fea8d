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
#include <mutex>

namespace hubo {

struct QaoaParams {
  std::vector<double> gammas;
  std::vector<double> betas;

  std::size_t layers() const { return gammas.size(); }
  friend bool operator==(const QaoaParams&, const QaoaParams&) = default;
};

enum class GradientMethod { adjoint, finite_difference };

const char* to_string(GradientMethod m);
GradientMethod parse_gradient_method(const std::string& text);

/// Search direction of each descent iteration: the negative gradient with
/// Barzilai-Borwein step lengths, or the negative gradient preconditioned by
/// a limited-memory BFGS estimate of the inverse Hessian. Both use the same
/// Armijo backtracking.
enum class Descent { steepest, lbfgs };

const char* to_string(Descent d);
Descent parse_descent(const std::string& text);

struct OptimizerConfig {
  std::size_t grid = 16;             // p = 1 start grid is grid x grid
  std::size_t max_iterations = 500;  // per layer stage
  double gradient_tolerance = 1e-5;  // on the normalized landscape
  /// Stop a stage once an iteration lowers the normalized energy by less
  /// than this (0 disables).
  double value_tolerance = 1e-7;
  GradientMethod gradient = GradientMethod::adjoint;
  Descent descent = Descent::lbfgs;
  std::size_t memory = 6; // L-BFGS correction pairs
  double fd_step = 1e-4;
  /// Uniform start offsets: within +-jitter of a grid cell around the best
  /// grid point, and +-perturbation on interpolated parameters.
  double jitter = 0.5;
  double perturbation = 0.05;
  double armijo = 1e-4;
};

/// Energy landscape of a diagonal Hamiltonian under the X-mixer ansatz.
///
/// The optimizer works on H / scale, where scale is the largest non-identity
/// |coefficient| (1 for a constant Hamiltonian), so angle ranges do not
/// depend on penalty magnitudes. Parameters are in those normalized units;
/// `physical` converts them for circuit construction. Energies are reported
/// in the units of H.
class QaoaLandscape {
public:
  explicit QaoaLandscape(const PauliPolynomial& poly, bool normalize = true,
                         std::size_t cap = kStateQubitCap);

  std::size_t num_qubits() const { return num_qubits_; }
  double scale() const { return scale_; }
  /// Diagonal of H (unnormalized).
  const std::vector<double>& diagonal() const { return diagonal_; }
  QaoaParams physical(const QaoaParams& params) const;

  /// Final state, applying exp(-i gamma H/scale) as diagonal phases.
  StateVector evolve(const QaoaParams& params) const;
  double energy(const QaoaParams& params) const;
  double normalized_energy(const QaoaParams& params) const;
  /// Normalized energy; fills the gradient over (gammas, betas),
  /// concatenated, in normalized units.
  double adjoint_gradient(const QaoaParams& params, std::vector<double>& gradient) const;
  double finite_difference_gradient(const QaoaParams& params, double step,
                                    std::vector<double>& gradient) const;

  /// Normalized energies on the p = 1 grid of cell centres, row-major over
  /// gamma in [0, pi) then beta in [0, pi/2). Computed once and cached.
  const std::vector<double>& start_grid(std::size_t size) const;

private:
  /// Calls fn(b, re, im) with exp(-i gamma work_[b]) for every basis state.
  template <class Fn>
  void for_each_phase(double gamma, Fn&& fn) const;
  void apply_phase(std::vector<Amplitude>& amps, double gamma) const;
  double normalized_expectation(const std::vector<Amplitude>& amps) const;

  std::size_t num_qubits_ = 0;
  double scale_ = 1.0;
  std::vector<double> diagonal_;
  std::vector<double> work_;           // diagonal / scale
  std::vector<double> levels_;         // distinct values of work_
  std::vector<std::uint32_t> level_of_; // empty when there are too many levels

  mutable std::mutex grid_mutex_;
  mutable std::size_t grid_size_ = 0;
  mutable std::vector<double> grid_;
};

/// One stage of the layerwise build-up.
struct LayerResult {
  QaoaParams params;     // normalized units
  double energy = 0.0;   // units of H
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  /// Best-so-far normalized energy after each iteration (non-increasing).
  std::vector<double> history;
};

struct RunResult {
  std::vector<LayerResult> layers; // entry k holds the (k+1)-layer optimum
  std::uint64_t seed = 0;
  double hamiltonian_scale = 1.0;
};

/// Called after each completed stage; returning false ends the build-up.
using LayerCallback = std::function<bool(const LayerResult&, const StateVector&)>;

/// Layerwise optimization up to p layers: a grid search seeds p = 1 and each
/// (k+1)-layer start is the lower of the interpolated k-layer optimum and
/// that optimum with a near-identity layer appended; every stage is refined
/// by descent (see Descent) with Armijo backtracking.
RunResult optimize(const QaoaLandscape& landscape, std::size_t p, const OptimizerConfig& config,
                   std::uint64_t seed, const LayerCallback& on_layer = {});

/// Interpolated (k+1)-layer start from a k-layer optimum (zero boundaries).
QaoaParams interpolate_layers(const QaoaParams& params);

} // namespace hubo
