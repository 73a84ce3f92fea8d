/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include "hubo/compile.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace hubo {

using Amplitude = std::complex<double>;

/// Default cap on simulated width.
inline constexpr std::size_t kStateQubitCap = 24;

/// Dense 2^q amplitudes; bit k of the basis index is qubit k.
class StateVector {
public:
  StateVector() = default;
  /// |0...0>. Throws when q exceeds `cap`.
  explicit StateVector(std::size_t num_qubits, std::size_t cap = kStateQubitCap);

  static StateVector basis(std::size_t num_qubits, std::uint64_t index);
  /// |+>^q.
  static StateVector uniform(std::size_t num_qubits);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amps_.size(); }
  std::vector<Amplitude>& amplitudes() { return amps_; }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  Amplitude operator[](std::uint64_t b) const { return amps_[b]; }

  double norm() const;
  std::vector<double> probabilities() const;

private:
  std::size_t num_qubits_ = 0;
  std::vector<Amplitude> amps_;
};

void apply_gate(StateVector& state, const Gate& gate);

/// Applies the gates in order, then the circuit's global phase.
StateVector run_circuit(const Circuit& circuit, StateVector initial);

/// RX(theta) on every qubit, cache blocked.
void apply_rx_all(std::vector<Amplitude>& amps, std::size_t num_qubits, double theta);

/// sum_b |amp_b|^2 E_b. Above 20 qubits the diagonal is produced in slices
/// instead of being stored.
double expectation(const PauliPolynomial& poly, const StateVector& state,
                   std::size_t cap = kStateQubitCap);

/// Independent draws from |amp_b|^2 by inverse CDF.
std::vector<std::uint64_t> sample(const StateVector& state, std::size_t count,
                                  std::uint64_t seed);
std::vector<std::uint64_t> sample(const std::vector<double>& probabilities, std::size_t count,
                                  std::uint64_t seed);

} // namespace hubo
