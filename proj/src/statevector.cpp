/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "hubo/statevector.hpp"
#include "hubo/rng.hpp"
#include "pair_sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hubo {

StateVector::StateVector(std::size_t num_qubits, std::size_t cap) : num_qubits_(num_qubits) {
  if (num_qubits > cap)
    throw InvalidArgument("state of " + std::to_string(num_qubits) + " qubits exceeds cap of " +
                          std::to_string(cap));
  amps_.assign(std::size_t{1} << num_qubits, Amplitude{});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(std::size_t num_qubits, std::uint64_t index) {
  StateVector s(num_qubits);
  if (index >= s.size())
    throw InvalidArgument("basis index " + std::to_string(index) + " out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::uniform(std::size_t num_qubits) {
  StateVector s(num_qubits);
  const double a = 1.0 / std::sqrt(static_cast<double>(s.size()));
  std::fill(s.amps_.begin(), s.amps_.end(), Amplitude{a, 0.0});
  return s;
}

double StateVector::norm() const {
  double total = 0.0;
  for (const Amplitude& a : amps_)
    total += std::norm(a);
  return std::sqrt(total);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t b = 0; b < p.size(); ++b)
    p[b] = std::norm(amps_[b]);
  return p;
}

namespace {

// RX butterfly over `len` contiguous amplitude pairs (a[k], b[k]).
inline void rx_butterfly(double* __restrict a, double* __restrict b, std::size_t len, double c,
                         double s) {
  for (std::size_t k = 0; k < 2 * len; k += 2) {
    const double ar = a[k], ai = a[k + 1], br = b[k], bi = b[k + 1];
    a[k] = c * ar + s * bi;
    a[k + 1] = c * ai - s * br;
    b[k] = c * br + s * ai;
    b[k + 1] = c * bi - s * ar;
  }
}

struct RxSweep {
  double* data;
  double c, s;

  // Adjacent pairs: four doubles (ar, ai, br, bi) per pair.
  void first_qubit(std::size_t base, std::size_t pairs) const {
    double* __restrict p = data + 2 * base;
    for (std::size_t k = 0; k < 4 * pairs; k += 4) {
      const double ar = p[k], ai = p[k + 1], br = p[k + 2], bi = p[k + 3];
      p[k] = c * ar + s * bi;
      p[k + 1] = c * ai - s * br;
      p[k + 2] = c * br + s * ai;
      p[k + 3] = c * bi - s * ar;
    }
  }
  void operator()(std::size_t i, std::size_t j, std::size_t len) const {
    rx_butterfly(data + 2 * i, data + 2 * j, len, c, s);
  }
};

} // namespace

void apply_rx_all(std::vector<Amplitude>& amps, std::size_t q, double theta) {
  if (amps.size() != (std::size_t{1} << q))
    throw InvalidArgument("amplitude count does not match " + std::to_string(q) + " qubits");
  detail::sweep_pairs(q, RxSweep{reinterpret_cast<double*>(amps.data()), std::cos(theta / 2.0),
                                 std::sin(theta / 2.0)});
}

void apply_gate(StateVector& state, const Gate& gate) {
  const std::size_t q = state.num_qubits();
  if (gate.target >= q || (gate.kind == GateKind::CNOT && gate.control >= q))
    throw InvalidArgument("gate acts outside the " + std::to_string(q) + "-qubit state");
  auto& amps = state.amplitudes();
  const std::size_t t = std::size_t{1} << gate.target;
  switch (gate.kind) {
  case GateKind::H: {
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t b = 0; b < amps.size(); ++b)
      if (!(b & t)) {
        const Amplitude a0 = amps[b], a1 = amps[b | t];
        amps[b] = r * (a0 + a1);
        amps[b | t] = r * (a0 - a1);
      }
    break;
  }
  case GateKind::RX: {
    const double c = std::cos(gate.angle / 2.0), s = std::sin(gate.angle / 2.0);
    double* data = reinterpret_cast<double*>(amps.data());
    for (std::size_t b = 0; b < amps.size(); ++b)
      if (!(b & t))
        rx_butterfly(data + 2 * b, data + 2 * (b | t), 1, c, s);
    break;
  }
  case GateKind::RZ: {
    const Amplitude lo = std::polar(1.0, -gate.angle / 2.0);
    const Amplitude hi = std::polar(1.0, gate.angle / 2.0);
    for (std::size_t b = 0; b < amps.size(); ++b)
      amps[b] *= (b & t) ? hi : lo;
    break;
  }
  case GateKind::CNOT: {
    const std::size_t c = std::size_t{1} << gate.control;
    for (std::size_t b = 0; b < amps.size(); ++b)
      if ((b & c) && !(b & t))
        std::swap(amps[b], amps[b | t]);
    break;
  }
  }
}

StateVector run_circuit(const Circuit& circuit, StateVector initial) {
  if (circuit.num_qubits() != initial.num_qubits())
    throw InvalidArgument("circuit width " + std::to_string(circuit.num_qubits()) +
                          " differs from state width " + std::to_string(initial.num_qubits()));
  for (const Gate& g : circuit.gates())
    apply_gate(initial, g);
  if (circuit.global_phase() != 0.0) {
    const Amplitude phase = std::polar(1.0, circuit.global_phase());
    for (Amplitude& a : initial.amplitudes())
      a *= phase;
  }
  return initial;
}

double expectation(const PauliPolynomial& poly, const StateVector& state, std::size_t cap) {
  const std::size_t q = state.num_qubits();
  if (poly.num_qubits() != q)
    throw InvalidArgument("polynomial width " + std::to_string(poly.num_qubits()) +
                          " differs from state width " + std::to_string(q));
  if (q > cap)
    throw InvalidArgument("expectation over " + std::to_string(q) + " qubits exceeds cap of " +
                          std::to_string(cap));
  const auto& amps = state.amplitudes();
  constexpr std::size_t kSlice = 20;
  if (q <= kSlice) {
    const auto diag = diagonal_of(poly, q);
    double total = 0.0;
    for (std::size_t b = 0; b < amps.size(); ++b)
      total += std::norm(amps[b]) * diag[b];
    return total;
  }
  // Fix the high qubits per slice; each term collapses to a signed term on
  // the low qubits.
  const std::size_t width = std::size_t{1} << kSlice;
  std::vector<double> slice(width);
  double total = 0.0;
  for (std::uint64_t high = 0; high < (std::uint64_t{1} << (q - kSlice)); ++high) {
    std::fill(slice.begin(), slice.end(), 0.0);
    for (const auto& [term, c] : poly.terms()) {
      std::uint64_t mask = 0;
      int parity = 0;
      for (std::uint32_t qubit : term) {
        if (qubit < kSlice)
          mask |= std::uint64_t{1} << qubit;
        else
          parity ^= static_cast<int>((high >> (qubit - kSlice)) & 1u);
      }
      slice[mask] += parity ? -c : c;
    }
    walsh_hadamard_inplace(slice);
    const std::size_t offset = high << kSlice;
    for (std::size_t b = 0; b < width; ++b)
      total += std::norm(amps[offset + b]) * slice[b];
  }
  return total;
}

std::vector<std::uint64_t> sample(const std::vector<double>& probabilities, std::size_t count,
                                  std::uint64_t seed) {
  if (count == 0)
    throw InvalidArgument("sample count must be positive");
  std::vector<double> cdf(probabilities.size());
  std::partial_sum(probabilities.begin(), probabilities.end(), cdf.begin());
  const double total = cdf.empty() ? 0.0 : cdf.back();
  if (!(total > 0.0))
    throw InvalidArgument("cannot sample from a zero distribution");
  SplitMix64 rng(seed);
  std::vector<std::uint64_t> out(count);
  for (auto& draw : out) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // Guard against u landing on the rounded-up final edge.
    if (it == cdf.end())
      --it;
    while (it != cdf.begin() && probabilities[it - cdf.begin()] == 0.0)
      --it;
    draw = static_cast<std::uint64_t>(it - cdf.begin());
  }
  return out;
}

std::vector<std::uint64_t> sample(const StateVector& state, std::size_t count,
                                  std::uint64_t seed) {
  return sample(state.probabilities(), count, seed);
}

} // namespace hubo
