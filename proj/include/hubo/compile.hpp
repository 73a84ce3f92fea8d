/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include "hubo/encode.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace hubo {

enum class GateKind { H, RX, RZ, CNOT };

const char* to_string(GateKind kind);

/// RZ(theta) = diag(exp(-i theta/2), exp(i theta/2)); RX(theta) =
/// exp(-i theta X / 2).
struct Gate {
  GateKind kind = GateKind::H;
  std::uint32_t target = 0;
  std::uint32_t control = 0; // CNOT only
  double angle = 0.0;        // RX/RZ only

  static Gate h(std::uint32_t q) { return {GateKind::H, q, 0, 0.0}; }
  static Gate rx(std::uint32_t q, double theta) { return {GateKind::RX, q, 0, theta}; }
  static Gate rz(std::uint32_t q, double theta) { return {GateKind::RZ, q, 0, theta}; }
  static Gate cnot(std::uint32_t c, std::uint32_t t) { return {GateKind::CNOT, t, c, 0.0}; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

class Circuit {
public:
  Circuit() = default;
  explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  /// Phase exp(i * global_phase) dropped from the gate list (identity terms).
  double global_phase() const { return global_phase_; }

  /// Throws InvalidArgument for out-of-range qubits or control == target.
  void append(const Gate& gate);
  void append(const Circuit& other);
  void add_global_phase(double phi) { global_phase_ += phi; }

private:
  std::size_t num_qubits_ = 0;
  std::vector<Gate> gates_;
  double global_phase_ = 0.0;
};

struct ResourceReport {
  std::size_t num_qubits = 0;
  std::size_t layers = 0;
  std::size_t cnot_per_layer = 0;
  std::size_t rz_per_layer = 0;
  std::size_t rx_per_layer = 0;
  std::size_t hadamard_init = 0;

  std::size_t cnot_total() const { return layers * cnot_per_layer; }
  std::size_t rz_total() const { return layers * rz_per_layer; }
  std::size_t rx_total() const { return layers * rx_per_layer; }
  std::size_t single_qubit_total() const { return hadamard_init + rz_total() + rx_total(); }
  std::size_t total_gates() const { return cnot_total() + single_qubit_total(); }

  friend bool operator==(const ResourceReport&, const ResourceReport&) = default;
};

/// chain: one parity chain per term. gray: register-pair phase lattices.
/// best: per register group, whichever of the two uses fewer CNOTs.
enum class Strategy { chain, gray, best };

const char* to_string(Strategy s);
Strategy parse_strategy(const std::string& text);

/// Parity chain for Z_T: CNOTs into the last qubit of T, RZ(2 gamma J), then
/// the mirrored chain. An empty T emits nothing and adds -gamma*J to
/// `global_phase` when given.
std::vector<Gate> compile_term_chain(const QubitSet& term, double coefficient, double gamma,
                                     double* global_phase = nullptr);

/// Reflected binary Gray order of the nonempty subsets of d elements, as bit
/// masks. Starts at {0}; consecutive masks differ in one bit.
std::vector<std::uint32_t> gray_sequence(std::size_t d);

/// Phase lattice over `qubits` (sorted, size d). `coefficients` maps subset
/// masks (bit k = qubits[k]) to J. Walks the Gray sequence with the parity of
/// the current subset held on its highest qubit and emits RZ at present
/// subsets. With every subset present this costs 2^d - 2 CNOT and 2^d - 1 RZ.
/// Sparse sets are thinned: adjacent identical CNOTs cancel, and between two
/// consecutive emitted subsets with the same accumulator the walk is replaced
/// by direct CNOTs from their symmetric difference when that has at most two
/// elements and is shorter.
std::vector<Gate> compile_dense_lattice(const QubitSet& qubits,
                                        const std::map<std::uint32_t, double>& coefficients,
                                        double gamma, double* global_phase = nullptr);

/// CNOT count of compiling every nonempty subset of d qubits by chains,
/// 2^d (d - 2) + 2.
std::size_t dense_chain_cnot_count(std::size_t d);

/// exp(-i gamma H) up to global phase.
///
/// `registers` partitions the qubits for the gray and best strategies. Terms
/// touching two registers go to the lattice of that pair; terms inside one
/// register go to the lowest pair containing it, or to a lattice of their
/// own; terms touching more than two registers fall back to chains. Qubits
/// absent from `registers` act as singleton registers.
Circuit compile_cost_layer(const PauliPolynomial& poly, double gamma, Strategy strategy,
                           const std::vector<QubitSet>& registers = {});

/// H on every qubit, then per layer the cost layer and RX(2 beta) on every
/// qubit.
Circuit qaoa_circuit(const PauliPolynomial& poly, const std::vector<double>& gammas,
                     const std::vector<double>& betas, Strategy strategy = Strategy::chain,
                     const std::vector<QubitSet>& registers = {});

/// Dense worst-case counts per layer (layers = 1, m >= 2).
ResourceReport scaling_formulas(std::size_t n, std::size_t m, Encoding encoding);

/// Exact tallies. H gates are reported as initialization; the rest is spread
/// over `layers` (which must divide every count).
ResourceReport count_resources(const Circuit& circuit, std::size_t layers = 1);

/// Per-layer report for a compiled cost layer plus mixer, without building
/// all p layers.
ResourceReport layer_resources(const PauliPolynomial& poly, Strategy strategy,
                               const std::vector<QubitSet>& registers, std::size_t layers);

/// `H q`, `RX q theta`, `RZ q theta`, `CNOT c t`, one per line.
void write_circuit(std::ostream& out, const Circuit& circuit);
Circuit read_circuit(std::istream& in, std::size_t num_qubits);

std::string resource_json(const ResourceReport& report);

} // namespace hubo
